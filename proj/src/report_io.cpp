#include "callcast/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "callcast/csv.hpp"
#include "callcast/errors.hpp"

namespace callcast {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Panel {
    std::string title;
    // label -> (x, y) points
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> lines;
};

// Minimal multi-panel line chart, dependency free and byte-stable.
void write_line_chart(const fs::path& path, const std::vector<Panel>& panels) {
    const double pw = 360, ph = 260, margin = 44;
    const double width = pw * panels.size(), height = ph + 30;
    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const Panel& panel = panels[pi];
        const double x0 = pw * pi + margin, y0 = 20, x1 = pw * (pi + 1) - 12, y1 = ph - margin + 20;
        double xmin = std::numeric_limits<double>::max(), xmax = -xmin, ymin = xmin, ymax = -xmin;
        for (const auto& [label, pts] : panel.lines)
            for (const auto& [x, y] : pts) {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        if (!(xmax > xmin)) xmax = xmin + 1;
        if (!(ymax > ymin)) ymax = ymin + 1;
        ymin = std::min(ymin, 0.0);
        auto sx = [&](double x) { return x0 + (x - xmin) / (xmax - xmin) * (x1 - x0); };
        auto sy = [&](double y) { return y1 - (y - ymin) / (ymax - ymin) * (y1 - y0); };
        out << "<text x=\"" << fmt2((x0 + x1) / 2) << "\" y=\"14\" text-anchor=\"middle\">"
            << panel.title << "</text>\n";
        out << "<line x1=\"" << fmt2(x0) << "\" y1=\"" << fmt2(y1) << "\" x2=\"" << fmt2(x1)
            << "\" y2=\"" << fmt2(y1) << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << fmt2(x0) << "\" y1=\"" << fmt2(y0) << "\" x2=\"" << fmt2(x0)
            << "\" y2=\"" << fmt2(y1) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt2(x0 - 4) << "\" y=\"" << fmt2(sy(ymax)) << "\" text-anchor=\"end\">"
            << fmt2(ymax) << "</text>\n";
        out << "<text x=\"" << fmt2(x0 - 4) << "\" y=\"" << fmt2(sy(ymin)) << "\" text-anchor=\"end\">"
            << fmt2(ymin) << "</text>\n";
        out << "<text x=\"" << fmt2(sx(xmax)) << "\" y=\"" << fmt2(y1 + 14)
            << "\" text-anchor=\"end\">" << fmt2(xmax) << "</text>\n";
        std::size_t ci = 0;
        for (const auto& [label, pts] : panel.lines) {
            const std::string color = kPalette[ci % kPalette.size()];
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : pts) out << fmt2(sx(x)) << ',' << fmt2(sy(y)) << ' ';
            out << "\"/>\n";
            out << "<text x=\"" << fmt2(x0 + 8) << "\" y=\"" << fmt2(y0 + 14.0 * ci + 10)
                << "\" fill=\"" << color << "\">" << label << "</text>\n";
            ++ci;
        }
    }
    out << "</svg>\n";
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_fan_chart(const fs::path& path, const std::string& model,
                     const std::vector<std::array<double, 99>>& quantiles,
                     const std::vector<std::pair<double, double>>& interval95) {
    const double width = 560, height = 320, x0 = 50, y0 = 24, x1 = width - 16, y1 = height - 36;
    const std::size_t H = quantiles.size();
    double ymax = 1.0;
    for (const auto& iv : interval95) ymax = std::max(ymax, iv.second);
    auto sx = [&](double h) { return x0 + (h - 1) / std::max<double>(1.0, static_cast<double>(H) - 1) * (x1 - x0); };
    auto sy = [&](double y) { return y1 - y / ymax * (y1 - y0); };

    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<text x=\"" << fmt2(width / 2) << "\" y=\"14\" text-anchor=\"middle\">" << model
        << " forecast fan</text>\n";

    auto band = [&](auto lo, auto hi, const std::string& fill) {
        out << "<polygon fill=\"" << fill << "\" stroke=\"none\" points=\"";
        for (std::size_t h = 1; h <= H; ++h) out << fmt2(sx(static_cast<double>(h))) << ',' << fmt2(sy(lo(h))) << ' ';
        for (std::size_t h = H; h >= 1; --h) out << fmt2(sx(static_cast<double>(h))) << ',' << fmt2(sy(hi(h))) << ' ';
        out << "\"/>\n";
    };
    band([&](std::size_t h) { return std::max(0.0, interval95[h - 1].first); },
         [&](std::size_t h) { return interval95[h - 1].second; }, "#c6dbef");
    band([&](std::size_t h) { return quantiles[h - 1][9]; },
         [&](std::size_t h) { return quantiles[h - 1][89]; }, "#6baed6");
    out << "<polyline fill=\"none\" stroke=\"#08306b\" stroke-width=\"2\" points=\"";
    for (std::size_t h = 1; h <= H; ++h)
        out << fmt2(sx(static_cast<double>(h))) << ',' << fmt2(sy(quantiles[h - 1][49])) << ' ';
    out << "\"/>\n";
    out << "<line x1=\"" << fmt2(x0) << "\" y1=\"" << fmt2(y1) << "\" x2=\"" << fmt2(x1)
        << "\" y2=\"" << fmt2(y1) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt2(x0) << "\" y1=\"" << fmt2(y0) << "\" x2=\"" << fmt2(x0)
        << "\" y2=\"" << fmt2(y1) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt2(x0 - 4) << "\" y=\"" << fmt2(sy(ymax))
        << "\" text-anchor=\"end\">" << fmt2(ymax) << "</text>\n";
    out << "<text x=\"" << fmt2(x1) << "\" y=\"" << fmt2(y1 + 14) << "\" text-anchor=\"end\">h="
        << H << "</text>\n";
    out << "</svg>\n";
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

void emit_report(const BacktestReport& report, const std::string& outdir) {
    if (report.records.empty()) throw DataError("emit_report: report has no score records");
    const fs::path dir(outdir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + outdir + "'");

    {
        std::ofstream out = open_out(dir / "overall.csv");
        out << "model";
        for (const auto& m : kMetricNames) out << ',' << m;
        out << '\n';
        for (const std::string& model : report.models) {
            out << model;
            for (const auto& metric : kMetricNames)
                out << ',' << format_double(report.overall.at(model).at(metric));
            out << '\n';
        }
    }
    {
        std::ofstream out = open_out(dir / "per_horizon.csv");
        out << "model,metric,h,score,count\n";
        for (const std::string& model : report.models)
            for (const auto& metric : kMetricNames)
                for (int h = 1; h <= report.H; ++h) {
                    const HorizonScore& s =
                        report.per_horizon.at(model).at(metric)[static_cast<std::size_t>(h - 1)];
                    out << model << ',' << metric << ',' << h << ',' << format_double(s.value) << ','
                        << s.count << '\n';
                }
    }
    if (!report.failures.empty()) {
        std::ofstream out = open_out(dir / "failures.csv");
        out << "failure\n";
        for (const auto& f : report.failures) out << f << '\n';
    }

    auto metric_lines = [&](const std::string& metric) {
        Panel panel;
        panel.title = metric + " by horizon";
        for (const std::string& model : report.models) {
            std::vector<std::pair<double, double>> pts;
            for (int h = 1; h <= report.H; ++h) {
                const HorizonScore& s =
                    report.per_horizon.at(model).at(metric)[static_cast<std::size_t>(h - 1)];
                if (s.count > 0) pts.emplace_back(h, s.value);
            }
            panel.lines.emplace_back(model, std::move(pts));
        }
        return panel;
    };
    write_line_chart(dir / "point_metrics.svg",
                     {metric_lines("ME"), metric_lines("RMSE"), metric_lines("MAE")});
    write_line_chart(dir / "winkler.svg", {metric_lines("Winkler")});
    write_line_chart(dir / "percentile.svg", {metric_lines("Percentile")});
    write_line_chart(dir / "crps.svg", {metric_lines("CRPS")});

    // fan chart for the first model (plan order) with a final-origin forecast
    for (const std::string& model : report.models) {
        auto it = report.latest_quantiles.find(model);
        if (it == report.latest_quantiles.end() || it->second.empty()) continue;
        write_fan_chart(dir / "forecast_fan.svg", model, it->second,
                        report.latest_interval95.at(model));
        break;
    }
}

void write_diagnostic_csv(const std::string& path, const std::vector<int>& lags,
                          const std::vector<double>& values, std::size_t n) {
    if (lags.size() != values.size()) throw DataError("diagnostic csv: lag/value size mismatch");
    std::ofstream out = open_out(path);
    const double band = 2.0 / std::sqrt(static_cast<double>(n));
    out << "lag,value,band_lo,band_hi\n";
    for (std::size_t i = 0; i < lags.size(); ++i)
        out << lags[i] << ',' << format_double(values[i]) << ',' << format_double(-band) << ','
            << format_double(band) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_stepwise_trace_csv(const std::string& path, const StepwiseResult& result) {
    std::ofstream out = open_out(path);
    out << "round,term,validation_rmse\n";
    for (std::size_t i = 0; i < result.trace.size(); ++i)
        out << (i + 1) << ',' << result.trace[i].term << ','
            << format_double(result.trace[i].rmse) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace callcast
