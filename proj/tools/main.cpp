// Command-line front end: diagnose -> select -> fit -> forecast -> backtest.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "callcast/backtest.hpp"
#include "callcast/config.hpp"
#include "callcast/csv.hpp"
#include "callcast/errors.hpp"
#include "callcast/exante.hpp"
#include "callcast/features.hpp"
#include "callcast/model_io.hpp"
#include "callcast/report_io.hpp"

namespace fs = std::filesystem;
using namespace callcast;

namespace {

void make_outdir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

Dataset load_data(const RunConfig& cfg) {
    if (cfg.data_path.empty()) throw DataError("no data file given (use --data or the config key)");
    return parse_csv(cfg.data_path);
}

void run_diagnose(const RunConfig& cfg) {
    const Dataset ds = load_data(cfg);
    make_outdir(cfg.output_dir);
    const int L = cfg.max_lag;
    const std::size_t n = ds.cases.size();

    const auto a = acf(ds.cases, L);
    std::vector<int> lags;
    std::vector<double> vals;
    for (int k = 0; k <= L; ++k) {
        lags.push_back(k);
        vals.push_back(a[static_cast<std::size_t>(k)]);
    }
    write_diagnostic_csv(cfg.output_dir + "/acf.csv", lags, vals, n);

    const auto p = pacf(ds.cases, L);
    lags.clear();
    vals.clear();
    for (int k = 1; k <= L; ++k) {
        lags.push_back(k);
        vals.push_back(p[static_cast<std::size_t>(k)]);
    }
    write_diagnostic_csv(cfg.output_dir + "/pacf.csv", lags, vals, n);

    // Negative lag: calls lead cases.
    const auto c = ccf(ds.calls, ds.cases, L);
    lags.clear();
    vals.clear();
    for (const auto& [k, v] : c) {
        lags.push_back(k);
        vals.push_back(v);
    }
    write_diagnostic_csv(cfg.output_dir + "/ccf.csv", lags, vals, n);
    std::cout << "wrote acf.csv, pacf.csv, ccf.csv to " << cfg.output_dir << "\n";
}

void run_select(const RunConfig& cfg) {
    const Dataset ds = load_data(cfg);
    make_outdir(cfg.output_dir);
    const auto [cases_train, cases_test] = split(ds.cases, cfg.plan.split);
    const auto [calls_train, calls_test] = split(ds.calls, cfg.plan.split);
    (void)cases_test;
    (void)calls_test;

    StepwiseOptions opt;
    opt.validation_fraction = cfg.validation_fraction;
    opt.horizon = cfg.plan.H;
    opt.stride = cfg.stepwise_stride;
    opt.num_paths = cfg.stepwise_paths;
    opt.seed = cfg.plan.seed;
    opt.parallel = cfg.plan.parallel;
    opt.plan = cfg.plan.predictor_plan;

    const StepwiseResult res =
        stepwise_select(cases_train, calls_train, FeatureSpec::full_candidate_set(), opt);
    save_feature_spec(res.selected, cfg.output_dir + "/selected_spec.txt");
    write_stepwise_trace_csv(cfg.output_dir + "/stepwise_trace.csv", res);
    std::cout << "selected terms:";
    for (const auto& name : res.selected.column_names()) std::cout << ' ' << name;
    std::cout << "\nwrote selected_spec.txt, stepwise_trace.csv to " << cfg.output_dir << "\n";
}

void run_fit(const RunConfig& cfg, const std::string& model_name, const std::string& spec_path,
             bool train_only, const std::string& out_file) {
    const Dataset ds = load_data(cfg);
    make_outdir(cfg.output_dir);
    DailySeries cases = ds.cases;
    DailySeries calls = ds.calls;
    if (train_only) {
        const std::size_t k = cfg.plan.split.train_len(cases.size());
        cases = cases.prefix(k);
        calls = calls.prefix(k);
    }

    FittedModel fitted = [&]() -> FittedModel {
        if (model_name == "naive") return fit_naive(cases);
        if (model_name == "ets") return fit_ets_auto(cases, {cfg.plan.parallel});
        if (model_name == "arima")
            return fit_arima_auto(cases, cfg.plan.arima_log_cases, cfg.plan.arima_search);
        if (model_name == "mlr") {
            FeatureSpec spec = spec_path.empty() ? cfg.plan.mlr_spec : load_feature_spec(spec_path);
            return fit_mlr(cases, calls, spec);
        }
        throw DataError("unknown model '" + model_name + "' (naive|ets|arima|mlr)");
    }();

    const std::string path = cfg.output_dir + "/" + out_file;
    save_model(path, fitted);
    std::cout << "fitted " << model_kind(fitted) << " on " << cases.size() << " days, wrote "
              << path << "\n";
}

void run_forecast(const RunConfig& cfg, const std::string& model_file, int horizon) {
    const Dataset ds = load_data(cfg);
    make_outdir(cfg.output_dir);
    FittedModel m = load_model(model_file);
    const int H = horizon > 0 ? horizon : cfg.plan.H;
    const int M = cfg.plan.num_paths;
    const auto seed = cfg.plan.seed;
    const auto innov = cfg.plan.innovation;

    ForecastDistribution fc = std::visit(
        [&](auto&& model) -> ForecastDistribution {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, NaiveModel>) {
                return forecast_naive(model, H, M, seed, innov);
            } else if constexpr (std::is_same_v<T, EtsModel>) {
                return forecast_ets(refit_states(model, ds.cases), H, M, seed, innov);
            } else if constexpr (std::is_same_v<T, ArimaModel>) {
                return forecast_arima(refit_state(model, ds.cases), H, M, seed, innov);
            } else {
                return forecast_mlr(model, ds.cases, ds.calls, cfg.plan.predictor_plan, H, M,
                                    seed, innov);
            }
        },
        m);

    const std::string path = cfg.output_dir + "/forecast.csv";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "date,h,mean,median,lo80,hi80,lo95,hi95\n";
    for (int h = 1; h <= H; ++h) {
        const Date d = fc.origin_date() + std::chrono::days(h);
        const auto [lo80, hi80] = fc.interval(0.80, h);
        const auto [lo95, hi95] = fc.interval(0.95, h);
        out << format_date(d) << ',' << h << ',' << format_double(fc.mean(h)) << ','
            << format_double(fc.median(h)) << ',' << format_double(lo80) << ','
            << format_double(hi80) << ',' << format_double(lo95) << ',' << format_double(hi95)
            << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
    std::cout << "wrote " << path << " (" << model_kind(m) << ", H=" << H << ")\n";
}

void run_backtest_cmd(const RunConfig& cfg) {
    const Dataset ds = load_data(cfg);
    const BacktestReport report = run_backtest(ds.cases, ds.calls, cfg.plan);
    emit_report(report, cfg.output_dir);
    std::cout << "backtest over " << report.records.size() << " (model, origin, horizon) scores; "
              << report.failures.size() << " fit failures\n";
    for (const auto& model : report.models) {
        const auto it = report.overall.find(model);
        if (it == report.overall.end()) continue;
        std::printf("  %-6s", model.c_str());
        for (const auto& metric : kMetricNames) {
            const auto mit = it->second.find(metric);
            if (mit != it->second.end())
                std::printf("  %s=%.4f", metric.c_str(), mit->second);
        }
        std::printf("\n");
    }
    std::cout << "report written to " << cfg.output_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probabilistic daily case-count forecasting with phone-call predictors"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--set", overrides, "override a config key, key=value (repeatable)");

    std::string data_path, out_dir;
    app.add_option("--data", data_path, "input CSV (date,cases,calls)");
    app.add_option("--out", out_dir, "output directory");

    auto* diagnose = app.add_subcommand("diagnose", "ACF/PACF/CCF tables");
    auto* select = app.add_subcommand("select", "stepwise regressor selection");
    auto* fit = app.add_subcommand("fit", "fit one model, write JSON");
    auto* forecast = app.add_subcommand("forecast", "forecast from a saved model");
    auto* backtest = app.add_subcommand("backtest", "rolling-origin evaluation and report");

    std::string model_name, spec_path, out_file = "model.json", model_file;
    bool train_only = false;
    int horizon = 0;
    fit->add_option("--model", model_name, "naive | ets | arima | mlr")->required();
    fit->add_option("--spec", spec_path, "feature spec file (mlr only)");
    fit->add_option("--out-file", out_file, "model file name inside the output directory");
    fit->add_flag("--train-only", train_only, "fit on the training split only");
    forecast->add_option("--model-file", model_file, "saved model JSON")->required();
    forecast->add_option("--horizon", horizon, "steps ahead (default from config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        RunConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw DataError("--set expects key=value, got '" + kv + "'");
            apply_option(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (!data_path.empty()) cfg.data_path = data_path;
        if (!out_dir.empty()) cfg.output_dir = out_dir;

        if (diagnose->parsed()) run_diagnose(cfg);
        else if (select->parsed()) run_select(cfg);
        else if (fit->parsed()) run_fit(cfg, model_name, spec_path, train_only, out_file);
        else if (forecast->parsed()) run_forecast(cfg, model_file, horizon);
        else if (backtest->parsed()) run_backtest_cmd(cfg);
        return 0;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const FitError& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 4;
    }
}
