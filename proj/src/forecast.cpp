#include "callcast/forecast.hpp"

#include <algorithm>
#include <cmath>

#include "callcast/errors.hpp"

namespace callcast {

ForecastDistribution::ForecastDistribution(Date origin, std::vector<std::vector<double>> paths)
    : origin_(origin), paths_(std::move(paths)) {
    if (paths_.empty()) throw DataError("forecast distribution: no sample paths");
    horizon_ = static_cast<int>(paths_[0].size());
    if (horizon_ < 1) throw DataError("forecast distribution: empty horizon");
    for (const auto& p : paths_)
        if (static_cast<int>(p.size()) != horizon_)
            throw DataError("forecast distribution: ragged sample paths");

    const std::size_t m = paths_.size();
    sorted_.assign(static_cast<std::size_t>(horizon_), std::vector<double>(m));
    means_.assign(static_cast<std::size_t>(horizon_), 0.0);
    for (int h = 0; h < horizon_; ++h) {
        auto& col = sorted_[static_cast<std::size_t>(h)];
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            col[i] = paths_[i][static_cast<std::size_t>(h)];
            sum += col[i];
        }
        std::sort(col.begin(), col.end());
        means_[static_cast<std::size_t>(h)] = sum / static_cast<double>(m);
    }
}

double ForecastDistribution::quantile_frac(double p, int h) const {
    if (h < 1 || h > horizon_) throw DataError("quantile: horizon out of range");
    if (!(p > 0.0 && p < 1.0)) throw DataError("quantile: probability outside (0,1)");
    const auto& col = sorted_[static_cast<std::size_t>(h - 1)];
    const std::size_t m = col.size();
    if (m == 1) return col[0];
    const double pos = p * static_cast<double>(m - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= m) return col[m - 1];
    return col[lo] + frac * (col[lo + 1] - col[lo]);
}

double ForecastDistribution::mean(int h) const {
    if (h < 1 || h > horizon_) throw DataError("mean: horizon out of range");
    return means_[static_cast<std::size_t>(h - 1)];
}

std::pair<double, double> ForecastDistribution::interval(double level, int h) const {
    const double tail = (1.0 - level) / 2.0;
    return {quantile_frac(tail, h), quantile_frac(1.0 - tail, h)};
}

std::array<double, 99> ForecastDistribution::percentile_grid(int h) const {
    std::array<double, 99> q{};
    for (int i = 1; i <= 99; ++i) q[static_cast<std::size_t>(i - 1)] = quantile(i, h);
    return q;
}

}  // namespace callcast
