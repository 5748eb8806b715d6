#ifndef CALLCAST_FORECAST_HPP
#define CALLCAST_FORECAST_HPP

#include <array>
#include <utility>
#include <vector>

#include "callcast/series.hpp"

namespace callcast {

enum class Innovation { Gaussian, Bootstrap };

// Monte Carlo forecast on the original count scale: M sample paths of
// length H, with quantiles by linear interpolation of order statistics.
class ForecastDistribution {
  public:
    ForecastDistribution(Date origin, std::vector<std::vector<double>> paths);

    Date origin_date() const { return origin_; }
    int horizon() const { return horizon_; }
    std::size_t num_paths() const { return paths_.size(); }
    const std::vector<std::vector<double>>& paths() const { return paths_; }

    // p in (0,1); h in 1..H
    double quantile_frac(double p, int h) const;
    // i in 1..99
    double quantile(int i, int h) const { return quantile_frac(i / 100.0, h); }
    double mean(int h) const;
    double median(int h) const { return quantile_frac(0.5, h); }
    // central interval, e.g. level 0.95 -> (q_{0.025}, q_{0.975})
    std::pair<double, double> interval(double level, int h) const;

    std::array<double, 99> percentile_grid(int h) const;

  private:
    Date origin_;
    int horizon_;
    std::vector<std::vector<double>> paths_;    // M x H
    std::vector<std::vector<double>> sorted_;   // H x M, ascending
    std::vector<double> means_;                 // per horizon
};

}  // namespace callcast

#endif
