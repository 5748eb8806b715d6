#ifndef CALLCAST_NAIVE_HPP
#define CALLCAST_NAIVE_HPP

#include <cstdint>
#include <vector>

#include "callcast/forecast.hpp"
#include "callcast/series.hpp"

namespace callcast {

// Random-walk forecaster: point forecast is the last observation,
// uncertainty from the one-step difference spread.
struct NaiveModel {
    double last = 0.0;
    double residual_sd = 0.0;
    std::vector<double> residuals;  // one-step differences
    std::size_t n_train = 0;
    Date train_end{};
};

NaiveModel fit_naive(const DailySeries& y);

std::vector<double> point_forecast(const NaiveModel& m, int H);

ForecastDistribution forecast_naive(const NaiveModel& m, int H, int M, std::uint64_t seed,
                                    Innovation innovation = Innovation::Gaussian);

}  // namespace callcast

#endif
