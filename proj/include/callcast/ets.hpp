#ifndef CALLCAST_ETS_HPP
#define CALLCAST_ETS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "callcast/forecast.hpp"
#include "callcast/series.hpp"

namespace callcast {

enum class EtsTrend { None, Additive, AdditiveDamped };
enum class EtsSeason { None, Additive };

// Additive-error exponential smoothing state space model, weekly season.
struct EtsModel {
    EtsTrend trend = EtsTrend::None;
    EtsSeason season = EtsSeason::None;

    double alpha = 0.0;
    double beta = 0.0;   // 0 unless trend
    double gamma = 0.0;  // 0 unless seasonal
    double phi = 1.0;    // damping; 1 unless damped trend

    double init_level = 0.0;
    double init_slope = 0.0;
    std::array<double, 7> init_season{};  // sums to zero when seasonal

    // End-of-sample states, used for forecasting.
    double level = 0.0;
    double slope = 0.0;
    std::array<double, 7> season_state{};  // [0] applies to the next day

    double residual_sd = 0.0;
    double aicc = 0.0;
    std::vector<double> residuals;
    std::size_t n_train = 0;
    Date train_end{};
};

struct EtsFitOptions {
    bool parallel = true;
};

constexpr int kEtsSeasonPeriod = 7;

// AICc model selection over {none, additive, damped} trend x {none, weekly
// additive} season; Gaussian likelihood maximized over smoothing parameters
// and initial states with a multi-start simplex search.
EtsModel fit_ets_auto(const DailySeries& y, const EtsFitOptions& opt = {});

// Single candidate fit (also the building block of the auto search).
EtsModel fit_ets(const DailySeries& y, EtsTrend trend, EtsSeason season);

// Re-runs the filtering recursion with fixed parameters on new data,
// refreshing end-of-sample states and residuals (no re-estimation).
EtsModel refit_states(const EtsModel& m, const DailySeries& y);

std::vector<double> point_forecast(const EtsModel& m, int H);

ForecastDistribution forecast_ets(const EtsModel& m, int H, int M, std::uint64_t seed,
                                  Innovation innovation = Innovation::Gaussian);

}  // namespace callcast

#endif
