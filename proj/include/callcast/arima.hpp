#ifndef CALLCAST_ARIMA_HPP
#define CALLCAST_ARIMA_HPP

#include <cstdint>
#include <vector>

#include "callcast/forecast.hpp"
#include "callcast/series.hpp"

namespace callcast {

struct ArimaOrder {
    int p = 0, d = 0, q = 0;  // non-seasonal
    int P = 0, D = 0, Q = 0;  // seasonal, period 7
};

// Search caps for automatic order selection. Hard bounds: p,q <= 5,
// d <= 2, P,Q <= 2, D <= 1.
struct ArimaSearch {
    int max_p = 2, max_d = 1, max_q = 2;
    int max_P = 1, max_D = 1, max_Q = 1;
    bool parallel = true;
};

constexpr int kArimaSeasonPeriod = 7;

// Seasonal ARIMA fitted by conditional sum of squares. `use_log` fits on
// shifted_log(y) and back-transforms forecasts.
struct ArimaModel {
    ArimaOrder order;
    bool use_log = false;

    std::vector<double> ar, ma, sar, sma;
    double intercept = 0.0;  // present only when d + D == 0

    double residual_sd = 0.0;
    double aic = 0.0;
    std::vector<double> residuals;  // on the differenced scale; zero before warm-up

    // Forecasting state: the differenced series and every partial
    // integration stage (lag, values) needed to undo differencing.
    std::vector<double> z_hist;
    std::vector<int> stage_lags;
    std::vector<std::vector<double>> stage_values;

    std::size_t n_train = 0;
    Date train_end{};

    std::vector<double> expanded_ar() const;  // phi(B) * PHI(B^7)
    std::vector<double> expanded_ma() const;  // theta(B) * THETA(B^7)
};

ArimaModel fit_arima(const DailySeries& y, const ArimaOrder& order, bool use_log);

// Minimum-AIC grid search; non-stationary / non-invertible candidates are
// discarded.
ArimaModel fit_arima_auto(const DailySeries& y, bool use_log, const ArimaSearch& search = {});

// Recomputes residuals and differencing state on new data with fixed
// coefficients (no re-estimation).
ArimaModel refit_state(const ArimaModel& m, const DailySeries& y);

std::vector<double> point_forecast(const ArimaModel& m, int H);

ForecastDistribution forecast_arima(const ArimaModel& m, int H, int M, std::uint64_t seed,
                                    Innovation innovation = Innovation::Gaussian);

}  // namespace callcast

#endif
