#ifndef CALLCAST_EXANTE_HPP
#define CALLCAST_EXANTE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "callcast/arima.hpp"
#include "callcast/ets.hpp"
#include "callcast/features.hpp"
#include "callcast/forecast.hpp"
#include "callcast/naive.hpp"
#include "callcast/ols.hpp"
#include "callcast/series.hpp"

namespace callcast {

// How future predictor values are generated: ARIMA point forecasts for the
// call series; for case lags, Naive below the cutoff horizon and ETS from
// the cutoff on.
struct PredictorPlan {
    int naive_cutoff = 5;  // horizons h < cutoff use the Naive forecast
    ArimaSearch calls_search;
    EtsFitOptions ets_options;
};

struct PredictorProxies {
    std::vector<double> future_calls;  // point forecasts, length H
    std::vector<double> future_cases;  // Naive/ETS blend, length H
};

// Point-forecast proxies from already-fitted predictor models.
PredictorProxies blend_proxies(const ArimaModel& calls_model, const EtsModel& cases_ets,
                               const NaiveModel& cases_naive, int naive_cutoff, int H);

// Fits the predictor models on the given history and blends.
PredictorProxies forecast_predictors(const DailySeries& cases, const DailySeries& calls,
                                     const PredictorPlan& plan, int H);

// Regressor row for origin+h. Lagged terms resolve to observed history when
// the lagged day is at or before the origin (the last day of `cases`),
// otherwise to the proxy point forecast.
std::vector<double> assemble_future_row(int h, const DailySeries& cases, const DailySeries& calls,
                                        const PredictorProxies& proxies, const FeatureSpec& spec);

// Ex-ante MLR forecast: deterministic log-scale mean per horizon from the
// assembled rows, plus sampled innovations, back-transformed to counts.
ForecastDistribution forecast_mlr(const MlrModel& model, const DailySeries& cases,
                                  const DailySeries& calls, const PredictorProxies& proxies,
                                  int H, int M, std::uint64_t seed,
                                  Innovation innovation = Innovation::Gaussian);

ForecastDistribution forecast_mlr(const MlrModel& model, const DailySeries& cases,
                                  const DailySeries& calls, const PredictorPlan& plan, int H,
                                  int M, std::uint64_t seed,
                                  Innovation innovation = Innovation::Gaussian);

struct StepwiseOptions {
    double validation_fraction = 0.2;  // tail of the training window
    int horizon = 21;
    int stride = 7;     // origin spacing within the validation slice
    int num_paths = 200;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;  // minimum RMSE improvement to keep going
    bool parallel = true;
    PredictorPlan plan;
};

struct StepwiseTraceEntry {
    std::string term;
    double rmse;
};

struct StepwiseResult {
    FeatureSpec selected;
    std::vector<StepwiseTraceEntry> trace;  // strictly decreasing rmse
};

// Forward greedy selection from {intercept}, judged by validation RMSE of
// ex-ante forecasts, re-fitting per origin. Ties break by canonical column
// order.
StepwiseResult stepwise_select(const DailySeries& cases, const DailySeries& calls,
                               const FeatureSpec& candidates, const StepwiseOptions& opt = {});

}  // namespace callcast

#endif
