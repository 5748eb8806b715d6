#ifndef CALLCAST_BACKTEST_HPP
#define CALLCAST_BACKTEST_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "callcast/arima.hpp"
#include "callcast/exante.hpp"
#include "callcast/features.hpp"
#include "callcast/series.hpp"

namespace callcast {

struct RollingOrigin {
    std::size_t origin;  // last index the fit may use
    int max_h;           // usable horizons 1..max_h
};

// Origins at train_len-1, train_len-1+step, ... while at least one target
// remains inside the test set.
std::vector<RollingOrigin> rolling_origins(std::size_t train_len, std::size_t test_len, int H,
                                           int step);

inline const std::vector<std::string> kMetricNames = {"ME",      "RMSE",       "MAE",
                                                      "Winkler", "Percentile", "CRPS"};

struct ScoreRecord {
    std::string model;
    std::size_t origin;
    int h;
    double actual;
    double mean_fc;
    double median_fc;
    double lo95, hi95;
    std::array<double, 99> quantiles;
};

struct BacktestPlan {
    SplitSpec split;
    int H = 21;
    int step = 1;
    bool re_estimate = true;
    std::vector<std::string> models = {"arima", "ets", "MLR_T", "MLR_W"};
    std::uint64_t seed = 1;
    int num_paths = 1000;
    double alpha = 0.05;  // 95% intervals
    Innovation innovation = Innovation::Gaussian;
    bool parallel = true;

    FeatureSpec mlr_spec;  // MLR_T; MLR_W drops the call lags
    PredictorPlan predictor_plan;
    ArimaSearch arima_search;     // benchmark ARIMA on cases
    bool arima_log_cases = true;  // benchmark ARIMA fits shifted_log(cases)

    BacktestPlan();
};

struct HorizonScore {
    double value = 0.0;
    std::size_t count = 0;
};

struct BacktestReport {
    int H = 0;
    double alpha = 0.05;
    std::vector<std::string> models;
    // model -> metric -> per-horizon score (index h-1)
    std::map<std::string, std::map<std::string, std::vector<HorizonScore>>> per_horizon;
    // model -> metric -> equal-weight mean over horizons with data
    std::map<std::string, std::map<std::string, double>> overall;
    std::vector<ScoreRecord> records;
    std::vector<std::string> failures;  // per-origin fit failures; coverage gaps

    // Forecast from the final origin, for fan charts.
    Date latest_origin{};
    std::map<std::string, std::vector<std::array<double, 99>>> latest_quantiles;
    std::map<std::string, std::vector<std::pair<double, double>>> latest_interval95;
};

BacktestReport run_backtest(const DailySeries& cases, const DailySeries& calls,
                            const BacktestPlan& plan);

}  // namespace callcast

#endif
