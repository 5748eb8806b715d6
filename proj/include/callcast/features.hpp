#ifndef CALLCAST_FEATURES_HPP
#define CALLCAST_FEATURES_HPP

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "callcast/series.hpp"

namespace callcast {

// Candidate regressor set: intercept, trend, weekend dummy, autoregressive
// lags of the (log) response, and lags of the call series.
struct FeatureSpec {
    bool intercept = true;
    bool trend = false;
    bool weekend = false;
    std::vector<int> ar_lags;    // each in 1..21
    std::vector<int> call_lags;  // each in {0} or 5..30

    static constexpr int kMaxArLag = 21;
    static constexpr int kMinCallLag = 5;
    static constexpr int kMaxCallLag = 30;

    int max_lag() const;
    void validate() const;  // throws DataError; also sorts/dedups expectations
    std::vector<std::string> column_names() const;  // canonical order

    // Everything the candidate set allows: intercept+trend+weekend,
    // ar lags 1..21, call lags {0, 5..30}.
    static FeatureSpec full_candidate_set();
};

struct DesignMatrix {
    Eigen::MatrixXd X;                  // rows: usable time indices
    Eigen::VectorXd y;                  // shifted_log of cases at t
    std::vector<std::string> columns;   // names in canonical order
    std::vector<std::size_t> t_index;   // day index (into the source series) per row
};

// Sample autocorrelation, mean-centred, lag-0 variance denominator.
// result[k] = r_k for k = 0..max_lag.
std::vector<double> acf(const DailySeries& series, int max_lag);

// Partial autocorrelations via Durbin-Levinson on the acf.
// result[k] = pacf at lag k for k = 1..max_lag (index 0 unused, set to 1).
std::vector<double> pacf(const DailySeries& series, int max_lag);

// Cross-correlation of x_{t+k} with y_t over the overlapping window, for
// k in [-max_lag, max_lag]. Negative k: x leads y.
std::map<int, double> ccf(const DailySeries& x, const DailySeries& y, int max_lag);

DesignMatrix build_design(const DailySeries& cases, const DailySeries& calls,
                          const FeatureSpec& spec);

}  // namespace callcast

#endif
