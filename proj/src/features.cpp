#include "callcast/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "callcast/errors.hpp"

namespace callcast {

int FeatureSpec::max_lag() const {
    int m = 0;
    for (int k : ar_lags) m = std::max(m, k);
    for (int k : call_lags) m = std::max(m, k);
    return m;
}

void FeatureSpec::validate() const {
    for (int k : ar_lags)
        if (k < 1 || k > kMaxArLag)
            throw DataError("ar lag " + std::to_string(k) + " outside 1.." + std::to_string(kMaxArLag));
    for (int k : call_lags)
        if (k != 0 && (k < kMinCallLag || k > kMaxCallLag))
            throw DataError("call lag " + std::to_string(k) + " outside {0, " +
                            std::to_string(kMinCallLag) + ".." + std::to_string(kMaxCallLag) + "}");
    auto sorted_unique = [](const std::vector<int>& v) {
        return std::is_sorted(v.begin(), v.end()) && std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    if (!sorted_unique(ar_lags) || !sorted_unique(call_lags))
        throw DataError("lag lists must be sorted and duplicate-free");
}

std::vector<std::string> FeatureSpec::column_names() const {
    std::vector<std::string> names;
    if (intercept) names.push_back("intercept");
    if (trend) names.push_back("trend");
    if (weekend) names.push_back("weekend");
    for (int k : ar_lags) names.push_back("cases_lag" + std::to_string(k));
    for (int k : call_lags) names.push_back("calls_lag" + std::to_string(k));
    return names;
}

FeatureSpec FeatureSpec::full_candidate_set() {
    FeatureSpec spec;
    spec.intercept = true;
    spec.trend = true;
    spec.weekend = true;
    spec.ar_lags.resize(kMaxArLag);
    std::iota(spec.ar_lags.begin(), spec.ar_lags.end(), 1);
    spec.call_lags.push_back(0);
    for (int k = kMinCallLag; k <= kMaxCallLag; ++k) spec.call_lags.push_back(k);
    return spec;
}

namespace {

double series_mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> acf(const DailySeries& series, int max_lag) {
    const auto& v = series.values();
    const int n = static_cast<int>(v.size());
    if (max_lag < 1 || n <= max_lag)
        throw DataError("acf: need series length > max_lag >= 1");
    const double mean = series_mean(v);
    double c0 = 0.0;
    for (double x : v) c0 += (x - mean) * (x - mean);
    if (c0 <= 0.0) throw DataError("acf: zero-variance series");
    std::vector<double> r(static_cast<std::size_t>(max_lag) + 1);
    r[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (int t = k; t < n; ++t) ck += (v[t] - mean) * (v[t - k] - mean);
        r[k] = ck / c0;
    }
    return r;
}

std::vector<double> pacf(const DailySeries& series, int max_lag) {
    const std::vector<double> r = acf(series, max_lag);
    std::vector<double> out(static_cast<std::size_t>(max_lag) + 1, 0.0);
    out[0] = 1.0;
    // Durbin-Levinson: phi[k][k] is the lag-k partial autocorrelation.
    std::vector<double> phi_prev(static_cast<std::size_t>(max_lag) + 1, 0.0);
    std::vector<double> phi(static_cast<std::size_t>(max_lag) + 1, 0.0);
    double denom = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = r[k];
        for (int j = 1; j < k; ++j) num -= phi_prev[j] * r[k - j];
        const double pk = (std::abs(denom) > 0.0) ? num / denom : 0.0;
        phi[k] = pk;
        for (int j = 1; j < k; ++j) phi[j] = phi_prev[j] - pk * phi_prev[k - j];
        denom *= (1.0 - pk * pk);
        out[k] = pk;
        phi_prev = phi;
    }
    return out;
}

std::map<int, double> ccf(const DailySeries& x, const DailySeries& y, int max_lag) {
    if (x.size() != y.size() || x.start_date() != y.start_date())
        throw DataError("ccf: series calendars are not aligned");
    const int n = static_cast<int>(x.size());
    if (max_lag < 0 || n <= max_lag + 1) throw DataError("ccf: series too short for max_lag");

    auto pearson = [](const double* a, const double* b, int m) {
        double ma = 0.0, mb = 0.0;
        for (int i = 0; i < m; ++i) {
            ma += a[i];
            mb += b[i];
        }
        ma /= m;
        mb /= m;
        double sab = 0.0, saa = 0.0, sbb = 0.0;
        for (int i = 0; i < m; ++i) {
            sab += (a[i] - ma) * (b[i] - mb);
            saa += (a[i] - ma) * (a[i] - ma);
            sbb += (b[i] - mb) * (b[i] - mb);
        }
        if (saa <= 0.0 || sbb <= 0.0) throw DataError("ccf: zero variance in overlap window");
        return sab / std::sqrt(saa * sbb);
    };

    const double* xv = x.values().data();
    const double* yv = y.values().data();
    std::map<int, double> out;
    for (int k = -max_lag; k <= max_lag; ++k) {
        // pairs (x_{t+k}, y_t); overlap t in [max(0,-k), n-1-max(0,k)]
        const int t0 = std::max(0, -k);
        const int m = n - std::abs(k);
        out[k] = pearson(xv + t0 + k, yv + t0, m);
    }
    return out;
}

DesignMatrix build_design(const DailySeries& cases, const DailySeries& calls,
                          const FeatureSpec& spec) {
    spec.validate();
    if (cases.size() != calls.size() || cases.start_date() != calls.start_date())
        throw DataError("build_design: cases and calls calendars are not aligned");
    const int n = static_cast<int>(cases.size());
    const int m = spec.max_lag();
    if (n <= m) throw DataError("build_design: series shorter than max lag");

    DesignMatrix d;
    d.columns = spec.column_names();
    const int rows = n - m;
    const int cols = static_cast<int>(d.columns.size());
    if (cols == 0) throw DataError("build_design: empty feature spec");
    d.X.resize(rows, cols);
    d.y.resize(rows);
    d.t_index.reserve(static_cast<std::size_t>(rows));

    for (int t = m; t < n; ++t) {
        const int row = t - m;
        int c = 0;
        if (spec.intercept) d.X(row, c++) = 1.0;
        if (spec.trend) d.X(row, c++) = static_cast<double>(t);
        if (spec.weekend) d.X(row, c++) = is_weekend(cases.date_at(t)) ? 1.0 : 0.0;
        for (int k : spec.ar_lags) d.X(row, c++) = shifted_log(cases[t - k]);
        for (int k : spec.call_lags) d.X(row, c++) = calls[t - k];
        d.y(row) = shifted_log(cases[t]);
        d.t_index.push_back(static_cast<std::size_t>(t));
    }
    return d;
}

}  // namespace callcast
