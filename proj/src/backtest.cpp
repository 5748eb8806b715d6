#include "callcast/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "callcast/errors.hpp"
#include "callcast/metrics.hpp"
#include "callcast/naive.hpp"
#include "callcast/parallel.hpp"
#include "callcast/rng.hpp"

namespace callcast {

BacktestPlan::BacktestPlan() {
    mlr_spec.intercept = true;
    mlr_spec.trend = true;
    mlr_spec.weekend = true;
    mlr_spec.ar_lags = {1, 7};
    mlr_spec.call_lags = {7};
}

std::vector<RollingOrigin> rolling_origins(std::size_t train_len, std::size_t test_len, int H,
                                           int step) {
    if (train_len < 1 || test_len < 1) throw DataError("rolling_origins: empty train or test set");
    if (H < 1 || step < 1) throw DataError("rolling_origins: H and step must be >= 1");
    const std::size_t n = train_len + test_len;
    std::vector<RollingOrigin> out;
    for (std::size_t o = train_len - 1; o + 1 < n; o += static_cast<std::size_t>(step))
        out.push_back({o, static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(H), n - 1 - o))});
    return out;
}

namespace {

// Stable seed stream per (origin, model), independent of the plan's model
// ordering.
std::uint64_t model_seed(std::uint64_t base, std::size_t origin, const std::string& model) {
    static const std::vector<std::string> canon = {"naive", "arima", "ets", "MLR_T", "MLR_W"};
    std::size_t idx = canon.size();
    for (std::size_t i = 0; i < canon.size(); ++i)
        if (canon[i] == model) idx = i;
    return mix_seed(mix_seed(base, origin), idx);
}

ScoreRecord make_record(const std::string& model, std::size_t origin, int h, double actual,
                        const ForecastDistribution& fc) {
    ScoreRecord r;
    r.model = model;
    r.origin = origin;
    r.h = h;
    r.actual = actual;
    r.mean_fc = fc.mean(h);
    r.median_fc = fc.median(h);
    const auto iv = fc.interval(0.95, h);
    r.lo95 = iv.first;
    r.hi95 = iv.second;
    r.quantiles = fc.percentile_grid(h);
    return r;
}

struct Prefit {
    std::optional<ArimaModel> arima_cases;
    std::optional<ArimaModel> arima_calls;
    std::optional<EtsModel> ets_cases;
    std::optional<MlrModel> mlr_t;
    std::optional<MlrModel> mlr_w;
};

}  // namespace

BacktestReport run_backtest(const DailySeries& cases, const DailySeries& calls,
                            const BacktestPlan& plan) {
    if (cases.size() != calls.size() || cases.start_date() != calls.start_date())
        throw DataError("backtest: cases and calls calendars are not aligned");
    plan.mlr_spec.validate();
    const std::size_t n = cases.size();
    const std::size_t train_len = plan.split.train_len(n);
    if (train_len < 1 || train_len >= n) throw DataError("backtest: degenerate train/test split");
    const std::vector<RollingOrigin> origins = rolling_origins(train_len, n - train_len, plan.H, plan.step);

    const auto wants = [&](const std::string& name) {
        return std::find(plan.models.begin(), plan.models.end(), name) != plan.models.end();
    };
    const bool want_mlr_t = wants("MLR_T");
    const bool want_mlr_w = wants("MLR_W");
    const bool need_ets = wants("ets") || want_mlr_t || want_mlr_w;

    FeatureSpec spec_w = plan.mlr_spec;
    spec_w.call_lags.clear();

    // Inner fitters run serially; the origin loop carries the parallelism.
    ArimaSearch arima_search = plan.arima_search;
    arima_search.parallel = false;
    PredictorPlan pred_plan = plan.predictor_plan;
    pred_plan.calls_search.parallel = false;
    pred_plan.ets_options.parallel = false;
    EtsFitOptions ets_opt = pred_plan.ets_options;

    // With re_estimate off, parameters come from a single fit on the
    // training window; only filtering state is refreshed per origin.
    Prefit prefit;
    if (!plan.re_estimate) {
        const DailySeries tc = cases.prefix(train_len);
        const DailySeries tl = calls.prefix(train_len);
        if (wants("arima")) prefit.arima_cases = fit_arima_auto(tc, plan.arima_log_cases, arima_search);
        if (need_ets) prefit.ets_cases = fit_ets_auto(tc, ets_opt);
        if (want_mlr_t) {
            prefit.arima_calls = fit_arima_auto(tl, false, pred_plan.calls_search);
            prefit.mlr_t = fit_mlr(tc, tl, plan.mlr_spec);
        }
        if (want_mlr_w) prefit.mlr_w = fit_mlr(tc, tl, spec_w);
    }

    std::vector<std::vector<ScoreRecord>> origin_records(origins.size());
    std::vector<std::vector<std::string>> origin_failures(origins.size());
    std::vector<std::map<std::string, std::vector<std::array<double, 99>>>> origin_latest(origins.size());
    std::vector<std::map<std::string, std::vector<std::pair<double, double>>>> origin_latest_iv(origins.size());

    parallel_for(origins.size(), plan.parallel, [&](std::size_t oi) {
        const std::size_t o = origins[oi].origin;
        const int max_h = origins[oi].max_h;
        const bool last_origin = (oi + 1 == origins.size());
        const DailySeries hist_cases = cases.prefix(o + 1);
        const DailySeries hist_calls = calls.prefix(o + 1);

        auto fail = [&](const std::string& model, const std::exception& e) {
            origin_failures[oi].push_back("origin " + std::to_string(o) + " " + model + ": " + e.what());
        };
        auto score = [&](const std::string& model, const ForecastDistribution& fc) {
            for (int h = 1; h <= max_h; ++h)
                origin_records[oi].push_back(
                    make_record(model, o, h, cases[o + static_cast<std::size_t>(h)], fc));
            if (last_origin) {
                auto& qs = origin_latest[oi][model];
                auto& ivs = origin_latest_iv[oi][model];
                for (int h = 1; h <= max_h; ++h) {
                    qs.push_back(fc.percentile_grid(h));
                    ivs.push_back(fc.interval(0.95, h));
                }
            }
        };

        // Shared fits for this origin.
        std::optional<EtsModel> ets_cases;
        if (need_ets) {
            try {
                ets_cases = plan.re_estimate ? fit_ets_auto(hist_cases, ets_opt)
                                             : refit_states(*prefit.ets_cases, hist_cases);
            } catch (const FitError& e) {
                fail("ets", e);
            }
        }

        for (const std::string& model : plan.models) {
            const std::uint64_t seed = model_seed(plan.seed, o, model);
            try {
                if (model == "naive") {
                    const NaiveModel m = fit_naive(hist_cases);
                    score(model, forecast_naive(m, max_h, plan.num_paths, seed, plan.innovation));
                } else if (model == "arima") {
                    const ArimaModel m = plan.re_estimate
                                             ? fit_arima_auto(hist_cases, plan.arima_log_cases, arima_search)
                                             : refit_state(*prefit.arima_cases, hist_cases);
                    score(model, forecast_arima(m, max_h, plan.num_paths, seed, plan.innovation));
                } else if (model == "ets") {
                    if (!ets_cases) throw FitError("ets: shared fit failed");
                    score(model, forecast_ets(*ets_cases, max_h, plan.num_paths, seed, plan.innovation));
                } else if (model == "MLR_T" || model == "MLR_W") {
                    if (!ets_cases) throw FitError("mlr: cases predictor fit failed");
                    const FeatureSpec& spec = (model == "MLR_T") ? plan.mlr_spec : spec_w;
                    const NaiveModel naive_cases = fit_naive(hist_cases);
                    PredictorProxies px;
                    if (model == "MLR_T") {
                        const ArimaModel calls_model =
                            plan.re_estimate ? fit_arima_auto(hist_calls, false, pred_plan.calls_search)
                                             : refit_state(*prefit.arima_calls, hist_calls);
                        px = blend_proxies(calls_model, *ets_cases, naive_cases,
                                           pred_plan.naive_cutoff, max_h);
                    } else {
                        const std::vector<double> ets_fc = point_forecast(*ets_cases, max_h);
                        const std::vector<double> naive_fc = point_forecast(naive_cases, max_h);
                        px.future_calls.assign(static_cast<std::size_t>(max_h), 0.0);
                        px.future_cases.resize(static_cast<std::size_t>(max_h));
                        for (int h = 1; h <= max_h; ++h)
                            px.future_cases[static_cast<std::size_t>(h - 1)] =
                                (h < pred_plan.naive_cutoff)
                                    ? naive_fc[static_cast<std::size_t>(h - 1)]
                                    : std::max(ets_fc[static_cast<std::size_t>(h - 1)], 0.0);
                    }
                    const MlrModel m = plan.re_estimate
                                           ? fit_mlr(hist_cases, hist_calls, spec)
                                           : (model == "MLR_T" ? *prefit.mlr_t : *prefit.mlr_w);
                    score(model, forecast_mlr(m, hist_cases, hist_calls, px, max_h, plan.num_paths,
                                              seed, plan.innovation));
                } else {
                    throw DataError("backtest: unknown model '" + model + "'");
                }
            } catch (const FitError& e) {
                fail(model, e);
            }
        }
    });

    BacktestReport report;
    report.H = plan.H;
    report.alpha = plan.alpha;
    report.models = plan.models;
    report.latest_origin = cases.date_at(origins.back().origin);
    for (auto& fs : origin_failures)
        report.failures.insert(report.failures.end(), fs.begin(), fs.end());
    for (auto& rs : origin_records)
        report.records.insert(report.records.end(), rs.begin(), rs.end());
    for (auto& lm : origin_latest)
        for (auto& [model, qs] : lm) report.latest_quantiles[model] = qs;
    for (auto& lm : origin_latest_iv)
        for (auto& [model, ivs] : lm) report.latest_interval95[model] = ivs;

    // Per-horizon means across origins, then equal-weight means across
    // horizons with data.
    for (const std::string& model : plan.models) {
        auto& ph = report.per_horizon[model];
        for (const std::string& metric : kMetricNames)
            ph[metric].assign(static_cast<std::size_t>(plan.H), HorizonScore{});
    }
    std::map<std::string, std::map<std::string, std::vector<double>>> sums;
    for (const ScoreRecord& r : report.records) {
        auto& s = sums[r.model];
        for (const std::string& metric : kMetricNames) {
            auto& v = s[metric];
            if (v.empty()) v.assign(static_cast<std::size_t>(plan.H), 0.0);
        }
        const std::size_t hi = static_cast<std::size_t>(r.h - 1);
        const double e_mean = r.mean_fc - r.actual;
        const double e_median = r.median_fc - r.actual;
        s["ME"][hi] += e_mean;
        s["RMSE"][hi] += e_mean * e_mean;
        s["MAE"][hi] += std::abs(e_median);
        s["Winkler"][hi] += winkler(r.lo95, r.hi95, r.actual, plan.alpha);
        s["Percentile"][hi] += percentile_score(r.quantiles, r.actual);
        s["CRPS"][hi] += crps(r.quantiles, r.actual);
        ++report.per_horizon[r.model]["ME"][hi].count;
    }
    for (const std::string& model : plan.models) {
        // counts are identical across metrics; propagate from ME
        auto& ph = report.per_horizon[model];
        for (int h = 0; h < plan.H; ++h) {
            const std::size_t cnt = ph["ME"][static_cast<std::size_t>(h)].count;
            for (const std::string& metric : kMetricNames)
                ph[metric][static_cast<std::size_t>(h)].count = cnt;
            if (cnt == 0) continue;
            const double dn = static_cast<double>(cnt);
            auto& s = sums[model];
            ph["ME"][static_cast<std::size_t>(h)].value = s["ME"][static_cast<std::size_t>(h)] / dn;
            ph["RMSE"][static_cast<std::size_t>(h)].value =
                std::sqrt(s["RMSE"][static_cast<std::size_t>(h)] / dn);
            ph["MAE"][static_cast<std::size_t>(h)].value = s["MAE"][static_cast<std::size_t>(h)] / dn;
            ph["Winkler"][static_cast<std::size_t>(h)].value =
                s["Winkler"][static_cast<std::size_t>(h)] / dn;
            ph["Percentile"][static_cast<std::size_t>(h)].value =
                s["Percentile"][static_cast<std::size_t>(h)] / dn;
            ph["CRPS"][static_cast<std::size_t>(h)].value = s["CRPS"][static_cast<std::size_t>(h)] / dn;
        }
        for (const std::string& metric : kMetricNames) {
            double total = 0.0;
            int nh = 0;
            for (int h = 0; h < plan.H; ++h) {
                if (ph[metric][static_cast<std::size_t>(h)].count == 0) continue;
                total += ph[metric][static_cast<std::size_t>(h)].value;
                ++nh;
            }
            report.overall[model][metric] = nh ? total / nh : 0.0;
        }
    }
    return report;
}

}  // namespace callcast
