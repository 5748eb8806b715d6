#include "callcast/exante.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "callcast/errors.hpp"
#include "callcast/parallel.hpp"
#include "callcast/rng.hpp"

namespace callcast {

PredictorProxies blend_proxies(const ArimaModel& calls_model, const EtsModel& cases_ets,
                               const NaiveModel& cases_naive, int naive_cutoff, int H) {
    if (naive_cutoff < 1) throw DataError("naive_cutoff must be >= 1");
    if (H < 1) throw DataError("forecast_predictors: H must be >= 1");
    PredictorProxies px;
    px.future_calls = point_forecast(calls_model, H);
    const std::vector<double> ets_fc = point_forecast(cases_ets, H);
    const std::vector<double> naive_fc = point_forecast(cases_naive, H);
    px.future_cases.resize(static_cast<std::size_t>(H));
    for (int h = 1; h <= H; ++h)
        px.future_cases[static_cast<std::size_t>(h - 1)] =
            (h < naive_cutoff) ? naive_fc[static_cast<std::size_t>(h - 1)]
                               : std::max(ets_fc[static_cast<std::size_t>(h - 1)], 0.0);
    return px;
}

PredictorProxies forecast_predictors(const DailySeries& cases, const DailySeries& calls,
                                     const PredictorPlan& plan, int H) {
    if (cases.end_date() != calls.end_date())
        throw DataError("forecast_predictors: series must end on the same date");
    const ArimaModel calls_model = fit_arima_auto(calls, /*use_log=*/false, plan.calls_search);
    const EtsModel cases_ets = fit_ets_auto(cases, plan.ets_options);
    const NaiveModel cases_naive = fit_naive(cases);
    return blend_proxies(calls_model, cases_ets, cases_naive, plan.naive_cutoff, H);
}

std::vector<double> assemble_future_row(int h, const DailySeries& cases, const DailySeries& calls,
                                        const PredictorProxies& proxies, const FeatureSpec& spec) {
    spec.validate();
    const long n = static_cast<long>(cases.size());
    const int H = static_cast<int>(proxies.future_cases.size());
    if (h < 1 || h > H) throw DataError("assemble_future_row: horizon outside 1..H");
    const long t_future = n - 1 + h;

    auto resolve = [&](const DailySeries& observed, const std::vector<double>& proxy, int lag,
                       bool log_scale) {
        const long idx = t_future - lag;
        double v;
        if (idx < 0) throw DataError("assemble_future_row: lag reaches before the series start");
        if (idx < n) {
            v = observed[static_cast<std::size_t>(idx)];
        } else {
            const long ph = idx - n;  // horizon-1 into the proxy
            if (ph >= static_cast<long>(proxy.size()))
                throw DataError("assemble_future_row: no proxy forecast for lagged term");
            v = proxy[static_cast<std::size_t>(ph)];
        }
        return log_scale ? shifted_log(std::max(v, 0.0)) : v;
    };

    std::vector<double> row;
    if (spec.intercept) row.push_back(1.0);
    if (spec.trend) row.push_back(static_cast<double>(t_future));
    if (spec.weekend)
        row.push_back(is_weekend(cases.start_date() + std::chrono::days(t_future)) ? 1.0 : 0.0);
    for (int k : spec.ar_lags) row.push_back(resolve(cases, proxies.future_cases, k, true));
    for (int k : spec.call_lags) row.push_back(resolve(calls, proxies.future_calls, k, false));
    return row;
}

ForecastDistribution forecast_mlr(const MlrModel& model, const DailySeries& cases,
                                  const DailySeries& calls, const PredictorProxies& proxies,
                                  int H, int M, std::uint64_t seed, Innovation innovation) {
    if (H < 1 || M < 1) throw DataError("forecast_mlr: H and M must be >= 1");
    // log-scale means are the same for every path (point proxies)
    std::vector<double> mu(static_cast<std::size_t>(H));
    for (int h = 1; h <= H; ++h) {
        const std::vector<double> row = assemble_future_row(h, cases, calls, proxies, model.spec);
        if (static_cast<Eigen::Index>(row.size()) != model.coef.size())
            throw DataError("forecast_mlr: row length does not match fitted coefficients");
        double m = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) m += row[i] * model.coef[static_cast<Eigen::Index>(i)];
        mu[static_cast<std::size_t>(h - 1)] = m;
    }

    Rng rng(seed);
    std::vector<std::vector<double>> paths(static_cast<std::size_t>(M));
    for (auto& path : paths) {
        path.resize(static_cast<std::size_t>(H));
        for (int h = 0; h < H; ++h) {
            double eps;
            if (innovation == Innovation::Bootstrap && !model.residuals.empty())
                eps = model.residuals[rng.index(model.residuals.size())];
            else
                eps = model.residual_sd * rng.normal();
            path[static_cast<std::size_t>(h)] = inverse_shifted_log(mu[static_cast<std::size_t>(h)] + eps);
        }
    }
    return ForecastDistribution(cases.end_date(), std::move(paths));
}

ForecastDistribution forecast_mlr(const MlrModel& model, const DailySeries& cases,
                                  const DailySeries& calls, const PredictorPlan& plan, int H,
                                  int M, std::uint64_t seed, Innovation innovation) {
    const bool needs_calls = !model.spec.call_lags.empty();
    PredictorProxies px;
    const EtsModel cases_ets = fit_ets_auto(cases, plan.ets_options);
    const NaiveModel cases_naive = fit_naive(cases);
    if (needs_calls) {
        const ArimaModel calls_model = fit_arima_auto(calls, false, plan.calls_search);
        px = blend_proxies(calls_model, cases_ets, cases_naive, plan.naive_cutoff, H);
    } else {
        const std::vector<double> ets_fc = point_forecast(cases_ets, H);
        const std::vector<double> naive_fc = point_forecast(cases_naive, H);
        px.future_calls.assign(static_cast<std::size_t>(H), 0.0);
        px.future_cases.resize(static_cast<std::size_t>(H));
        for (int h = 1; h <= H; ++h)
            px.future_cases[static_cast<std::size_t>(h - 1)] =
                (h < plan.naive_cutoff) ? naive_fc[static_cast<std::size_t>(h - 1)]
                                        : std::max(ets_fc[static_cast<std::size_t>(h - 1)], 0.0);
    }
    return forecast_mlr(model, cases, calls, px, H, M, seed, innovation);
}

namespace {

struct Term {
    enum Kind { Trend, Weekend, ArLag, CallLag } kind;
    int lag = 0;
    std::string name() const {
        switch (kind) {
            case Trend: return "trend";
            case Weekend: return "weekend";
            case ArLag: return "cases_lag" + std::to_string(lag);
            default: return "calls_lag" + std::to_string(lag);
        }
    }
};

std::vector<Term> enumerate_terms(const FeatureSpec& candidates) {
    std::vector<Term> terms;
    if (candidates.trend) terms.push_back({Term::Trend});
    if (candidates.weekend) terms.push_back({Term::Weekend});
    for (int k : candidates.ar_lags) terms.push_back({Term::ArLag, k});
    for (int k : candidates.call_lags) terms.push_back({Term::CallLag, k});
    return terms;
}

FeatureSpec with_term(FeatureSpec spec, const Term& t) {
    switch (t.kind) {
        case Term::Trend: spec.trend = true; break;
        case Term::Weekend: spec.weekend = true; break;
        case Term::ArLag:
            spec.ar_lags.insert(std::upper_bound(spec.ar_lags.begin(), spec.ar_lags.end(), t.lag), t.lag);
            break;
        case Term::CallLag:
            spec.call_lags.insert(std::upper_bound(spec.call_lags.begin(), spec.call_lags.end(), t.lag), t.lag);
            break;
    }
    return spec;
}

bool term_selected(const FeatureSpec& spec, const Term& t) {
    switch (t.kind) {
        case Term::Trend: return spec.trend;
        case Term::Weekend: return spec.weekend;
        case Term::ArLag: return std::binary_search(spec.ar_lags.begin(), spec.ar_lags.end(), t.lag);
        default: return std::binary_search(spec.call_lags.begin(), spec.call_lags.end(), t.lag);
    }
}

}  // namespace

StepwiseResult stepwise_select(const DailySeries& cases, const DailySeries& calls,
                               const FeatureSpec& candidates, const StepwiseOptions& opt) {
    candidates.validate();
    if (!candidates.intercept) throw DataError("stepwise: candidate set must include the intercept");
    const std::size_t n = cases.size();
    const std::size_t val_len =
        static_cast<std::size_t>(std::floor(opt.validation_fraction * static_cast<double>(n)));
    if (val_len < 1 || val_len >= n) throw DataError("stepwise: no usable validation slice");

    // origins o: fit on [0..o], score forecasts into (o, o+H] intersected
    // with the series
    std::vector<std::size_t> origins;
    for (std::size_t o = n - val_len - 1; o + 1 < n; o += static_cast<std::size_t>(opt.stride))
        origins.push_back(o);
    if (origins.empty()) throw DataError("stepwise: no valid forecast origin");

    // Predictor proxies do not depend on the candidate spec; fit them once
    // per origin.
    std::vector<PredictorProxies> proxies(origins.size());
    parallel_for(origins.size(), opt.parallel, [&](std::size_t i) {
        const std::size_t o = origins[i];
        PredictorPlan plan = opt.plan;
        plan.calls_search.parallel = false;
        plan.ets_options.parallel = false;
        proxies[i] = forecast_predictors(cases.prefix(o + 1), calls.prefix(o + 1), plan,
                                         opt.horizon);
    });

    auto evaluate = [&](const FeatureSpec& spec) {
        double sq_sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < origins.size(); ++i) {
            const std::size_t o = origins[i];
            const DailySeries hist_cases = cases.prefix(o + 1);
            const DailySeries hist_calls = calls.prefix(o + 1);
            const MlrModel m = fit_mlr(hist_cases, hist_calls, spec);
            const ForecastDistribution fc =
                forecast_mlr(m, hist_cases, hist_calls, proxies[i], opt.horizon, opt.num_paths,
                             mix_seed(opt.seed, o));
            const int max_h = std::min<int>(opt.horizon, static_cast<int>(n - 1 - o));
            for (int h = 1; h <= max_h; ++h) {
                const double e = fc.mean(h) - cases[o + static_cast<std::size_t>(h)];
                sq_sum += e * e;
                ++count;
            }
        }
        if (count == 0) throw DataError("stepwise: no validation targets");
        return std::sqrt(sq_sum / static_cast<double>(count));
    };

    StepwiseResult result;
    result.selected.intercept = true;
    double current = evaluate(result.selected);
    result.trace.push_back({"intercept", current});  // round-0 baseline
    const std::vector<Term> terms = enumerate_terms(candidates);

    for (;;) {
        std::vector<double> scores(terms.size(), std::numeric_limits<double>::infinity());
        parallel_for(terms.size(), opt.parallel, [&](std::size_t i) {
            if (term_selected(result.selected, terms[i])) return;
            try {
                scores[i] = evaluate(with_term(result.selected, terms[i]));
            } catch (const std::exception&) {
                // singular or infeasible candidate this round; skip
            }
        });
        std::size_t best = terms.size();
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (best == terms.size() || scores[i] < scores[best]) best = i;
        if (best == terms.size() || !(scores[best] < current - opt.tolerance)) break;
        result.selected = with_term(result.selected, terms[best]);
        current = scores[best];
        result.trace.push_back({terms[best].name(), current});
    }
    return result;
}

}  // namespace callcast
