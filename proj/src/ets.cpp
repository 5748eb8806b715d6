#include "callcast/ets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "callcast/errors.hpp"
#include "callcast/optim.hpp"
#include "callcast/parallel.hpp"
#include "callcast/rng.hpp"

namespace callcast {

namespace {

constexpr double kAlphaLo = 1e-4;
constexpr double kAlphaHi = 0.9999;
constexpr double kPhiLo = 0.8;
constexpr double kPhiHi = 0.98;

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

struct EtsForm {
    EtsTrend trend;
    EtsSeason season;
    bool has_trend() const { return trend != EtsTrend::None; }
    bool damped() const { return trend == EtsTrend::AdditiveDamped; }
    bool seasonal() const { return season == EtsSeason::None ? false : true; }

    // u layout: [alpha, beta?, phi?, gamma?, l0, b0?, s0..s5?]
    int n_smoothing() const { return 1 + (has_trend() ? 1 : 0) + (damped() ? 1 : 0) + (seasonal() ? 1 : 0); }
    int n_states() const { return 1 + (has_trend() ? 1 : 0) + (seasonal() ? 6 : 0); }
    int dim() const { return n_smoothing() + n_states(); }
};

struct EtsParams {
    double alpha, beta, gamma, phi;
    double l0, b0;
    std::array<double, 7> s0;
};

EtsParams decode(const EtsForm& form, const std::vector<double>& u) {
    EtsParams p{};
    int i = 0;
    p.alpha = kAlphaLo + (kAlphaHi - kAlphaLo) * logistic(u[i++]);
    p.beta = form.has_trend() ? p.alpha * logistic(u[i++]) : 0.0;
    p.phi = form.damped() ? kPhiLo + (kPhiHi - kPhiLo) * logistic(u[i++]) : 1.0;
    p.gamma = form.seasonal() ? (1.0 - p.alpha) * logistic(u[i++]) : 0.0;
    p.l0 = u[i++];
    p.b0 = form.has_trend() ? u[i++] : 0.0;
    p.s0.fill(0.0);
    if (form.seasonal()) {
        double sum = 0.0;
        for (int j = 0; j < 6; ++j) {
            p.s0[j] = u[i++];
            sum += p.s0[j];
        }
        p.s0[6] = -sum;  // seasonal effects sum to zero
    }
    return p;
}

// One pass of the innovation recursion. Returns SSE; optionally captures
// residuals and end states.
double run_recursion(const EtsForm& form, const EtsParams& p, const std::vector<double>& y,
                     std::vector<double>* residuals, EtsModel* end_state) {
    double l = p.l0;
    double b = p.b0;
    std::array<double, 7> s = p.s0;
    double sse = 0.0;
    if (residuals) residuals->resize(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) {
        const double yhat = l + p.phi * b + (form.seasonal() ? s[0] : 0.0);
        const double e = y[t] - yhat;
        sse += e * e;
        if (residuals) (*residuals)[t] = e;
        l = l + p.phi * b + p.alpha * e;
        if (form.has_trend()) b = p.phi * b + p.beta * e;
        if (form.seasonal()) {
            const double s_new = s[0] + p.gamma * e;
            std::rotate(s.begin(), s.begin() + 1, s.end());
            s[6] = s_new;
        }
    }
    if (end_state) {
        end_state->level = l;
        end_state->slope = b;
        end_state->season_state = s;
    }
    return sse;
}

std::vector<double> heuristic_start(const EtsForm& form, const std::vector<double>& y,
                                    double alpha0, double ratio_beta, double ratio_gamma) {
    const std::size_t n = y.size();
    const std::size_t w = std::min<std::size_t>(7, n);
    double l0 = std::accumulate(y.begin(), y.begin() + w, 0.0) / static_cast<double>(w);
    double b0 = 0.0;
    if (n >= 14) {
        const double m2 = std::accumulate(y.begin() + 7, y.begin() + 14, 0.0) / 7.0;
        b0 = (m2 - l0) / 7.0;
    }
    std::vector<double> u;
    u.push_back(logit((alpha0 - kAlphaLo) / (kAlphaHi - kAlphaLo)));
    if (form.has_trend()) u.push_back(logit(ratio_beta));
    if (form.damped()) u.push_back(logit(0.8));  // phi ~ 0.95
    if (form.seasonal()) u.push_back(logit(ratio_gamma));
    u.push_back(l0);
    if (form.has_trend()) u.push_back(b0);
    if (form.seasonal()) {
        const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
        std::array<double, 7> cls{};
        std::array<int, 7> cnt{};
        for (std::size_t t = 0; t < n; ++t) {
            cls[t % 7] += y[t] - mean;
            ++cnt[t % 7];
        }
        double csum = 0.0;
        for (int j = 0; j < 7; ++j) {
            cls[j] = cnt[j] ? cls[j] / cnt[j] : 0.0;
            csum += cls[j];
        }
        for (int j = 0; j < 6; ++j) u.push_back(cls[j] - csum / 7.0);
    }
    return u;
}

int param_count(const EtsForm& form) { return form.dim() + 1; }  // + error variance

EtsModel fit_form(const EtsForm& form, const DailySeries& series) {
    const std::vector<double>& y = series.values();
    const double n = static_cast<double>(y.size());

    Objective obj = [&](const std::vector<double>& u) {
        const EtsParams p = decode(form, u);
        const double sse = run_recursion(form, p, y, nullptr, nullptr);
        if (!std::isfinite(sse)) return 1e12;
        return n * std::log(std::max(sse / n, 1e-300));
    };

    const std::vector<std::vector<double>> starts = {
        heuristic_start(form, y, 0.3, 0.1, 0.1),
        heuristic_start(form, y, 0.7, 0.3, 0.05),
        heuristic_start(form, y, 0.08, 0.02, 0.3),
    };
    const SimplexResult best = minimize_multistart(obj, starts);
    if (!std::isfinite(best.fx)) throw FitError("ets: optimizer failed to produce a finite likelihood");

    EtsModel m;
    m.trend = form.trend;
    m.season = form.season;
    const EtsParams p = decode(form, best.x);
    m.alpha = p.alpha;
    m.beta = p.beta;
    m.gamma = p.gamma;
    m.phi = p.phi;
    m.init_level = p.l0;
    m.init_slope = p.b0;
    m.init_season = p.s0;
    const double sse = run_recursion(form, p, y, &m.residuals, &m);
    const double k = static_cast<double>(param_count(form));
    const double dof = std::max(n - k, 1.0);
    m.residual_sd = std::sqrt(sse / dof);
    m.aicc = n * std::log(std::max(sse / n, 1e-300)) + 2.0 * k;
    if (n - k - 1.0 > 0.0) m.aicc += 2.0 * k * (k + 1.0) / (n - k - 1.0);
    m.n_train = y.size();
    m.train_end = series.end_date();
    return m;
}

}  // namespace

EtsModel fit_ets(const DailySeries& y, EtsTrend trend, EtsSeason season) {
    if (season != EtsSeason::None && y.size() < 3 * kEtsSeasonPeriod)
        throw FitError("ets: seasonal fit needs at least three weeks of data");
    if (y.size() < 10) throw FitError("ets: series too short");
    return fit_form(EtsForm{trend, season}, y);
}

EtsModel fit_ets_auto(const DailySeries& y, const EtsFitOptions& opt) {
    if (y.size() < 10) throw FitError("ets: series too short");

    // Degenerate series: every candidate has zero error, pick the flat model.
    const double mean = std::accumulate(y.values().begin(), y.values().end(), 0.0) /
                        static_cast<double>(y.size());
    bool constant = true;
    for (double v : y.values())
        if (v != y.values().front()) {
            constant = false;
            break;
        }
    if (constant) {
        EtsModel m;
        m.alpha = kAlphaLo;
        m.init_level = mean;
        m.level = mean;
        m.residual_sd = 0.0;
        m.aicc = -std::numeric_limits<double>::infinity();
        m.residuals.assign(y.size(), 0.0);
        m.n_train = y.size();
        m.train_end = y.end_date();
        return m;
    }

    std::vector<EtsForm> forms = {
        {EtsTrend::None, EtsSeason::None},
        {EtsTrend::Additive, EtsSeason::None},
        {EtsTrend::AdditiveDamped, EtsSeason::None},
    };
    if (y.size() >= 3 * kEtsSeasonPeriod) {
        forms.push_back({EtsTrend::None, EtsSeason::Additive});
        forms.push_back({EtsTrend::Additive, EtsSeason::Additive});
        forms.push_back({EtsTrend::AdditiveDamped, EtsSeason::Additive});
    }

    std::vector<EtsModel> fits(forms.size());
    std::vector<bool> ok(forms.size(), false);
    parallel_for(forms.size(), opt.parallel, [&](std::size_t i) {
        try {
            fits[i] = fit_form(forms[i], y);
            ok[i] = true;
        } catch (const FitError&) {
            ok[i] = false;
        }
    });

    int best = -1;
    for (std::size_t i = 0; i < fits.size(); ++i)
        if (ok[i] && (best < 0 || fits[i].aicc < fits[static_cast<std::size_t>(best)].aicc))
            best = static_cast<int>(i);
    if (best < 0) throw FitError("ets: no candidate converged");
    return fits[static_cast<std::size_t>(best)];
}

EtsModel refit_states(const EtsModel& m, const DailySeries& y) {
    EtsModel out = m;
    const EtsForm form{m.trend, m.season};
    EtsParams p{};
    p.alpha = m.alpha;
    p.beta = m.beta;
    p.gamma = m.gamma;
    p.phi = m.phi;
    p.l0 = m.init_level;
    p.b0 = m.init_slope;
    p.s0 = m.init_season;
    const double sse = run_recursion(form, p, y.values(), &out.residuals, &out);
    const double n = static_cast<double>(y.size());
    const double k = static_cast<double>(param_count(form));
    out.residual_sd = std::sqrt(sse / std::max(n - k, 1.0));
    out.n_train = y.size();
    out.train_end = y.end_date();
    return out;
}

std::vector<double> point_forecast(const EtsModel& m, int H) {
    std::vector<double> out(static_cast<std::size_t>(H));
    double phib = 0.0;  // (phi + phi^2 + ... + phi^h) * slope
    for (int h = 0; h < H; ++h) {
        if (m.trend != EtsTrend::None) phib += std::pow(m.phi, h + 1) * m.slope;
        const double seas =
            (m.season == EtsSeason::Additive) ? m.season_state[static_cast<std::size_t>(h % 7)] : 0.0;
        out[static_cast<std::size_t>(h)] = m.level + phib + seas;
    }
    return out;
}

ForecastDistribution forecast_ets(const EtsModel& m, int H, int M, std::uint64_t seed,
                                  Innovation innovation) {
    if (H < 1 || M < 1) throw DataError("forecast_ets: H and M must be >= 1");
    Rng rng(seed);
    const EtsForm form{m.trend, m.season};
    std::vector<std::vector<double>> paths(static_cast<std::size_t>(M));
    for (auto& path : paths) {
        path.resize(static_cast<std::size_t>(H));
        double l = m.level;
        double b = m.slope;
        std::array<double, 7> s = m.season_state;
        for (int h = 0; h < H; ++h) {
            double eps;
            if (innovation == Innovation::Bootstrap && !m.residuals.empty())
                eps = m.residuals[rng.index(m.residuals.size())];
            else
                eps = m.residual_sd * rng.normal();
            const double yhat = l + m.phi * b + (form.seasonal() ? s[0] : 0.0);
            const double y = yhat + eps;
            path[static_cast<std::size_t>(h)] = y > 0.0 ? y : 0.0;
            l = l + m.phi * b + m.alpha * eps;
            if (form.has_trend()) b = m.phi * b + m.beta * eps;
            if (form.seasonal()) {
                const double s_new = s[0] + m.gamma * eps;
                std::rotate(s.begin(), s.begin() + 1, s.end());
                s[6] = s_new;
            }
        }
    }
    return ForecastDistribution(m.train_end, std::move(paths));
}

}  // namespace callcast
