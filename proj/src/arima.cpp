#include "callcast/arima.hpp"

#include <Eigen/Dense>
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

// Largest modulus among roots of z^p - c1 z^{p-1} - ... - cp, i.e. the
// inverse characteristic roots of 1 - c1 B - ... - cp B^p. Stationarity /
// invertibility requires this to stay below 1.
double max_inverse_root(const std::vector<double>& c) {
    const int p = static_cast<int>(c.size());
    if (p == 0) return 0.0;
    if (p == 1) return std::abs(c[0]);
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(p, p);
    for (int j = 0; j < p; ++j) comp(0, j) = c[static_cast<std::size_t>(j)];
    for (int i = 1; i < p; ++i) comp(i, i - 1) = 1.0;
    const auto eig = comp.eigenvalues();
    double m = 0.0;
    for (int i = 0; i < p; ++i) m = std::max(m, std::abs(eig[i]));
    return m;
}

std::vector<double> negate(std::vector<double> v) {
    for (double& x : v) x = -x;
    return v;
}

// (1 - sum f_i B^i)(1 - sum g_j B^{7j}) expanded; returns a with
// poly = 1 - sum a_k B^k. For MA polynomials pass negated coefficients.
std::vector<double> expand_seasonal(const std::vector<double>& f, const std::vector<double>& g) {
    const int p = static_cast<int>(f.size());
    const int P = static_cast<int>(g.size());
    std::vector<double> a(static_cast<std::size_t>(p + kArimaSeasonPeriod * P), 0.0);
    for (int i = 1; i <= p; ++i) a[static_cast<std::size_t>(i - 1)] += f[static_cast<std::size_t>(i - 1)];
    for (int j = 1; j <= P; ++j) {
        a[static_cast<std::size_t>(kArimaSeasonPeriod * j - 1)] += g[static_cast<std::size_t>(j - 1)];
        for (int i = 1; i <= p; ++i)
            a[static_cast<std::size_t>(i + kArimaSeasonPeriod * j - 1)] -=
                f[static_cast<std::size_t>(i - 1)] * g[static_cast<std::size_t>(j - 1)];
    }
    return a;
}

struct Decoded {
    double c = 0.0;
    std::vector<double> ar, ma, sar, sma;
};

Decoded decode(const ArimaOrder& o, bool has_c, const std::vector<double>& u) {
    Decoded dec;
    std::size_t i = 0;
    if (has_c) dec.c = u[i++];
    dec.ar.assign(u.begin() + i, u.begin() + i + o.p);
    i += static_cast<std::size_t>(o.p);
    dec.ma.assign(u.begin() + i, u.begin() + i + o.q);
    i += static_cast<std::size_t>(o.q);
    dec.sar.assign(u.begin() + i, u.begin() + i + o.P);
    i += static_cast<std::size_t>(o.P);
    dec.sma.assign(u.begin() + i, u.begin() + i + o.Q);
    return dec;
}

// Penalized distance outside the admissible region; 0 when admissible.
double root_violation(const Decoded& dec) {
    const double margin = 0.995;
    double v = 0.0;
    v += std::max(0.0, max_inverse_root(dec.ar) - margin);
    v += std::max(0.0, max_inverse_root(dec.sar) - margin);
    v += std::max(0.0, max_inverse_root(negate(dec.ma)) - margin);
    v += std::max(0.0, max_inverse_root(negate(dec.sma)) - margin);
    return v;
}

// Conditional sum of squares; residuals (if given) are aligned with z and
// zero over the warm-up prefix.
double css_sse(const std::vector<double>& z, double c, const std::vector<double>& a,
               const std::vector<double>& b, std::vector<double>* residuals) {
    const int n = static_cast<int>(z.size());
    const int pa = static_cast<int>(a.size());
    const int qb = static_cast<int>(b.size());
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    double sse = 0.0;
    for (int t = pa; t < n; ++t) {
        double pred = c;
        for (int i = 1; i <= pa; ++i) pred += a[static_cast<std::size_t>(i - 1)] * z[static_cast<std::size_t>(t - i)];
        for (int j = 1; j <= qb; ++j)
            if (t - j >= 0) pred += b[static_cast<std::size_t>(j - 1)] * e[static_cast<std::size_t>(t - j)];
        const double et = z[static_cast<std::size_t>(t)] - pred;
        e[static_cast<std::size_t>(t)] = et;
        sse += et * et;
    }
    if (residuals) *residuals = std::move(e);
    return sse;
}

struct Differenced {
    std::vector<int> lags;
    std::vector<std::vector<double>> stages;  // series *before* each diff
    std::vector<double> z;
};

Differenced difference(const std::vector<double>& y, int d, int D) {
    Differenced out;
    std::vector<double> cur = y;
    auto apply = [&](int lag) {
        out.lags.push_back(lag);
        out.stages.push_back(cur);
        std::vector<double> next(cur.size() - static_cast<std::size_t>(lag));
        for (std::size_t t = 0; t < next.size(); ++t)
            next[t] = cur[t + static_cast<std::size_t>(lag)] - cur[t];
        cur = std::move(next);
    };
    for (int j = 0; j < D; ++j) apply(kArimaSeasonPeriod);
    for (int j = 0; j < d; ++j) apply(1);
    out.z = std::move(cur);
    return out;
}

std::vector<double> transformed(const DailySeries& y, bool use_log) {
    std::vector<double> v = y.values();
    if (use_log)
        for (double& x : v) x = shifted_log(x);
    return v;
}

// `screen` relaxes the optimizer (single start, looser tolerance) for grid
// pre-screening; the winning order is always refit at full settings.
ArimaModel fit_order(const DailySeries& y, const ArimaOrder& o, bool use_log,
                     bool screen = false) {
    const std::vector<double> yt = transformed(y, use_log);
    const int need = o.d + kArimaSeasonPeriod * o.D;
    if (static_cast<int>(yt.size()) <= need + 1)
        throw FitError("arima: series too short for requested differencing");
    Differenced diff = difference(yt, o.d, o.D);
    const std::vector<double>& z = diff.z;

    const bool has_c = (o.d + o.D == 0);
    const int pa = o.p + kArimaSeasonPeriod * o.P;
    const int qb = o.q + kArimaSeasonPeriod * o.Q;
    const int k = o.p + o.q + o.P + o.Q + (has_c ? 1 : 0);
    const int n_eff = static_cast<int>(z.size()) - pa;
    if (n_eff < k + 8 || static_cast<int>(z.size()) < qb + k + 8)
        throw FitError("arima: not enough observations after warm-up");

    Objective obj = [&](const std::vector<double>& u) {
        const Decoded dec = decode(o, has_c, u);
        const double viol = root_violation(dec);
        if (viol > 0.0) return 1e8 * (1.0 + viol);
        const auto a = expand_seasonal(dec.ar, dec.sar);
        const auto b = negate(expand_seasonal(negate(dec.ma), negate(dec.sma)));
        const double sse = css_sse(z, dec.c, a, b, nullptr);
        if (!std::isfinite(sse)) return 1e12;
        return n_eff * std::log(std::max(sse / n_eff, 1e-300));
    };

    const double zmean = std::accumulate(z.begin(), z.end(), 0.0) / static_cast<double>(z.size());
    const int dim = k;
    std::vector<std::vector<double>> starts;
    for (double coef0 : screen ? std::vector<double>{0.0} : std::vector<double>{0.0, 0.1, -0.1}) {
        std::vector<double> u(static_cast<std::size_t>(dim), coef0);
        if (has_c) u[0] = zmean;
        starts.push_back(std::move(u));
    }
    SimplexOptions opt;
    if (screen) {
        opt.tolerance = 1e-6;
        opt.max_evals = 400;
    }
    const SimplexResult best = minimize_multistart(obj, starts, opt);
    const Decoded dec = decode(o, has_c, best.x);
    if (root_violation(dec) > 0.0)
        throw FitError("arima: estimates are non-stationary or non-invertible");

    ArimaModel m;
    m.order = o;
    m.use_log = use_log;
    m.ar = dec.ar;
    m.ma = dec.ma;
    m.sar = dec.sar;
    m.sma = dec.sma;
    m.intercept = dec.c;
    const auto a = expand_seasonal(dec.ar, dec.sar);
    const auto b = negate(expand_seasonal(negate(dec.ma), negate(dec.sma)));
    const double sse = css_sse(z, dec.c, a, b, &m.residuals);
    m.residual_sd = std::sqrt(sse / std::max(n_eff - k, 1));
    m.aic = n_eff * std::log(std::max(sse / n_eff, 1e-300)) + 2.0 * (k + 1);
    m.z_hist = z;
    m.stage_lags = diff.lags;
    m.stage_values = diff.stages;
    m.n_train = y.size();
    m.train_end = y.end_date();
    return m;
}

}  // namespace

std::vector<double> ArimaModel::expanded_ar() const { return expand_seasonal(ar, sar); }

std::vector<double> ArimaModel::expanded_ma() const {
    return negate(expand_seasonal(negate(ma), negate(sma)));
}

ArimaModel fit_arima(const DailySeries& y, const ArimaOrder& order, bool use_log) {
    if (order.p < 0 || order.p > 5 || order.q < 0 || order.q > 5 || order.d < 0 || order.d > 2 ||
        order.P < 0 || order.P > 2 || order.Q < 0 || order.Q > 2 || order.D < 0 || order.D > 1)
        throw DataError("arima: order outside supported bounds");
    return fit_order(y, order, use_log);
}

ArimaModel fit_arima_auto(const DailySeries& y, bool use_log, const ArimaSearch& search) {
    if (y.size() < 30) throw FitError("arima: need at least 30 observations");
    if (search.max_p > 5 || search.max_q > 5 || search.max_d > 2 || search.max_P > 2 ||
        search.max_Q > 2 || search.max_D > 1 || search.max_p < 0 || search.max_q < 0 ||
        search.max_d < 0 || search.max_P < 0 || search.max_Q < 0 || search.max_D < 0)
        throw DataError("arima: search caps outside supported bounds");

    std::vector<ArimaOrder> grid;
    for (int d = 0; d <= search.max_d; ++d)
        for (int D = 0; D <= search.max_D; ++D)
            for (int p = 0; p <= search.max_p; ++p)
                for (int q = 0; q <= search.max_q; ++q)
                    for (int P = 0; P <= search.max_P; ++P)
                        for (int Q = 0; Q <= search.max_Q; ++Q)
                            grid.push_back({p, d, q, P, D, Q});

    // Cheap single-start screen of every order, then a full-settings refit
    // of the candidates in screened-AIC rank until one succeeds.
    std::vector<double> aic(grid.size(), std::numeric_limits<double>::infinity());
    parallel_for(grid.size(), search.parallel, [&](std::size_t i) {
        try {
            aic[i] = fit_order(y, grid[i], use_log, /*screen=*/true).aic;
        } catch (const FitError&) {
        }
    });

    std::vector<std::size_t> rank(grid.size());
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(),
                     [&](std::size_t a, std::size_t b) { return aic[a] < aic[b]; });
    for (std::size_t i : rank) {
        if (!std::isfinite(aic[i])) break;
        try {
            return fit_order(y, grid[i], use_log);
        } catch (const FitError&) {
        }
    }
    throw FitError("arima: no admissible candidate in the search grid");
}

ArimaModel refit_state(const ArimaModel& m, const DailySeries& y) {
    ArimaModel out = m;
    const std::vector<double> yt = transformed(y, m.use_log);
    Differenced diff = difference(yt, m.order.d, m.order.D);
    const double sse = css_sse(diff.z, m.intercept, m.expanded_ar(), m.expanded_ma(), &out.residuals);
    const int pa = m.order.p + kArimaSeasonPeriod * m.order.P;
    const int k = m.order.p + m.order.q + m.order.P + m.order.Q + (m.order.d + m.order.D == 0 ? 1 : 0);
    const int n_eff = static_cast<int>(diff.z.size()) - pa;
    if (n_eff < 1) throw FitError("arima: series too short to refresh state");
    out.residual_sd = std::sqrt(sse / std::max(n_eff - k, 1));
    out.z_hist = std::move(diff.z);
    out.stage_lags = std::move(diff.lags);
    out.stage_values = std::move(diff.stages);
    out.n_train = y.size();
    out.train_end = y.end_date();
    return out;
}

namespace {

// Shared forward iteration for point forecasts and simulated paths.
// innovation(h) supplies epsilon_{t+h+1}.
template <class InnovationFn>
std::vector<double> iterate_forward(const ArimaModel& m, int H, InnovationFn&& innovation) {
    const auto a = m.expanded_ar();
    const auto b = m.expanded_ma();
    const int pa = static_cast<int>(a.size());
    const int qb = static_cast<int>(b.size());

    // local tails, extended as we iterate
    std::vector<double> zt = m.z_hist;
    std::vector<double> et = m.residuals;
    std::vector<std::vector<double>> stages = m.stage_values;

    std::vector<double> out(static_cast<std::size_t>(H));
    for (int h = 0; h < H; ++h) {
        const double eps = innovation(h);
        double znew = m.intercept + eps;
        const std::size_t t = zt.size();
        for (int i = 1; i <= pa; ++i) znew += a[static_cast<std::size_t>(i - 1)] * zt[t - static_cast<std::size_t>(i)];
        for (int j = 1; j <= qb; ++j) znew += b[static_cast<std::size_t>(j - 1)] * et[t - static_cast<std::size_t>(j)];
        zt.push_back(znew);
        et.push_back(eps);

        // undo differencing, innermost stage first
        double val = znew;
        for (std::size_t s = stages.size(); s-- > 0;) {
            auto& stage = stages[s];
            val += stage[stage.size() - static_cast<std::size_t>(m.stage_lags[s])];
            stage.push_back(val);
        }
        const double count = m.use_log ? inverse_shifted_log(val) : std::max(val, 0.0);
        out[static_cast<std::size_t>(h)] = count;
    }
    return out;
}

}  // namespace

std::vector<double> point_forecast(const ArimaModel& m, int H) {
    return iterate_forward(m, H, [](int) { return 0.0; });
}

ForecastDistribution forecast_arima(const ArimaModel& m, int H, int M, std::uint64_t seed,
                                    Innovation innovation) {
    if (H < 1 || M < 1) throw DataError("forecast_arima: H and M must be >= 1");
    Rng rng(seed);
    const int pa = static_cast<int>(m.expanded_ar().size());
    std::vector<double> pool(m.residuals.begin() + std::min<std::size_t>(m.residuals.size(), static_cast<std::size_t>(pa)),
                             m.residuals.end());
    std::vector<std::vector<double>> paths(static_cast<std::size_t>(M));
    for (auto& path : paths) {
        path = iterate_forward(m, H, [&](int) {
            if (innovation == Innovation::Bootstrap && !pool.empty()) return pool[rng.index(pool.size())];
            return m.residual_sd * rng.normal();
        });
    }
    return ForecastDistribution(m.train_end, std::move(paths));
}

}  // namespace callcast
