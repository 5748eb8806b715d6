// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned inline next to each check.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "callcast/arima.hpp"
#include "callcast/backtest.hpp"
#include "callcast/ets.hpp"
#include "callcast/exante.hpp"
#include "callcast/metrics.hpp"
#include "callcast/naive.hpp"
#include "callcast/ols.hpp"
#include "callcast/report_io.hpp"
#include "callcast/series.hpp"

namespace fs = std::filesystem;
using namespace callcast;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int criterion, bool pass, const char* what, Clock::time_point t0) {
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("criterion %2d: %s  %-58s (%.1fs)\n", criterion, pass ? "PASS" : "FAIL", what,
                secs);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

DailySeries series_of(std::vector<double> v, const char* name) {
    return DailySeries(make_date(2020, 3, 18), std::move(v), name);
}

// --------------------------------------------------------------- metrics ---

bool criterion1() {
    bool ok = true;
    const double tol = 1e-12;  // pinned: exact hand-computed values
    ok &= std::abs(winkler(10, 20, 15, 0.05) - 10.0) < tol;
    ok &= std::abs(winkler(10, 20, 5, 0.05) - 210.0) < tol;
    ok &= std::abs(winkler(10, 20, 25, 0.05) - 210.0) < tol;
    ok &= std::abs(pinball(50, 10, 12) - 1.0) < tol;
    ok &= std::abs(pinball(90, 10, 12) - 1.8) < tol;
    ok &= std::abs(pinball(10, 10, 8) - 1.8) < tol;

    std::array<double, 99> at_y{};
    at_y.fill(7.0);
    ok &= percentile_score(at_y, 7.0) == 0.0;
    std::array<double, 99> offset{};
    offset.fill(13.0);  // y + 3
    ok &= std::abs(percentile_score(offset, 10.0) - 1.5) < tol;

    std::mt19937 gen(2024);
    std::normal_distribution<double> nd(50.0, 12.0);
    for (int rep = 0; rep < 1000; ++rep) {
        std::array<double, 99> q{};
        for (auto& v : q) v = nd(gen);
        std::sort(q.begin(), q.end());
        const double y = nd(gen);
        ok &= crps(q, y) == 2.0 * percentile_score(q, y);  // exact identity
    }
    return ok;
}

bool criterion2() {
    const double sigma = 1.0;
    auto qnorm = [](double p) {
        double x = 0.0;
        for (int it = 0; it < 60; ++it) {
            const double Phi = 0.5 * std::erfc(-x / std::sqrt(2.0));
            const double dens = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
            x -= (Phi - p) / dens;
        }
        return x;
    };
    std::array<double, 99> q{};
    for (int i = 1; i <= 99; ++i) q[static_cast<std::size_t>(i - 1)] = sigma * qnorm(i / 100.0);

    bool ok = true;
    for (double z : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0}) {
        const double Phi = 0.5 * std::erfc(-z / std::sqrt(2.0));
        const double dens = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
        const double analytic = sigma * (z * (2.0 * Phi - 1.0) + 2.0 * dens - 1.0 / std::sqrt(M_PI));
        const double est = crps(q, sigma * z);
        ok &= std::abs(est - analytic) / analytic < 0.02;  // pinned: 2% relative
    }
    return ok;
}

// ------------------------------------------------------------------- ols ---

std::vector<double> normal_equations(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const int k = static_cast<int>(X.cols());
    Eigen::MatrixXd A(k, k + 1);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) A(i, j) = X.col(i).dot(X.col(j));
        A(i, k) = X.col(i).dot(y);
    }
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(A(r, col)) > std::abs(A(piv, col))) piv = r;
        A.row(col).swap(A.row(piv));
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            A.row(r) -= (A(r, col) / A(col, col)) * A.row(col);
        }
    }
    std::vector<double> b(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) b[static_cast<std::size_t>(i)] = A(i, k) / A(i, i);
    return b;
}

bool criterion3() {
    bool ok = true;
    {
        DesignMatrix d;
        d.X.resize(30, 2);
        d.y.resize(30);
        for (int i = 0; i < 30; ++i) {
            d.X(i, 0) = 1.0;
            d.X(i, 1) = 0.3 * i;
            d.y(i) = 1.0 + 2.0 * d.X(i, 1);
        }
        d.columns = {"intercept", "x"};
        const OlsFit f = fit_ols(d);
        ok &= std::abs(f.coef(0) - 1.0) < 1e-8 && std::abs(f.coef(1) - 2.0) < 1e-8;
    }
    std::mt19937 gen(7);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        DesignMatrix d;
        d.X.resize(50, 5);
        d.y.resize(50);
        for (int i = 0; i < 50; ++i) {
            d.X(i, 0) = 1.0;
            for (int j = 1; j < 5; ++j) d.X(i, j) = nd(gen);
            d.y(i) = nd(gen);
        }
        d.columns = {"c0", "c1", "c2", "c3", "c4"};
        const OlsFit f = fit_ols(d);
        const auto oracle = normal_equations(d.X, d.y);
        for (int j = 0; j < 5; ++j)
            ok &= std::abs(f.coef(j) - oracle[static_cast<std::size_t>(j)]) < 1e-8;  // pinned
    }
    return ok;
}

// ------------------------------------------------------ parameter recovery ---

bool criterion4() {
    int ets_hits = 0;
    for (unsigned seed = 1; seed <= 10; ++seed) {
        std::mt19937 gen(seed);
        std::normal_distribution<double> nd(0.0, 2.0);
        std::vector<double> v(500);
        double level = 300.0;
        for (auto& x : v) {
            const double e = nd(gen);
            x = level + e;
            level += 0.3 * e;
        }
        const EtsModel m = fit_ets_auto(series_of(std::move(v), "y"));
        if (m.alpha > 0.2 && m.alpha < 0.4) ++ets_hits;
    }

    int arima_hits = 0;
    for (unsigned seed = 1; seed <= 10; ++seed) {
        std::mt19937 gen(1000 + seed);
        std::normal_distribution<double> nd(0.0, 1.0);
        std::vector<double> v(500);
        double x = 0.0;
        for (auto& w : v) {
            x = 0.7 * x + nd(gen);
            w = 100.0 + x;
        }
        const ArimaModel m = fit_arima_auto(series_of(std::move(v), "y"), false);
        if (m.order.p >= 1 && m.order.d == 0 && m.ar[0] > 0.6 && m.ar[0] < 0.8) ++arima_hits;
    }
    return ets_hits >= 8 && arima_hits >= 8;  // pinned: >= 8/10 seeds each
}

// ------------------------------------------------------ synthetic benchmark ---

struct Synthetic {
    DailySeries cases;
    DailySeries calls;
};

// 186 days: calls follow an ARIMA(1,1,0); log(cases+1) carries a linear
// trend, a small AR component, a lag-7 call effect, and a weekend dip.
Synthetic make_benchmark(unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    const int n = 186, lead = 7;

    std::vector<double> calls(static_cast<std::size_t>(n + lead));
    double level = 900.0, incr = 0.0;
    for (auto& v : calls) {
        incr = 0.6 * incr + 2.0 * nd(gen);
        level += incr;
        v = std::max(0.0, std::round(level));
    }

    const Date start = make_date(2020, 3, 18);
    std::vector<double> cases(static_cast<std::size_t>(n));
    double u = 0.0;
    for (int t = 0; t < n; ++t) {
        u = 0.6 * u + 0.02 * nd(gen);  // small AR structure
        const bool wk = is_weekend(start + std::chrono::days(t));
        const double lc = 1.8 + 0.004 * t + u + 0.003 * calls[static_cast<std::size_t>(t)] +
                          (wk ? -0.25 : 0.0) + 0.05 * nd(gen);
        cases[static_cast<std::size_t>(t)] = std::round(inverse_shifted_log(lc));
    }
    return {series_of(std::move(cases), "cases"),
            DailySeries(start, std::vector<double>(calls.begin() + lead, calls.end()), "calls")};
}

BacktestReport run_benchmark(unsigned seed) {
    const Synthetic s = make_benchmark(seed);
    BacktestPlan plan;  // defaults: 0.7 split, H=21, stride 1, all four models
    return run_backtest(s.cases, s.calls, plan);
}

bool mlr_t_wins(const BacktestReport& r) {
    for (const char* metric : {"RMSE", "Winkler", "CRPS"}) {
        const double t = r.overall.at("MLR_T").at(metric);
        for (const char* rival : {"MLR_W", "ets", "arima"})
            if (!(t < r.overall.at(rival).at(metric))) return false;
    }
    return true;
}

BacktestReport g_seed1_report;  // reused by criteria 9 and 10

bool criterion8() {
    int wins = 0;
    for (unsigned seed = 1; seed <= 10; ++seed) {
        const BacktestReport r = run_benchmark(seed);
        if (seed == 1) g_seed1_report = r;
        if (mlr_t_wins(r)) ++wins;
    }
    return wins >= 8;  // pinned: >= 8/10 seeds
}

// ---------------------------------------------------------- ex-ante hygiene ---

// Poisoning values after index j must leave every forecast whose origin
// precedes j bit-identical.
bool criterion5() {
    const Synthetic base = make_benchmark(99);
    BacktestPlan plan;
    plan.num_paths = 400;
    const BacktestReport ref = run_backtest(base.cases, base.calls, plan);

    const std::size_t n = base.cases.size();
    const std::size_t train_len = plan.split.train_len(n);
    bool ok = true;
    for (const std::size_t poison_at : {train_len, (train_len + n) / 2, n - 1}) {
        std::vector<double> cv = base.cases.values();
        std::vector<double> kv = base.calls.values();
        for (std::size_t i = poison_at; i < n; ++i) {
            cv[i] = 9e5 + static_cast<double>(i);  // sentinel-scale values
            kv[i] = 8e5 + static_cast<double>(i);
        }
        const BacktestReport alt =
            run_backtest(DailySeries(base.cases.start_date(), cv, "cases"),
                         DailySeries(base.calls.start_date(), kv, "calls"), plan);
        std::map<std::tuple<std::string, std::size_t, int>, const ScoreRecord*> by_key;
        for (const ScoreRecord& b : alt.records) by_key[{b.model, b.origin, b.h}] = &b;
        for (const ScoreRecord& a : ref.records) {
            if (a.origin >= poison_at) continue;  // training window touched
            const auto it = by_key.find({a.model, a.origin, a.h});
            if (it == by_key.end()) {
                ok = false;
                continue;
            }
            const ScoreRecord& b = *it->second;
            ok &= a.mean_fc == b.mean_fc && a.median_fc == b.median_fc;
            ok &= a.lo95 == b.lo95 && a.hi95 == b.hi95;
            for (int q = 0; q < 99; ++q)
                ok &= a.quantiles[static_cast<std::size_t>(q)] ==
                      b.quantiles[static_cast<std::size_t>(q)];
        }
    }
    return ok;
}

// ------------------------------------------------------------ naive override ---

bool criterion6() {
    const Synthetic s = make_benchmark(5);
    PredictorPlan plan;  // naive_cutoff = 5
    const int H = 8;
    const PredictorProxies px = forecast_predictors(s.cases, s.calls, plan, H);

    const NaiveModel nv = fit_naive(s.cases);
    const auto naive_pf = point_forecast(nv, H);
    const EtsModel ets = fit_ets_auto(s.cases, plan.ets_options);
    const auto ets_pf = point_forecast(ets, H);

    bool ok = true;
    for (int h = 1; h <= H; ++h) {
        const double expect = h < 5 ? naive_pf[static_cast<std::size_t>(h - 1)]
                                    : ets_pf[static_cast<std::size_t>(h - 1)];
        ok &= px.future_cases[static_cast<std::size_t>(h - 1)] == std::max(0.0, expect);
    }
    return ok;
}

// -------------------------------------------------------- rolling enumeration ---

bool criterion7() {
    const auto toy = rolling_origins(7, 3, 2, 1);
    bool ok = toy.size() == 3;
    int h1 = 0, h2 = 0;
    for (const auto& o : toy) {
        if (o.max_h >= 1) ++h1;
        if (o.max_h >= 2) ++h2;
    }
    ok &= h1 == 3 && h2 == 2;

    std::mt19937 gen(3);
    std::uniform_int_distribution<int> train(5, 60), test(1, 30), horizon(1, 12);
    for (int rep = 0; rep < 200; ++rep) {
        const int tr = train(gen), te = test(gen), H = horizon(gen);
        const auto origins =
            rolling_origins(static_cast<std::size_t>(tr), static_cast<std::size_t>(te), H, 1);
        for (int h = 1; h <= H; ++h) {
            int count = 0;
            for (const auto& o : origins)
                if (o.max_h >= h) ++count;
            ok &= count == std::max(0, te - h + 1);
        }
    }
    return ok;
}

// -------------------------------------------------- positivity / monotonicity ---

bool criterion9() {
    bool ok = !g_seed1_report.records.empty();
    for (const auto& r : g_seed1_report.records) {
        ok &= r.mean_fc >= 0.0 && r.median_fc >= 0.0 && r.lo95 >= 0.0;
        ok &= r.quantiles[0] >= 0.0;
        for (int q = 1; q < 99; ++q)
            ok &= r.quantiles[static_cast<std::size_t>(q)] >=
                  r.quantiles[static_cast<std::size_t>(q - 1)];
    }
    return ok;
}

// ---------------------------------------------------------------- determinism ---

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion10() {
    const BacktestReport again = run_benchmark(1);
    const fs::path base = fs::temp_directory_path() / "callcast_acceptance";
    fs::remove_all(base);
    const fs::path d1 = base / "run1", d2 = base / "run2";
    emit_report(g_seed1_report, d1.string());
    emit_report(again, d2.string());

    bool ok = true;
    for (const char* name : {"overall.csv", "per_horizon.csv"}) {
        ok &= fs::exists(d1 / name) && fs::exists(d2 / name);
        if (ok) ok &= slurp(d1 / name) == slurp(d2 / name);
    }
    return ok;
}

template <class F>
void run(int criterion, const char* what, F&& f) {
    const auto t0 = Clock::now();
    bool pass = false;
    try {
        pass = f();
    } catch (const std::exception& e) {
        std::printf("criterion %2d: exception: %s\n", criterion, e.what());
    }
    report(criterion, pass, what, t0);
}

}  // namespace

int main() {
    run(1, "metric oracles match hand-computed values", criterion1);
    run(2, "crps agrees with the analytic Gaussian value", criterion2);
    run(3, "ols matches the normal-equations oracle", criterion3);
    run(4, "ets/arima recover simulation parameters", criterion4);
    run(5, "no post-origin data reaches any forecast", criterion5);
    run(6, "naive override below the cutoff horizon", criterion6);
    run(7, "rolling-origin enumeration", criterion7);
    run(8, "synthetic benchmark: MLR_T ranks first", criterion8);
    run(9, "forecasts nonnegative with monotone quantiles", criterion9);
    run(10, "same seed gives byte-identical csv output", criterion10);

    std::printf("%s (%d/10)\n", g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
