#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "callcast/errors.hpp"
#include "callcast/features.hpp"
#include "callcast/series.hpp"

using namespace callcast;

namespace {

DailySeries series_of(std::vector<double> v, const char* name = "x") {
    return DailySeries(make_date(2020, 3, 18), std::move(v), name);
}

// Stationary AR(1) around a large positive offset (shift leaves all
// correlations unchanged and keeps counts nonnegative).
DailySeries sim_ar1(double phi, std::size_t n, unsigned seed, double offset = 100.0) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> v(n);
    double x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x = phi * x + nd(gen);
        v[i] = offset + x;
    }
    return series_of(std::move(v));
}

}  // namespace

TEST_CASE("acf lag 0 is one") {
    const auto a = acf(series_of({3, 1, 4, 1, 5, 9, 2, 6}), 3);
    CHECK(a[0] == 1.0);
    for (double r : a) {
        CHECK(r <= 1.0 + 1e-12);
        CHECK(r >= -1.0 - 1e-12);
    }
}

TEST_CASE("acf of white noise stays inside the 2/sqrt(N) band") {
    const auto s = sim_ar1(0.0, 2000, 42);
    const auto a = acf(s, 10);
    for (int k = 1; k <= 10; ++k) CHECK(std::abs(a[static_cast<std::size_t>(k)]) < 2.0 / std::sqrt(2000.0));
}

TEST_CASE("acf of AR(1) phi=0.5 approaches the population value") {
    const auto s = sim_ar1(0.5, 5000, 7);
    const auto a = acf(s, 4);
    CHECK(a[1] > 0.45);
    CHECK(a[1] < 0.55);
    // geometric decay within +-0.05 of 0.5^k
    for (int k = 1; k <= 4; ++k)
        CHECK(std::abs(a[static_cast<std::size_t>(k)] - std::pow(0.5, k)) < 0.05);
}

TEST_CASE("acf rejects zero-variance series") {
    CHECK_THROWS_AS(acf(series_of({5, 5, 5, 5, 5}), 2), DataError);
    CHECK_THROWS_AS(pacf(series_of({5, 5, 5, 5, 5}), 2), DataError);
}

TEST_CASE("pacf lag 1 equals acf lag 1") {
    const auto s = sim_ar1(0.4, 800, 3);
    CHECK(pacf(s, 5)[1] == doctest::Approx(acf(s, 5)[1]).epsilon(1e-12));
}

TEST_CASE("pacf of AR(1) cuts off after lag 1") {
    const auto s = sim_ar1(0.5, 5000, 11);
    const auto p = pacf(s, 5);
    CHECK(std::abs(p[2]) < 0.05);
    for (int k = 1; k <= 5; ++k) {
        CHECK(p[static_cast<std::size_t>(k)] <= 1.0 + 1e-12);
        CHECK(p[static_cast<std::size_t>(k)] >= -1.0 - 1e-12);
    }
}

TEST_CASE("pacf of white noise stays inside the band") {
    const auto s = sim_ar1(0.0, 2000, 99);
    const auto p = pacf(s, 10);
    for (int k = 1; k <= 10; ++k) CHECK(std::abs(p[static_cast<std::size_t>(k)]) < 2.0 / std::sqrt(2000.0));
}

TEST_CASE("ccf of a series with itself is one at lag zero") {
    const auto s = sim_ar1(0.3, 300, 5);
    const auto c = ccf(s, s, 4);
    CHECK(c.at(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ccf locates an exact 7-day lead") {
    const std::size_t n = 200;
    std::mt19937 gen(17);
    std::uniform_real_distribution<double> ud(0.0, 50.0);
    std::vector<double> xv(n), yv(n);
    for (auto& v : xv) v = ud(gen);
    for (std::size_t t = 0; t < n; ++t) yv[t] = t >= 7 ? xv[t - 7] : ud(gen);
    const auto x = series_of(std::move(xv), "calls");
    const auto y = series_of(std::move(yv), "cases");

    const auto c = ccf(x, y, 10);
    CHECK(c.at(-7) == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& [k, v] : c)
        if (k != -7) CHECK(v < c.at(-7));
}

TEST_CASE("ccf of independent noise is small everywhere") {
    const auto x = sim_ar1(0.0, 2000, 21);
    const auto y = sim_ar1(0.0, 2000, 22);
    for (const auto& [k, v] : ccf(x, y, 8)) {
        (void)k;
        CHECK(std::abs(v) < 0.05);
    }
}

TEST_CASE("ccf symmetry: ccf_xy(k) == ccf_yx(-k)") {
    const auto x = sim_ar1(0.6, 400, 31);
    const auto y = sim_ar1(0.2, 400, 32);
    const auto cxy = ccf(x, y, 6);
    const auto cyx = ccf(y, x, 6);
    for (int k = -6; k <= 6; ++k) CHECK(cxy.at(k) == cyx.at(-k));
}

TEST_CASE("ccf rejects misaligned calendars") {
    const DailySeries x(make_date(2020, 1, 1), {1, 2, 3, 4}, "x");
    const DailySeries y(make_date(2020, 1, 2), {1, 2, 3, 4}, "y");
    CHECK_THROWS_AS(ccf(x, y, 1), DataError);
}

TEST_CASE("FeatureSpec validation enforces the candidate bounds") {
    FeatureSpec ok;
    ok.ar_lags = {1, 7, 21};
    ok.call_lags = {0, 5, 30};
    CHECK_NOTHROW(ok.validate());

    FeatureSpec bad_ar = ok;
    bad_ar.ar_lags = {22};
    CHECK_THROWS_AS(bad_ar.validate(), DataError);

    FeatureSpec bad_call = ok;
    bad_call.call_lags = {3};  // only 0 or 5..30
    CHECK_THROWS_AS(bad_call.validate(), DataError);
}

TEST_CASE("design matrix shape: N=40, max lag 5") {
    std::mt19937 gen(8);
    std::uniform_real_distribution<double> ud(1.0, 100.0);
    std::vector<double> cv(40), kv(40);
    for (auto& v : cv) v = std::round(ud(gen));
    for (auto& v : kv) v = std::round(ud(gen));
    const auto cases = series_of(std::move(cv), "cases");
    const auto calls = series_of(std::move(kv), "calls");

    FeatureSpec spec;
    spec.trend = true;
    spec.weekend = true;
    spec.ar_lags = {1};
    spec.call_lags = {5};
    const DesignMatrix d = build_design(cases, calls, spec);
    CHECK(d.X.rows() == 35);
    CHECK(d.X.cols() == 5);
    CHECK(d.y.size() == 35);
    CHECK(d.columns == std::vector<std::string>{"intercept", "trend", "weekend", "cases_lag1",
                                                "calls_lag5"});
}

TEST_CASE("intercept-only design is a column of ones over all N rows") {
    const auto cases = series_of({3, 1, 4, 1, 5}, "cases");
    const auto calls = series_of({2, 7, 1, 8, 2}, "calls");
    const DesignMatrix d = build_design(cases, calls, FeatureSpec{});
    CHECK(d.X.rows() == 5);
    CHECK(d.X.cols() == 1);
    for (int i = 0; i < 5; ++i) CHECK(d.X(i, 0) == 1.0);
}

TEST_CASE("design rows match direct indexing into the source series") {
    std::mt19937 gen(14);
    std::uniform_real_distribution<double> ud(0.0, 500.0);
    std::vector<double> cv(60), kv(60);
    for (auto& v : cv) v = std::round(ud(gen));
    for (auto& v : kv) v = std::round(ud(gen));
    const auto cases = series_of(cv, "cases");
    const auto calls = series_of(kv, "calls");

    FeatureSpec spec;
    spec.trend = true;
    spec.weekend = true;
    spec.ar_lags = {1, 7};
    spec.call_lags = {5, 12};
    const DesignMatrix d = build_design(cases, calls, spec);

    std::mt19937 pick(1);
    std::uniform_int_distribution<int> row(0, static_cast<int>(d.X.rows()) - 1);
    for (int rep = 0; rep < 5; ++rep) {
        const int r = row(pick);
        const std::size_t t = d.t_index[static_cast<std::size_t>(r)];
        CHECK(d.X(r, 0) == 1.0);
        CHECK(d.X(r, 1) == static_cast<double>(t));
        CHECK(d.X(r, 2) == (is_weekend(cases.date_at(t)) ? 1.0 : 0.0));
        CHECK(d.X(r, 3) == shifted_log(cv[t - 1]));
        CHECK(d.X(r, 4) == shifted_log(cv[t - 7]));
        CHECK(d.X(r, 5) == kv[t - 5]);
        CHECK(d.X(r, 6) == kv[t - 12]);
        CHECK(d.y(r) == shifted_log(cv[t]));
    }
}

TEST_CASE("build_design is a pure function") {
    const auto cases = sim_ar1(0.3, 80, 61);
    const auto calls = sim_ar1(0.3, 80, 62);
    FeatureSpec spec;
    spec.ar_lags = {1, 2};
    spec.call_lags = {5};
    const DesignMatrix a = build_design(cases, calls, spec);
    const DesignMatrix b = build_design(cases, calls, spec);
    CHECK((a.X - b.X).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.y - b.y).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("build_design rejects too-short input") {
    const auto cases = series_of({1, 2, 3}, "cases");
    const auto calls = series_of({1, 2, 3}, "calls");
    FeatureSpec spec;
    spec.ar_lags = {7};
    CHECK_THROWS_AS(build_design(cases, calls, spec), DataError);
}
