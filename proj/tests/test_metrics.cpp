#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "callcast/errors.hpp"
#include "callcast/metrics.hpp"

using namespace callcast;

TEST_CASE("winkler three-branch values") {
    CHECK(winkler(10, 20, 15, 0.05) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(winkler(10, 20, 5, 0.05) == doctest::Approx(210.0).epsilon(1e-12));
    CHECK(winkler(10, 20, 25, 0.05) == doctest::Approx(210.0).epsilon(1e-12));
    CHECK_THROWS_AS(winkler(20, 10, 15, 0.05), DataError);
    CHECK_THROWS_AS(winkler(10, 20, 15, 0.0), DataError);
    CHECK_THROWS_AS(winkler(10, 20, 15, 1.0), DataError);
}

TEST_CASE("winkler penalty branch is continuous at the endpoints") {
    const double eps = 1e-9;
    CHECK(winkler(10, 20, 10 - eps, 0.05) ==
          doctest::Approx(winkler(10, 20, 10, 0.05)).epsilon(1e-6));
    CHECK(winkler(10, 20, 20 + eps, 0.05) ==
          doctest::Approx(winkler(10, 20, 20, 0.05)).epsilon(1e-6));
}

TEST_CASE("widening a covering interval strictly increases the winkler score") {
    const double y = 15.0;
    double prev = winkler(10, 20, y, 0.05);
    for (double pad = 1.0; pad <= 5.0; pad += 1.0) {
        const double cur = winkler(10 - pad, 20 + pad, y, 0.05);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("pinball tabulated values") {
    CHECK(pinball(50, 10, 12) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pinball(90, 10, 12) == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(pinball(10, 10, 8) == doctest::Approx(1.8).epsilon(1e-12));
    CHECK_THROWS_AS(pinball(0, 10, 12), DataError);
    CHECK_THROWS_AS(pinball(100, 10, 12), DataError);
}

TEST_CASE("pinball is nonnegative and zero only at q == y") {
    std::mt19937 gen(4);
    std::uniform_real_distribution<double> ud(-50.0, 50.0);
    std::uniform_int_distribution<int> pick_i(1, 99);
    for (int rep = 0; rep < 500; ++rep) {
        const int i = pick_i(gen);
        const double q = ud(gen), y = ud(gen);
        const double loss = pinball(i, q, y);
        CHECK(loss >= 0.0);
        if (q != y) CHECK(loss > 0.0);
        CHECK(pinball(i, y, y) == 0.0);
    }
}

namespace {
std::array<double, 99> constant_grid(double v) {
    std::array<double, 99> q{};
    q.fill(v);
    return q;
}
}  // namespace

TEST_CASE("percentile score of a degenerate forecast at y is zero") {
    CHECK(percentile_score(constant_grid(7.0), 7.0) == 0.0);
}

TEST_CASE("percentile score of a constant offset is half the offset") {
    // mean_i (1 - i/100) * c over i=1..99 equals c/2 exactly
    for (double c : {0.5, 2.0, 13.0}) {
        CHECK(percentile_score(constant_grid(10.0 + c), 10.0) ==
              doctest::Approx(0.5 * c).epsilon(1e-12));
    }
}

TEST_CASE("percentile score matches brute-force summation") {
    std::mt19937 gen(9);
    std::normal_distribution<double> nd(20.0, 5.0);
    std::array<double, 99> q{};
    for (auto& v : q) v = nd(gen);
    std::sort(q.begin(), q.end());
    const double y = 21.3;
    double acc = 0.0;
    for (int i = 1; i <= 99; ++i) acc += pinball(i, q[static_cast<std::size_t>(i - 1)], y);
    CHECK(percentile_score(q, y) == doctest::Approx(acc / 99.0).epsilon(1e-14));
}

TEST_CASE("crps equals exactly twice the percentile score") {
    std::mt19937 gen(12);
    std::normal_distribution<double> nd(100.0, 30.0);
    for (int rep = 0; rep < 1000; ++rep) {
        std::array<double, 99> q{};
        for (auto& v : q) v = nd(gen);
        std::sort(q.begin(), q.end());
        const double y = nd(gen);
        CHECK(crps(q, y) == 2.0 * percentile_score(q, y));
    }
}

TEST_CASE("crps of a point mass at y is zero, at y+c is about |c|") {
    CHECK(crps(constant_grid(40.0), 40.0) == 0.0);
    for (double c : {-8.0, 3.0, 25.0}) {
        const double score = crps(constant_grid(40.0 + c), 40.0);
        CHECK(std::abs(score - std::abs(c)) / std::abs(c) < 0.015);
    }
}

TEST_CASE("crps against the analytic Gaussian value") {
    // CRPS of N(mu, sigma^2) at y: sigma * (z(2*Phi(z)-1) + 2*phi(z) - 1/sqrt(pi))
    const double sigma = 3.0;
    auto analytic = [&](double z) {
        const double Phi = 0.5 * std::erfc(-z / std::sqrt(2.0));
        const double phi = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
        return sigma * (z * (2.0 * Phi - 1.0) + 2.0 * phi - 1.0 / std::sqrt(M_PI));
    };
    // Gaussian quantile function via inverse erfc (Newton refinement)
    auto qnorm = [&](double p) {
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
    for (double z : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0}) {
        const double est = crps(q, sigma * z);
        const double truth = analytic(z);
        CHECK(std::abs(est - truth) / truth < 0.02);
    }
}
