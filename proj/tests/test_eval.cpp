#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "callcast/backtest.hpp"
#include "callcast/series.hpp"

using namespace callcast;

namespace {

DailySeries series_of(std::vector<double> v, const char* name = "y") {
    return DailySeries(make_date(2020, 3, 18), std::move(v), name);
}

}  // namespace

TEST_CASE("rolling origins: train 7, test 3, H=2 enumerates by hand") {
    const auto origins = rolling_origins(7, 3, 2, 1);
    REQUIRE(origins.size() == 3);
    CHECK(origins[0].origin == 6);
    CHECK(origins[0].max_h == 2);
    CHECK(origins[1].origin == 7);
    CHECK(origins[1].max_h == 2);
    CHECK(origins[2].origin == 8);
    CHECK(origins[2].max_h == 1);
}

TEST_CASE("rolling origins: single-point test set") {
    const auto origins = rolling_origins(10, 1, 5, 1);
    REQUIRE(origins.size() == 1);
    CHECK(origins[0].origin == 9);
    CHECK(origins[0].max_h == 1);
}

TEST_CASE("rolling origins: stride equal to the test length gives one origin") {
    const auto origins = rolling_origins(10, 4, 3, 4);
    CHECK(origins.size() == 1);
}

TEST_CASE("rolling origins: count(h) = max(0, test_len - h + 1) at stride 1") {
    std::mt19937 gen(6);
    std::uniform_int_distribution<int> train(5, 40), test(1, 25), horizon(1, 10);
    for (int rep = 0; rep < 50; ++rep) {
        const int tr = train(gen), te = test(gen), H = horizon(gen);
        const auto origins = rolling_origins(static_cast<std::size_t>(tr),
                                             static_cast<std::size_t>(te), H, 1);
        for (int h = 1; h <= H; ++h) {
            int count = 0;
            for (const auto& o : origins)
                if (o.max_h >= h) ++count;
            CHECK(count == std::max(0, te - h + 1));
        }
    }
}

TEST_CASE("naive backtest on a constant series scores zero") {
    const auto cases = series_of(std::vector<double>(30, 25.0), "cases");
    const auto calls = series_of(std::vector<double>(30, 90.0), "calls");
    BacktestPlan plan;
    plan.models = {"naive"};
    plan.H = 3;
    plan.num_paths = 100;
    const BacktestReport rep = run_backtest(cases, calls, plan);
    REQUIRE(rep.failures.empty());
    for (const auto& metric : {"ME", "MAE", "RMSE", "Winkler", "Percentile", "CRPS"}) {
        for (const auto& hs : rep.per_horizon.at("naive").at(metric))
            if (hs.count > 0) CHECK(hs.value == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("backtest record counts follow the rolling-origin enumeration") {
    std::vector<double> v;
    for (int i = 0; i < 10; ++i) v.push_back(20.0 + (i % 3));
    const auto cases = series_of(v, "cases");
    const auto calls = series_of(v, "calls");
    BacktestPlan plan;
    plan.models = {"naive"};
    plan.H = 2;
    plan.num_paths = 50;
    const BacktestReport rep = run_backtest(cases, calls, plan);

    int h1 = 0, h2 = 0;
    for (const auto& r : rep.records) {
        if (r.h == 1) ++h1;
        if (r.h == 2) ++h2;
    }
    CHECK(h1 == 3);
    CHECK(h2 == 2);

    std::size_t from_counts = 0;
    for (const auto& hs : rep.per_horizon.at("naive").at("RMSE")) from_counts += hs.count;
    CHECK(from_counts == rep.records.size());
}

TEST_CASE("overall scores are the equal-weight mean of per-horizon means") {
    std::mt19937 gen(44);
    std::uniform_real_distribution<double> ud(50.0, 150.0);
    std::vector<double> cv(40), kv(40);
    for (auto& x : cv) x = std::round(ud(gen));
    for (auto& x : kv) x = std::round(ud(gen));
    const auto cases = series_of(std::move(cv), "cases");
    const auto calls = series_of(std::move(kv), "calls");
    BacktestPlan plan;
    plan.models = {"naive"};
    plan.H = 4;
    plan.num_paths = 100;
    const BacktestReport rep = run_backtest(cases, calls, plan);

    const auto& ph = rep.per_horizon.at("naive").at("MAE");
    double acc = 0.0;
    int nh = 0;
    for (const auto& hs : ph)
        if (hs.count > 0) {
            acc += hs.value;
            ++nh;
        }
    CHECK(rep.overall.at("naive").at("MAE") == doctest::Approx(acc / nh).epsilon(1e-12));
}

TEST_CASE("backtest is deterministic and parallel-invariant") {
    std::mt19937 gen(45);
    std::uniform_real_distribution<double> ud(100.0, 400.0);
    std::vector<double> cv(60), kv(60);
    for (auto& x : cv) x = std::round(ud(gen));
    for (auto& x : kv) x = std::round(ud(gen));
    const auto cases = series_of(std::move(cv), "cases");
    const auto calls = series_of(std::move(kv), "calls");

    BacktestPlan plan;
    plan.models = {"naive", "ets"};
    plan.H = 5;
    plan.num_paths = 200;

    const BacktestReport a = run_backtest(cases, calls, plan);
    BacktestPlan serial = plan;
    serial.parallel = false;
    const BacktestReport b = run_backtest(cases, calls, serial);

    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].model == b.records[i].model);
        CHECK(a.records[i].mean_fc == b.records[i].mean_fc);
        CHECK(a.records[i].median_fc == b.records[i].median_fc);
        CHECK(a.records[i].lo95 == b.records[i].lo95);
        for (int q = 0; q < 99; ++q)
            CHECK(a.records[i].quantiles[static_cast<std::size_t>(q)] ==
                  b.records[i].quantiles[static_cast<std::size_t>(q)]);
    }
}
