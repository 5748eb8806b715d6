// Times the rolling-origin backtest with the OpenMP kernels against the
// serial reference path and checks they agree.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "callcast/backtest.hpp"
#include "callcast/rng.hpp"

using namespace callcast;

namespace {

DailySeries synth(std::uint64_t seed, const char* name, double level) {
    Rng rng(seed);
    std::vector<double> v;
    double x = level;
    for (int t = 0; t < 186; ++t) {
        x = level + 0.85 * (x - level) + 8.0 * rng.normal();
        double season = 12.0 * std::sin(2.0 * 3.14159265358979 * t / 7.0);
        v.push_back(std::max(0.0, std::round(x + 0.4 * t + season)));
    }
    return DailySeries(make_date(2020, 3, 1), v, name);
}

double run_once(bool parallel, BacktestReport* out) {
    const DailySeries cases = synth(11, "cases", 120.0);
    const DailySeries calls = synth(29, "calls", 900.0);
    BacktestPlan plan;
    plan.parallel = parallel;
    plan.num_paths = 500;
    const auto t0 = std::chrono::steady_clock::now();
    BacktestReport rep = run_backtest(cases, calls, plan);
    const auto t1 = std::chrono::steady_clock::now();
    if (out) *out = std::move(rep);
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
    BacktestReport serial_rep, parallel_rep;
    const double t_serial = run_once(false, &serial_rep);
    const double t_parallel = run_once(true, &parallel_rep);

    bool identical = serial_rep.records.size() == parallel_rep.records.size();
    if (identical) {
        for (std::size_t i = 0; i < serial_rep.records.size(); ++i) {
            const auto& a = serial_rep.records[i];
            const auto& b = parallel_rep.records[i];
            if (a.model != b.model || a.origin != b.origin || a.h != b.h ||
                a.mean_fc != b.mean_fc || a.median_fc != b.median_fc) {
                identical = false;
                break;
            }
        }
    }

    std::printf("serial:   %8.2f s\n", t_serial);
    std::printf("parallel: %8.2f s  (speedup %.2fx)\n", t_parallel, t_serial / t_parallel);
    std::printf("results bit-identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
