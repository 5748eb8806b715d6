#ifndef CALLCAST_REPORT_IO_HPP
#define CALLCAST_REPORT_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "callcast/backtest.hpp"
#include "callcast/exante.hpp"

namespace callcast {

// Writes overall.csv, per_horizon.csv, per-metric-family SVG charts, a fan
// chart of the final-origin forecast, and failures.csv when fits failed.
void emit_report(const BacktestReport& report, const std::string& outdir);

// lag, value, +-2/sqrt(N) band per row.
void write_diagnostic_csv(const std::string& path, const std::vector<int>& lags,
                          const std::vector<double>& values, std::size_t n);

void write_stepwise_trace_csv(const std::string& path, const StepwiseResult& result);

}  // namespace callcast

#endif
