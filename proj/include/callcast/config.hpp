#ifndef CALLCAST_CONFIG_HPP
#define CALLCAST_CONFIG_HPP

#include <map>
#include <string>

#include "callcast/backtest.hpp"

namespace callcast {

// Flat key=value run configuration; defaults reproduce the standard setup
// (0.7 split, H=21, alpha=0.05, M=1000, naive_cutoff=5).
struct RunConfig {
    std::string data_path;
    std::string output_dir = "out";
    int max_lag = 30;  // diagnostics
    BacktestPlan plan;

    // stepwise selection knobs
    double validation_fraction = 0.2;
    int stepwise_stride = 7;
    int stepwise_paths = 200;
};

// Default output dir can come from the environment.
inline const char* kOutputDirEnvVar = "CALLCAST_OUTDIR";

RunConfig default_config();

// Parses `key = value` lines ('#' comments, blank lines ignored).
std::map<std::string, std::string> parse_kv_file(const std::string& path);

void apply_option(RunConfig& cfg, const std::string& key, const std::string& value);
RunConfig load_config(const std::string& path);

// FeatureSpec persistence in the same flat format.
FeatureSpec load_feature_spec(const std::string& path);
void save_feature_spec(const FeatureSpec& spec, const std::string& path);

}  // namespace callcast

#endif
