#include "callcast/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "callcast/errors.hpp"

namespace callcast {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw DataError("config: bad boolean '" + v + "'");
}

std::vector<int> parse_int_list(const std::string& v) {
    std::vector<int> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> parse_str_list(const std::string& v) {
    std::vector<std::string> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

RunConfig default_config() {
    RunConfig cfg;
    if (const char* env = std::getenv(kOutputDirEnvVar); env && *env) cfg.output_dir = env;
    return cfg;
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError(path + ": line " + std::to_string(line_no) + ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_option(RunConfig& cfg, const std::string& key, const std::string& value) {
    BacktestPlan& p = cfg.plan;
    if (key == "data") cfg.data_path = value;
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "max_lag") cfg.max_lag = std::stoi(value);
    else if (key == "train_fraction") p.split.train_fraction = std::stod(value);
    else if (key == "horizon") p.H = std::stoi(value);
    else if (key == "stride") p.step = std::stoi(value);
    else if (key == "re_estimate") p.re_estimate = parse_bool(value);
    else if (key == "models") p.models = parse_str_list(value);
    else if (key == "seed") p.seed = std::stoull(value);
    else if (key == "paths") p.num_paths = std::stoi(value);
    else if (key == "alpha") p.alpha = std::stod(value);
    else if (key == "innovation") {
        if (value == "gaussian") p.innovation = Innovation::Gaussian;
        else if (value == "bootstrap") p.innovation = Innovation::Bootstrap;
        else throw DataError("config: innovation must be gaussian or bootstrap");
    } else if (key == "parallel") p.parallel = parse_bool(value);
    else if (key == "naive_cutoff") p.predictor_plan.naive_cutoff = std::stoi(value);
    else if (key == "mlr_intercept") p.mlr_spec.intercept = parse_bool(value);
    else if (key == "mlr_trend") p.mlr_spec.trend = parse_bool(value);
    else if (key == "mlr_weekend") p.mlr_spec.weekend = parse_bool(value);
    else if (key == "mlr_ar_lags") p.mlr_spec.ar_lags = parse_int_list(value);
    else if (key == "mlr_call_lags") p.mlr_spec.call_lags = parse_int_list(value);
    else if (key == "arima_log_cases") p.arima_log_cases = parse_bool(value);
    else if (key == "arima_max_p") p.arima_search.max_p = std::stoi(value);
    else if (key == "arima_max_d") p.arima_search.max_d = std::stoi(value);
    else if (key == "arima_max_q") p.arima_search.max_q = std::stoi(value);
    else if (key == "arima_max_P") p.arima_search.max_P = std::stoi(value);
    else if (key == "arima_max_D") p.arima_search.max_D = std::stoi(value);
    else if (key == "arima_max_Q") p.arima_search.max_Q = std::stoi(value);
    else if (key == "validation_fraction") cfg.validation_fraction = std::stod(value);
    else if (key == "stepwise_stride") cfg.stepwise_stride = std::stoi(value);
    else if (key == "stepwise_paths") cfg.stepwise_paths = std::stoi(value);
    else throw DataError("config: unknown key '" + key + "'");
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg = default_config();
    for (const auto& [k, v] : parse_kv_file(path)) apply_option(cfg, k, v);
    // calls-proxy ARIMA shares the benchmark search caps
    cfg.plan.predictor_plan.calls_search = cfg.plan.arima_search;
    return cfg;
}

FeatureSpec load_feature_spec(const std::string& path) {
    FeatureSpec spec;
    spec.intercept = true;
    spec.trend = false;
    spec.weekend = false;
    for (const auto& [k, v] : parse_kv_file(path)) {
        if (k == "intercept") spec.intercept = parse_bool(v);
        else if (k == "trend") spec.trend = parse_bool(v);
        else if (k == "weekend") spec.weekend = parse_bool(v);
        else if (k == "ar_lags") spec.ar_lags = parse_int_list(v);
        else if (k == "call_lags") spec.call_lags = parse_int_list(v);
        else throw DataError("feature spec: unknown key '" + k + "'");
    }
    spec.validate();
    return spec;
}

void save_feature_spec(const FeatureSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    auto join = [](const std::vector<int>& v) {
        std::string s;
        for (int x : v) {
            if (!s.empty()) s += ',';
            s += std::to_string(x);
        }
        return s;
    };
    out << "intercept = " << (spec.intercept ? "true" : "false") << '\n'
        << "trend = " << (spec.trend ? "true" : "false") << '\n'
        << "weekend = " << (spec.weekend ? "true" : "false") << '\n'
        << "ar_lags = " << join(spec.ar_lags) << '\n'
        << "call_lags = " << join(spec.call_lags) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace callcast
