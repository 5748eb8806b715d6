#include "callcast/model_io.hpp"

#include <fstream>
#include <json.hpp>

#include "callcast/errors.hpp"

namespace callcast {

namespace {

using nlohmann::json;

json vec_json(const std::vector<double>& v) { return json(v); }
std::vector<double> vec_from(const json& j) { return j.get<std::vector<double>>(); }

json meta_json(std::size_t n_train, Date train_end) {
    return json{{"n_train", n_train}, {"train_end", format_date(train_end)}};
}

void meta_from(const json& j, std::size_t& n_train, Date& train_end) {
    n_train = j.at("n_train").get<std::size_t>();
    train_end = parse_date(j.at("train_end").get<std::string>());
}

json to_json(const NaiveModel& m) {
    return json{{"kind", "naive"},
                {"parameters", {{"last", m.last}}},
                {"residual_sd", m.residual_sd},
                {"residuals", vec_json(m.residuals)},
                {"training_meta", meta_json(m.n_train, m.train_end)}};
}

json to_json(const MlrModel& m) {
    json spec{{"intercept", m.spec.intercept}, {"trend", m.spec.trend},
              {"weekend", m.spec.weekend},     {"ar_lags", m.spec.ar_lags},
              {"call_lags", m.spec.call_lags}};
    std::vector<double> coef(m.coef.data(), m.coef.data() + m.coef.size());
    json meta = meta_json(m.n_train, m.train_end);
    meta["aicc"] = m.aicc;
    meta["transform"] = "shifted_log";
    return json{{"kind", "mlr"},
                {"parameters", {{"spec", spec}, {"columns", m.columns}, {"coef", coef}}},
                {"residual_sd", m.residual_sd},
                {"residuals", vec_json(m.residuals)},
                {"training_meta", meta}};
}

json to_json(const EtsModel& m) {
    json meta = meta_json(m.n_train, m.train_end);
    meta["aicc"] = m.aicc;
    return json{{"kind", "ets"},
                {"parameters",
                 {{"trend", static_cast<int>(m.trend)},
                  {"season", static_cast<int>(m.season)},
                  {"alpha", m.alpha},
                  {"beta", m.beta},
                  {"gamma", m.gamma},
                  {"phi", m.phi},
                  {"init_level", m.init_level},
                  {"init_slope", m.init_slope},
                  {"init_season", m.init_season},
                  {"level", m.level},
                  {"slope", m.slope},
                  {"season_state", m.season_state}}},
                {"residual_sd", m.residual_sd},
                {"residuals", vec_json(m.residuals)},
                {"training_meta", meta}};
}

json to_json(const ArimaModel& m) {
    json meta = meta_json(m.n_train, m.train_end);
    meta["aic"] = m.aic;
    meta["transform"] = m.use_log ? "shifted_log" : "none";
    return json{{"kind", "arima"},
                {"parameters",
                 {{"order", {m.order.p, m.order.d, m.order.q, m.order.P, m.order.D, m.order.Q}},
                  {"use_log", m.use_log},
                  {"ar", m.ar},
                  {"ma", m.ma},
                  {"sar", m.sar},
                  {"sma", m.sma},
                  {"intercept", m.intercept},
                  {"z_hist", m.z_hist},
                  {"stage_lags", m.stage_lags},
                  {"stage_values", m.stage_values}}},
                {"residual_sd", m.residual_sd},
                {"residuals", vec_json(m.residuals)},
                {"training_meta", meta}};
}

FittedModel from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const json& p = j.at("parameters");
    if (kind == "naive") {
        NaiveModel m;
        m.last = p.at("last").get<double>();
        m.residual_sd = j.at("residual_sd").get<double>();
        m.residuals = vec_from(j.at("residuals"));
        meta_from(j.at("training_meta"), m.n_train, m.train_end);
        return m;
    }
    if (kind == "mlr") {
        MlrModel m;
        const json& s = p.at("spec");
        m.spec.intercept = s.at("intercept").get<bool>();
        m.spec.trend = s.at("trend").get<bool>();
        m.spec.weekend = s.at("weekend").get<bool>();
        m.spec.ar_lags = s.at("ar_lags").get<std::vector<int>>();
        m.spec.call_lags = s.at("call_lags").get<std::vector<int>>();
        m.columns = p.at("columns").get<std::vector<std::string>>();
        const auto coef = vec_from(p.at("coef"));
        m.coef = Eigen::Map<const Eigen::VectorXd>(coef.data(), static_cast<Eigen::Index>(coef.size()));
        m.residual_sd = j.at("residual_sd").get<double>();
        m.aicc = j.at("training_meta").value("aicc", 0.0);
        m.residuals = vec_from(j.at("residuals"));
        meta_from(j.at("training_meta"), m.n_train, m.train_end);
        return m;
    }
    if (kind == "ets") {
        EtsModel m;
        m.trend = static_cast<EtsTrend>(p.at("trend").get<int>());
        m.season = static_cast<EtsSeason>(p.at("season").get<int>());
        m.alpha = p.at("alpha").get<double>();
        m.beta = p.at("beta").get<double>();
        m.gamma = p.at("gamma").get<double>();
        m.phi = p.at("phi").get<double>();
        m.init_level = p.at("init_level").get<double>();
        m.init_slope = p.at("init_slope").get<double>();
        m.init_season = p.at("init_season").get<std::array<double, 7>>();
        m.level = p.at("level").get<double>();
        m.slope = p.at("slope").get<double>();
        m.season_state = p.at("season_state").get<std::array<double, 7>>();
        m.residual_sd = j.at("residual_sd").get<double>();
        m.aicc = j.at("training_meta").value("aicc", 0.0);
        m.residuals = vec_from(j.at("residuals"));
        meta_from(j.at("training_meta"), m.n_train, m.train_end);
        return m;
    }
    if (kind == "arima") {
        ArimaModel m;
        const auto ord = p.at("order").get<std::vector<int>>();
        if (ord.size() != 6) throw IoError("model file: malformed arima order");
        m.order = {ord[0], ord[1], ord[2], ord[3], ord[4], ord[5]};
        m.use_log = p.at("use_log").get<bool>();
        m.ar = vec_from(p.at("ar"));
        m.ma = vec_from(p.at("ma"));
        m.sar = vec_from(p.at("sar"));
        m.sma = vec_from(p.at("sma"));
        m.intercept = p.at("intercept").get<double>();
        m.z_hist = vec_from(p.at("z_hist"));
        m.stage_lags = p.at("stage_lags").get<std::vector<int>>();
        m.stage_values = p.at("stage_values").get<std::vector<std::vector<double>>>();
        m.residual_sd = j.at("residual_sd").get<double>();
        m.aic = j.at("training_meta").value("aic", 0.0);
        m.residuals = vec_from(j.at("residuals"));
        meta_from(j.at("training_meta"), m.n_train, m.train_end);
        return m;
    }
    throw IoError("model file: unknown kind '" + kind + "'");
}

}  // namespace

std::string model_kind(const FittedModel& m) {
    switch (m.index()) {
        case 0: return "naive";
        case 1: return "mlr";
        case 2: return "ets";
        default: return "arima";
    }
}

void save_model(const std::string& path, const FittedModel& m) {
    json j = std::visit([](const auto& mm) { return to_json(mm); }, m);
    j["schema_version"] = kModelSchemaVersion;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

FittedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("model file '" + path + "': parse error: " + e.what());
    }
    const int version = j.value("schema_version", -1);
    if (version != kModelSchemaVersion)
        throw IoError("model file '" + path + "': schema_version " + std::to_string(version) +
                      " unsupported (expected " + std::to_string(kModelSchemaVersion) + ")");
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw IoError("model file '" + path + "': " + e.what());
    }
}

}  // namespace callcast
