#ifndef CALLCAST_MODEL_IO_HPP
#define CALLCAST_MODEL_IO_HPP

#include <string>
#include <variant>

#include "callcast/arima.hpp"
#include "callcast/ets.hpp"
#include "callcast/naive.hpp"
#include "callcast/ols.hpp"

namespace callcast {

constexpr int kModelSchemaVersion = 1;

using FittedModel = std::variant<NaiveModel, MlrModel, EtsModel, ArimaModel>;

std::string model_kind(const FittedModel& m);

// JSON round trip is lossless to full double precision.
void save_model(const std::string& path, const FittedModel& m);
FittedModel load_model(const std::string& path);

}  // namespace callcast

#endif
