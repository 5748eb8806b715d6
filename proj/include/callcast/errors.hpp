#ifndef CALLCAST_ERRORS_HPP
#define CALLCAST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace callcast {

// Input data failed validation (bad values, calendar gaps, bad specs).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Model estimation failed (singular design, optimizer breakdown, no
// admissible candidate).
struct FitError : std::runtime_error {
    explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem / serialization failure.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace callcast

#endif
