#ifndef CALLCAST_CSV_HPP
#define CALLCAST_CSV_HPP

#include <string>

#include "callcast/series.hpp"

namespace callcast {

struct Dataset {
    DailySeries cases;
    DailySeries calls;
    std::string source_path;
    std::size_t row_count = 0;
};

// `date,cases,calls` with ISO-8601 dates; rows are sorted, duplicates and
// calendar gaps rejected.
Dataset parse_csv(const std::string& path);

// Canonical form: sorted, one row per day, shortest-round-trip numbers.
void write_dataset_csv(const Dataset& ds, const std::string& path);

// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);

}  // namespace callcast

#endif
