#include "callcast/series.hpp"

#include <cmath>
#include <cstdio>

#include "callcast/errors.hpp"

namespace callcast {

namespace chr = std::chrono;

Date make_date(int year, unsigned month, unsigned day) {
    const chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
    if (!ymd.ok()) throw DataError("invalid calendar date");
    return chr::sys_days(ymd);
}

Date parse_date(const std::string& iso) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(iso.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3)
        throw DataError("date not in YYYY-MM-DD form: '" + iso + "'");
    return make_date(y, m, d);
}

std::string format_date(Date d) {
    const chr::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

bool is_weekend(Date d) {
    const chr::weekday wd{d};
    return wd == chr::Saturday || wd == chr::Sunday;
}

double shifted_log(double value) {
    if (value < 0.0) throw DataError("shifted_log: negative count");
    return std::log1p(value);
}

double inverse_shifted_log(double x) {
    const double v = std::expm1(x);
    return v > 0.0 ? v : 0.0;
}

DailySeries::DailySeries(Date start, std::vector<double> values, std::string name)
    : start_(start), values_(std::move(values)), name_(std::move(name)) {
    if (values_.empty()) throw DataError("series '" + name_ + "' is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw DataError("series '" + name_ + "': non-finite value at index " + std::to_string(i));
        if (values_[i] < 0.0)
            throw DataError("series '" + name_ + "': negative value at index " + std::to_string(i));
    }
}

DailySeries DailySeries::prefix(std::size_t n) const {
    return DailySeries(start_, std::vector<double>(values_.begin(), values_.begin() + n), name_);
}

std::size_t SplitSpec::train_len(std::size_t n) const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw DataError("train_fraction must lie in (0,1)");
    return static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
}

std::pair<DailySeries, DailySeries> split(const DailySeries& series, const SplitSpec& spec) {
    const std::size_t n = series.size();
    const std::size_t k = spec.train_len(n);
    if (k == 0 || k >= n)
        throw DataError("split: train or test side would be empty (n=" + std::to_string(n) + ")");
    DailySeries train(series.start_date(),
                      std::vector<double>(series.values().begin(), series.values().begin() + k),
                      series.name());
    DailySeries test(series.date_at(k),
                     std::vector<double>(series.values().begin() + k, series.values().end()),
                     series.name());
    return {std::move(train), std::move(test)};
}

}  // namespace callcast
