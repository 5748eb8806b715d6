#ifndef CALLCAST_SERIES_HPP
#define CALLCAST_SERIES_HPP

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace callcast {

using Date = std::chrono::sys_days;

Date make_date(int year, unsigned month, unsigned day);
Date parse_date(const std::string& iso);  // "YYYY-MM-DD"
std::string format_date(Date d);

bool is_weekend(Date d);

// ln(v + 1); total on nonnegative counts, ln(0+1) = 0.
double shifted_log(double value);

// max(exp(x) - 1, 0); inverse of shifted_log on nonnegative inputs.
double inverse_shifted_log(double x);

// Contiguous daily series: value i belongs to start_date + i days.
// Immutable after construction.
class DailySeries {
  public:
    DailySeries(Date start, std::vector<double> values, std::string name);

    Date start_date() const { return start_; }
    Date end_date() const { return start_ + std::chrono::days(static_cast<int>(size()) - 1); }
    Date date_at(std::size_t i) const { return start_ + std::chrono::days(static_cast<int>(i)); }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    const std::string& name() const { return name_; }

    // First `n` observations, same start date.
    DailySeries prefix(std::size_t n) const;

  private:
    Date start_;
    std::vector<double> values_;
    std::string name_;
};

struct SplitSpec {
    double train_fraction = 0.7;
    std::size_t train_len(std::size_t n) const;
};

std::pair<DailySeries, DailySeries> split(const DailySeries& series, const SplitSpec& spec);

}  // namespace callcast

#endif
