#ifndef CALLCAST_METRICS_HPP
#define CALLCAST_METRICS_HPP

#include <array>

namespace callcast {

// Interval score: width plus 2/alpha-scaled penalty outside [l, u].
double winkler(double l, double u, double y, double alpha);

// Pinball loss for the i-th percentile, i in 1..99.
double pinball(int i, double q, double y);

// Mean pinball loss over the 1..99 percentile grid.
double percentile_score(const std::array<double, 99>& q, double y);

// Quantile-based CRPS estimator: twice the mean pinball loss.
double crps(const std::array<double, 99>& q, double y);

}  // namespace callcast

#endif
