#include "callcast/metrics.hpp"

#include "callcast/errors.hpp"

namespace callcast {

double winkler(double l, double u, double y, double alpha) {
    if (l > u) throw DataError("winkler: lower bound exceeds upper bound");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DataError("winkler: alpha outside (0,1)");
    double score = u - l;
    if (y < l) score += (2.0 / alpha) * (l - y);
    if (y > u) score += (2.0 / alpha) * (y - u);
    return score;
}

double pinball(int i, double q, double y) {
    if (i < 1 || i > 99) throw DataError("pinball: percentile index outside 1..99");
    const double tau = i / 100.0;
    return (y < q) ? (1.0 - tau) * (q - y) : tau * (y - q);
}

double percentile_score(const std::array<double, 99>& q, double y) {
    double sum = 0.0;
    for (int i = 1; i <= 99; ++i) sum += pinball(i, q[static_cast<std::size_t>(i - 1)], y);
    return sum / 99.0;
}

double crps(const std::array<double, 99>& q, double y) { return 2.0 * percentile_score(q, y); }

}  // namespace callcast
