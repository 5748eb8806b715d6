#include "callcast/naive.hpp"

#include <cmath>

#include "callcast/errors.hpp"
#include "callcast/rng.hpp"

namespace callcast {

NaiveModel fit_naive(const DailySeries& y) {
    if (y.size() < 2) throw FitError("naive: need at least 2 observations");
    NaiveModel m;
    m.last = y[y.size() - 1];
    m.n_train = y.size();
    m.train_end = y.end_date();
    m.residuals.reserve(y.size() - 1);
    double sse = 0.0;
    for (std::size_t t = 1; t < y.size(); ++t) {
        const double e = y[t] - y[t - 1];
        m.residuals.push_back(e);
        sse += e * e;
    }
    m.residual_sd = std::sqrt(sse / static_cast<double>(m.residuals.size()));
    return m;
}

std::vector<double> point_forecast(const NaiveModel& m, int H) {
    return std::vector<double>(static_cast<std::size_t>(H), m.last);
}

ForecastDistribution forecast_naive(const NaiveModel& m, int H, int M, std::uint64_t seed,
                                    Innovation innovation) {
    if (H < 1 || M < 1) throw DataError("forecast_naive: H and M must be >= 1");
    Rng rng(seed);
    std::vector<std::vector<double>> paths(static_cast<std::size_t>(M));
    for (auto& path : paths) {
        path.resize(static_cast<std::size_t>(H));
        double level = m.last;
        for (int h = 0; h < H; ++h) {
            double eps;
            if (innovation == Innovation::Bootstrap && !m.residuals.empty())
                eps = m.residuals[rng.index(m.residuals.size())];
            else
                eps = m.residual_sd * rng.normal();
            level += eps;
            path[static_cast<std::size_t>(h)] = level > 0.0 ? level : 0.0;
        }
    }
    return ForecastDistribution(m.train_end, std::move(paths));
}

}  // namespace callcast
