#include "callcast/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "callcast/errors.hpp"

namespace callcast {

SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, const SimplexOptions& opt) {
    const int n = static_cast<int>(x0.size());
    SimplexResult res;
    if (n == 0) {
        res.x = x0;
        res.fx = f(x0);
        res.evals = 1;
        res.converged = true;
        return res;
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<std::vector<double>> x(static_cast<std::size_t>(n) + 1, x0);
    for (int i = 0; i < n; ++i) {
        const double step = (x0[i] != 0.0) ? opt.init_step * std::abs(x0[i]) + opt.init_step
                                           : opt.init_step;
        x[static_cast<std::size_t>(i) + 1][i] += step;
    }

    int evals = 0;
    std::vector<double> fx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        fx[i] = f(x[i]);
        ++evals;
    }

    auto order = [&]() {
        std::vector<std::size_t> idx(x.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        std::vector<std::vector<double>> x2(x.size());
        std::vector<double> f2(x.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            x2[i] = x[idx[i]];
            f2[i] = fx[idx[i]];
        }
        x.swap(x2);
        fx.swap(f2);
    };

    order();
    bool converged = false;
    while (evals < opt.max_evals) {
        if (std::abs(fx.back() - fx.front()) <= opt.tolerance) {
            converged = true;
            break;
        }
        // centroid of all but the worst
        std::vector<double> c(static_cast<std::size_t>(n), 0.0);
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < n; ++i) c[i] += x[v][i];
        for (int i = 0; i < n; ++i) c[i] /= n;

        auto affine = [&](double t) {
            std::vector<double> p(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) p[i] = c[i] + t * (x.back()[i] - c[i]);
            return p;
        };

        const auto xr = affine(-alpha);
        const double fr = f(xr);
        ++evals;
        if (fr < fx.front()) {
            const auto xe = affine(-gamma);
            const double fe = f(xe);
            ++evals;
            if (fe < fr) {
                x.back() = xe;
                fx.back() = fe;
            } else {
                x.back() = xr;
                fx.back() = fr;
            }
        } else if (fr < fx[fx.size() - 2]) {
            x.back() = xr;
            fx.back() = fr;
        } else {
            const auto xc = affine(fr < fx.back() ? -rho : rho);
            const double fc = f(xc);
            ++evals;
            if (fc < std::min(fr, fx.back())) {
                x.back() = xc;
                fx.back() = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t v = 1; v < x.size(); ++v) {
                    for (int i = 0; i < n; ++i) x[v][i] = x[0][i] + sigma * (x[v][i] - x[0][i]);
                    fx[v] = f(x[v]);
                    ++evals;
                }
            }
        }
        order();
    }

    res.x = x.front();
    res.fx = fx.front();
    res.evals = evals;
    res.converged = converged;
    return res;
}

SimplexResult minimize_multistart(const Objective& f,
                                  const std::vector<std::vector<double>>& starts,
                                  const SimplexOptions& opt) {
    if (starts.empty()) throw FitError("minimize_multistart: no start points");
    SimplexResult best;
    best.fx = std::numeric_limits<double>::infinity();
    for (const auto& s : starts) {
        SimplexResult r = nelder_mead(f, s, opt);
        if (r.fx < best.fx) best = std::move(r);
    }
    return best;
}

}  // namespace callcast
