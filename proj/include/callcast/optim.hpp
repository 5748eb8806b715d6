#ifndef CALLCAST_OPTIM_HPP
#define CALLCAST_OPTIM_HPP

#include <functional>
#include <vector>

namespace callcast {

using Objective = std::function<double(const std::vector<double>&)>;

struct SimplexOptions {
    double tolerance = 1e-8;  // absolute spread of simplex objective values
    int max_evals = 2000;
    double init_step = 0.1;
};

struct SimplexResult {
    std::vector<double> x;
    double fx = 0.0;
    int evals = 0;
    bool converged = false;
};

// Nelder-Mead downhill simplex. Objectives may return +inf / huge values
// to reject infeasible points.
SimplexResult nelder_mead(const Objective& f, std::vector<double> x0,
                          const SimplexOptions& opt = {});

// Best of one run per start point.
SimplexResult minimize_multistart(const Objective& f,
                                  const std::vector<std::vector<double>>& starts,
                                  const SimplexOptions& opt = {});

}  // namespace callcast

#endif
