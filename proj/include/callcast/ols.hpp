#ifndef CALLCAST_OLS_HPP
#define CALLCAST_OLS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "callcast/features.hpp"
#include "callcast/series.hpp"

namespace callcast {

struct OlsFit {
    Eigen::VectorXd coef;
    double residual_sd = 0.0;  // sqrt(SSE / (n - k))
    double aicc = 0.0;
    std::vector<double> residuals;
};

// Least squares via column-pivoted QR; throws FitError on rank deficiency,
// naming the dependent columns.
OlsFit fit_ols(const DesignMatrix& design);

// Regression of shifted_log(cases) on the spec's regressors.
struct MlrModel {
    FeatureSpec spec;
    std::vector<std::string> columns;
    Eigen::VectorXd coef;
    double residual_sd = 0.0;
    double aicc = 0.0;
    std::vector<double> residuals;
    std::size_t n_train = 0;
    Date train_end{};
};

MlrModel fit_mlr(const DailySeries& cases, const DailySeries& calls, const FeatureSpec& spec);

}  // namespace callcast

#endif
