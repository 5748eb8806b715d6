#include "callcast/ols.hpp"

#include <cmath>

#include "callcast/errors.hpp"

namespace callcast {

OlsFit fit_ols(const DesignMatrix& design) {
    const Eigen::Index n = design.X.rows();
    const Eigen::Index k = design.X.cols();
    if (n <= k) throw FitError("ols: rows must exceed columns");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design.X);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        std::string offenders;
        const auto perm = qr.colsPermutation().indices();
        for (Eigen::Index i = qr.rank(); i < k; ++i) {
            if (!offenders.empty()) offenders += ", ";
            offenders += design.columns[static_cast<std::size_t>(perm[i])];
        }
        throw FitError("ols: singular design, dependent columns: " + offenders);
    }

    OlsFit fit;
    fit.coef = qr.solve(design.y);
    const Eigen::VectorXd resid = design.y - design.X * fit.coef;
    double sse = resid.squaredNorm();
    fit.residuals.assign(resid.data(), resid.data() + resid.size());
    fit.residual_sd = std::sqrt(sse / static_cast<double>(n - k));

    // Gaussian AICc; parameter count includes the error variance.
    const double nn = static_cast<double>(n);
    const double kk = static_cast<double>(k) + 1.0;
    const double sig2 = std::max(sse / nn, 1e-300);
    fit.aicc = nn * std::log(sig2) + 2.0 * kk;
    if (nn - kk - 1.0 > 0.0) fit.aicc += 2.0 * kk * (kk + 1.0) / (nn - kk - 1.0);
    return fit;
}

MlrModel fit_mlr(const DailySeries& cases, const DailySeries& calls, const FeatureSpec& spec) {
    const DesignMatrix d = build_design(cases, calls, spec);
    OlsFit fit = fit_ols(d);
    MlrModel m;
    m.spec = spec;
    m.columns = d.columns;
    m.coef = std::move(fit.coef);
    m.residual_sd = fit.residual_sd;
    m.aicc = fit.aicc;
    m.residuals = std::move(fit.residuals);
    m.n_train = cases.size();
    m.train_end = cases.end_date();
    return m;
}

}  // namespace callcast
