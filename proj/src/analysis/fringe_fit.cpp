#include "lpai/analysis/fringe_fit.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "lpai/error.hpp"

namespace lpai::analysis {

FringeFit fit_fringe(std::span<const double> applied_phases, std::span<const double> populations) {
    if (applied_phases.size() != populations.size()) {
        throw InvalidArgumentError("fit_fringe: phases and populations differ in length");
    }
    const auto n = static_cast<Eigen::Index>(applied_phases.size());
    if (n < 8) throw InvalidArgumentError("fit_fringe: need at least 8 points");

    Eigen::MatrixXd basis(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double phi = applied_phases[static_cast<std::size_t>(i)];
        basis(i, 0) = 1.0;
        basis(i, 1) = std::cos(phi);
        basis(i, 2) = std::sin(phi);
        y(i) = populations[static_cast<std::size_t>(i)];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
    qr.setThreshold(1e-10);
    if (qr.rank() < 3) throw RankDeficiencyError("fit_fringe: applied phases do not span {1, cos, sin}");
    const Eigen::Vector3d coef = qr.solve(y);

    // P = C + c1 cos(phi) + c2 sin(phi) with c1 = -(A/2) cos(phi0), c2 = (A/2) sin(phi0)
    const double half_amplitude = std::hypot(coef(1), coef(2));
    const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
    if (half_amplitude <= 1e-12 * scale) throw RankDeficiencyError("fit_fringe: zero fringe amplitude");

    FringeFit fit;
    fit.model.offset = coef(0);
    fit.model.contrast = 2.0 * half_amplitude;
    fit.model.phase_origin = std::atan2(coef(2), -coef(1));

    const Eigen::VectorXd r = y - basis * coef;
    fit.residuals.assign(r.data(), r.data() + n);
    fit.residual_rms = std::sqrt(r.squaredNorm() / static_cast<double>(n));
    return fit;
}

}  // namespace lpai::analysis
