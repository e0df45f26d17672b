#include "lpai/analysis/gravity_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lpai/error.hpp"
#include "lpai/interferometer.hpp"

namespace lpai::analysis {

namespace {

struct ModelTerms {
    double k;       // effective wavevector
    double linear;  // tau_pi k (1 + 2/pi), multiplies g T
};

ModelTerms model_terms(const PhysicalParams& params, bool include_linear_term) {
    const double k = params.effective_wavevector();
    const double tau_pi = pi_pulse_duration(params.rabi_frequency);
    return {k, include_linear_term ? chirp_linear_coefficient(tau_pi, k, 1.0) : 0.0};
}

using Vector5 = Eigen::Matrix<double, 5, 1>;
enum Param { kG = 0, kPhase, kAmp, kTau, kOffset };

double sum_squares(const Eigen::VectorXd& t, const Eigen::VectorXd& y, const Vector5& p, const ModelTerms& m) {
    double ssr = 0.0;
    for (Eigen::Index i = 0; i < t.size(); ++i) {
        const double ti = t(i);
        const double theta = p(kPhase) + (m.linear * ti + m.k * ti * ti) * p(kG);
        const double f = p(kAmp) * std::exp(-ti / p(kTau)) * std::cos(theta) + p(kOffset);
        ssr += (y(i) - f) * (y(i) - f);
    }
    return ssr;
}

void residuals_and_jacobian(const Eigen::VectorXd& t, const Eigen::VectorXd& y, const Vector5& p,
                            const ModelTerms& m, Eigen::VectorXd& r, Eigen::MatrixXd& jac) {
    const Eigen::Index n = t.size();
    r.resize(n);
    jac.resize(n, 5);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double ti = t(i);
        const double dtheta_dg = m.linear * ti + m.k * ti * ti;
        const double theta = p(kPhase) + dtheta_dg * p(kG);
        const double env = std::exp(-ti / p(kTau));
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        r(i) = y(i) - (p(kAmp) * env * c + p(kOffset));
        jac(i, kG) = -p(kAmp) * env * s * dtheta_dg;
        jac(i, kPhase) = -p(kAmp) * env * s;
        jac(i, kAmp) = env * c;
        jac(i, kTau) = p(kAmp) * env * c * ti / (p(kTau) * p(kTau));
        jac(i, kOffset) = 1.0;
    }
}

struct GridNode {
    double g;
    double ssr;
    Eigen::Vector3d coef;  // (A cos phi0, A sin phi0, C)
};

GridNode solve_linear(const Eigen::VectorXd& t, const Eigen::VectorXd& y, double g, double tau,
                      const ModelTerms& m) {
    Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (Eigen::Index i = 0; i < t.size(); ++i) {
        const double ti = t(i);
        const double theta = (m.linear * ti + m.k * ti * ti) * g;
        const double env = std::exp(-ti / tau);
        const Eigen::Vector3d row(env * std::cos(theta), -env * std::sin(theta), 1.0);
        normal.noalias() += row * row.transpose();
        rhs.noalias() += row * y(i);
    }
    GridNode node{g, 0.0, normal.ldlt().solve(rhs)};
    for (Eigen::Index i = 0; i < t.size(); ++i) {
        const double ti = t(i);
        const double theta = (m.linear * ti + m.k * ti * ti) * g;
        const double env = std::exp(-ti / tau);
        const double f = env * (node.coef(0) * std::cos(theta) - node.coef(1) * std::sin(theta)) + node.coef(2);
        node.ssr += (y(i) - f) * (y(i) - f);
    }
    return node;
}

}  // namespace

double chirped_model(double interrogation_time, double g, double phase_origin, double amplitude,
                     double envelope_time, double offset, const PhysicalParams& params, bool include_linear_term) {
    const ModelTerms m = model_terms(params, include_linear_term);
    const double t = interrogation_time;
    const double theta = phase_origin + (m.linear * t + m.k * t * t) * g;
    return amplitude * std::exp(-t / envelope_time) * std::cos(theta) + offset;
}

GravityFit fit_chirped_gravity(std::span<const double> interrogation_times, std::span<const double> populations,
                               const PhysicalParams& params, const GravityFitOptions& options) {
    if (interrogation_times.size() != populations.size()) {
        throw InvalidArgumentError("fit_chirped_gravity: T values and populations differ in length");
    }
    if (interrogation_times.size() < 10) throw InvalidArgumentError("fit_chirped_gravity: need at least 10 points");
    if (!(options.g_window > 0.0) || !(options.envelope_time_guess > 0.0)) {
        throw InvalidArgumentError("fit_chirped_gravity: prior window and envelope guess must be > 0");
    }

    const auto n = static_cast<Eigen::Index>(interrogation_times.size());
    const Eigen::VectorXd t = Eigen::Map<const Eigen::VectorXd>(interrogation_times.data(), n);
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(populations.data(), n);
    if ((t.array() < 0.0).any()) throw InvalidArgumentError("fit_chirped_gravity: T values must be >= 0");
    const double t_max = t.maxCoeff();
    if (!(t_max > 0.0)) throw InvalidArgumentError("fit_chirped_gravity: T grid must extend beyond 0");

    const ModelTerms m = model_terms(params, options.include_linear_term);

    // Grid over g: phase sensitivity at T_max sets the node spacing.
    const double dtheta_dg = m.linear * t_max + m.k * t_max * t_max;
    const double step = 0.9 * (constants::pi / 4.0) / dtheta_dg;
    const auto nodes = static_cast<std::size_t>(std::ceil(2.0 * options.g_window / step)) + 1;
    const double g_lo = options.g_prior - options.g_window;
    const double spacing = 2.0 * options.g_window / static_cast<double>(nodes - 1);

    std::vector<GridNode> grid;
    grid.reserve(nodes);
    for (std::size_t j = 0; j < nodes; ++j) {
        grid.push_back(solve_linear(t, y, g_lo + spacing * static_cast<double>(j), options.envelope_time_guess, m));
    }

    std::vector<std::size_t> minima;
    for (std::size_t j = 0; j < nodes; ++j) {
        const bool left = j == 0 || grid[j].ssr <= grid[j - 1].ssr;
        const bool right = j + 1 == nodes || grid[j].ssr <= grid[j + 1].ssr;
        if (left && right) minima.push_back(j);
    }
    std::sort(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) { return grid[a].ssr < grid[b].ssr; });
    const GridNode& best = grid[minima.front()];

    const double grid_variance = best.ssr / static_cast<double>(n - 5);
    double margin = std::numeric_limits<double>::infinity();
    if (minima.size() > 1) {
        const double dssr = grid[minima[1]].ssr - best.ssr;
        margin = grid_variance > 0.0 ? dssr / grid_variance : std::numeric_limits<double>::infinity();
        if (margin < 1.0) {
            std::ostringstream msg;
            msg << "fit_chirped_gravity: fringe-order ambiguity, grid minima at g = " << best.g << " and "
                << grid[minima[1]].g << " differ by " << margin << " residual variances";
            throw AmbiguityError(msg.str());
        }
    }

    Vector5 p;
    p(kG) = best.g;
    p(kPhase) = std::atan2(best.coef(1), best.coef(0));
    p(kAmp) = std::hypot(best.coef(0), best.coef(1));
    p(kTau) = options.envelope_time_guess;
    p(kOffset) = best.coef(2);

    // Damped Gauss-Newton: QR step, halved until the SSR decreases.
    Vector5 typical;
    typical << 1.0, 1.0, 1e-3, 1e-4, 1e-3;
    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
    double ssr = sum_squares(t, y, p, m);
    bool converged = false;
    int iteration = 0;
    while (iteration < options.max_iterations) {
        ++iteration;
        residuals_and_jacobian(t, y, p, m, r, jac);
        const Vector5 delta = jac.colPivHouseholderQr().solve(r);

        double lambda = 1.0;
        Vector5 trial = p + delta;
        double trial_ssr = trial(kTau) > 0.0 ? sum_squares(t, y, trial, m) : std::numeric_limits<double>::infinity();
        while (!(trial_ssr <= ssr) && lambda > 1e-12) {
            lambda *= 0.5;
            trial = p + lambda * delta;
            trial_ssr = trial(kTau) > 0.0 ? sum_squares(t, y, trial, m) : std::numeric_limits<double>::infinity();
        }
        if (!(trial_ssr <= ssr)) {
            converged = true;  // no descent left at machine precision
            break;
        }
        const double rel_step =
            ((lambda * delta).cwiseAbs().array() / p.cwiseAbs().cwiseMax(typical).array()).maxCoeff();
        p = trial;
        ssr = trial_ssr;
        if (rel_step < options.step_tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "fit_chirped_gravity: no convergence after " << options.max_iterations << " iterations (g = " << p(kG)
            << ")";
        throw NonConvergenceError(msg.str());
    }

    if (p(kAmp) < 0.0) {
        p(kAmp) = -p(kAmp);
        p(kPhase) += constants::pi;
    }
    p(kPhase) = std::remainder(p(kPhase), constants::two_pi);

    residuals_and_jacobian(t, y, p, m, r, jac);
    const double variance = r.squaredNorm() / static_cast<double>(n - 5);
    const Vector5 norms = jac.colwise().norm().transpose();
    const Vector5 inv_norms = norms.cwiseInverse();
    const Eigen::Matrix<double, 5, 5> scaled =
        inv_norms.asDiagonal() * (jac.transpose() * jac) * inv_norms.asDiagonal();
    const Eigen::Matrix<double, 5, 5> cov =
        variance * inv_norms.asDiagonal() * scaled.inverse() * inv_norms.asDiagonal();

    GravityFit fit;
    fit.g_hat = p(kG);
    fit.phase_origin = p(kPhase);
    fit.amplitude = p(kAmp);
    fit.envelope_time = p(kTau);
    fit.offset = p(kOffset);
    fit.covariance = cov;
    fit.sigma_g_hat = std::sqrt(std::max(0.0, cov(kG, kG)));
    fit.residuals.assign(r.data(), r.data() + n);
    fit.residual_rms = std::sqrt(r.squaredNorm() / static_cast<double>(n));
    fit.iterations = iteration;
    fit.grid_points = nodes;
    fit.ambiguity_margin = margin;
    return fit;
}

}  // namespace lpai::analysis
