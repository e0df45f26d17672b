#include "lpai/analysis/allan.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lpai/error.hpp"

namespace lpai::analysis {

void ShotSeries::validate(double quantum) const {
    const std::size_t n = timestamps.size();
    if (normalized_populations.size() != n || applied_phases.size() != n) {
        throw InvalidArgumentError("shot series columns differ in length");
    }
    if (!(data_rate > 0.0)) throw InvalidArgumentError("shot series data rate must be > 0");
    const double period = 1.0 / data_rate;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(timestamps[i] - timestamps[i - 1] - period) > quantum + 1e-12 * std::abs(timestamps[i])) {
            std::ostringstream msg;
            msg << "shot series is not uniformly spaced at 1/R near sample " << i;
            throw InvalidArgumentError(msg.str());
        }
    }
}

double MidFringeScale::accel_per_population() const {
    if (!(contrast > 0.0)) throw InvalidArgumentError("mid-fringe scale needs contrast > 0");
    if (!(interrogation_time > 0.0) || !(wavevector > 0.0) || !(gravity > 0.0)) {
        throw InvalidArgumentError("mid-fringe scale needs positive g, k and T");
    }
    return 2.0 / contrast / (gravity * wavevector * interrogation_time * interrogation_time);
}

std::vector<double> accel_residuals(std::span<const double> populations, const MidFringeScale& scale) {
    const double factor = scale.accel_per_population();
    const double mean = populations.empty()
                            ? 0.0
                            : std::accumulate(populations.begin(), populations.end(), 0.0) /
                                  static_cast<double>(populations.size());
    std::vector<double> out;
    out.reserve(populations.size());
    for (double p : populations) out.push_back((p - mean) * factor);
    return out;
}

namespace {

AllanPoint with_interval(double tau, double variance, std::size_t pairs) {
    // Chi-square interval with one degree of freedom per difference.
    using boost::math::chi_squared;
    using boost::math::quantile;
    const chi_squared dist(static_cast<double>(pairs));
    const double dof = static_cast<double>(pairs);
    const double alpha = 0.5 * (1.0 - 0.682689492137086);
    AllanPoint p;
    p.tau = tau;
    p.deviation = std::sqrt(variance);
    p.lower = std::sqrt(variance * dof / quantile(dist, 1.0 - alpha));
    p.upper = std::sqrt(variance * dof / quantile(dist, alpha));
    p.pairs = pairs;
    return p;
}

}  // namespace

AllanPoint allan_point(std::span<const double> y, double tau0, std::size_t m) {
    if (m == 0) throw InvalidArgumentError("averaging factor must be >= 1");
    const std::size_t bins = y.size() / m;
    if (bins < 3) {
        std::ostringstream msg;
        msg << "Allan bin tau = " << static_cast<double>(m) * tau0 << " s has fewer than 2 pairs";
        throw InsufficientDataError(msg.str());
    }
    std::vector<double> means(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += y[b * m + i];
        means[b] = s / static_cast<double>(m);
    }
    double acc = 0.0;
    for (std::size_t b = 0; b + 1 < bins; ++b) {
        const double d = means[b + 1] - means[b];
        acc += d * d;
    }
    const std::size_t pairs = bins - 1;
    return with_interval(static_cast<double>(m) * tau0, 0.5 * acc / static_cast<double>(pairs), pairs);
}

AllanCurve allan_deviation(std::span<const double> y, double tau0) {
    if (y.size() < 4) throw InsufficientDataError("Allan deviation needs at least 4 samples");
    if (!(tau0 > 0.0)) throw InvalidArgumentError("tau0 must be > 0");
    AllanCurve curve;
    for (std::size_t m = 1; y.size() / m >= 3; m *= 2) curve.points.push_back(allan_point(y, tau0, m));
    return curve;
}

AllanCurve overlapping_allan_deviation(std::span<const double> y, double tau0) {
    if (y.size() < 4) throw InsufficientDataError("Allan deviation needs at least 4 samples");
    if (!(tau0 > 0.0)) throw InvalidArgumentError("tau0 must be > 0");
    // Phase-style cumulative sum x_k = tau0 * sum y.
    std::vector<double> x(y.size() + 1, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) x[i + 1] = x[i] + y[i] * tau0;

    AllanCurve curve;
    const std::size_t n = x.size();
    for (std::size_t m = 1; 2 * m < n && y.size() / m >= 3; m *= 2) {
        const double tau = static_cast<double>(m) * tau0;
        double acc = 0.0;
        const std::size_t terms = n - 2 * m;
        for (std::size_t i = 0; i < terms; ++i) {
            const double d = x[i + 2 * m] - 2.0 * x[i + m] + x[i];
            acc += d * d;
        }
        const double variance = acc / (2.0 * tau * tau * static_cast<double>(terms));
        // Independent differences, for the interval only.
        curve.points.push_back(with_interval(tau, variance, y.size() / m - 1));
    }
    return curve;
}

AllanCurve allan_deviation(const ShotSeries& series, const MidFringeScale& scale) {
    if (series.normalized_populations.size() < 4) throw InsufficientDataError("Allan deviation needs at least 4 samples");
    if (!(series.data_rate > 0.0)) throw InvalidArgumentError("shot series data rate must be > 0");
    const auto y = accel_residuals(series.normalized_populations, scale);
    return allan_deviation(y, 1.0 / series.data_rate);
}

double loglog_slope(const AllanCurve& curve, double tau_min, double tau_max) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& p : curve.points) {
        if (p.tau < tau_min * (1 - 1e-9) || p.tau > tau_max * (1 + 1e-9) || !(p.deviation > 0.0)) continue;
        const double lx = std::log(p.tau);
        const double ly = std::log(p.deviation);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) throw InsufficientDataError("log-log slope needs at least 2 Allan points in range");
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

}  // namespace lpai::analysis
