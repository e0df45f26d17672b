#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lpai::analysis {

/// Uniformly sampled shot record on the side of a fringe.
struct ShotSeries {
    std::vector<double> timestamps;              // s
    std::vector<double> normalized_populations;  // fraction
    std::vector<double> applied_phases;          // rad
    double data_rate = 0.0;                      // Hz
    double interrogation_time = 0.0;             // s

    void validate(double quantum = 20e-9) const;
};

struct AllanPoint {
    double tau = 0.0;        // s
    double deviation = 0.0;  // units of g
    double lower = 0.0;      // 68.3 % chi-square interval
    double upper = 0.0;
    std::size_t pairs = 0;   // averaged differences
};

struct AllanCurve {
    std::vector<AllanPoint> points;  // strictly increasing tau
};

/// Mid-fringe conversion from population residual to fractional acceleration:
/// dphi = 2 dP / contrast, dg/g = dphi / (g k T^2).
struct MidFringeScale {
    double contrast = 1.0;
    double gravity = 9.7916378;
    double wavevector = 0.0;
    double interrogation_time = 0.0;

    double accel_per_population() const;  // units of g per unit population
};

/// Population series -> fractional acceleration residuals (mean removed).
std::vector<double> accel_residuals(std::span<const double> populations, const MidFringeScale& scale);

/// Non-overlapping two-sample deviation at averaging factor m (tau = m tau0).
/// Throws InsufficientDataError when fewer than two pairs fit.
AllanPoint allan_point(std::span<const double> y, double tau0, std::size_t m);

/// Non-overlapping deviation for m = 1, 2, 4, ... while at least two pairs fit.
/// Throws InsufficientDataError for fewer than 4 samples.
AllanCurve allan_deviation(std::span<const double> y, double tau0);

/// Overlapping variant (octave tau grid); not used for sensitivity figures.
AllanCurve overlapping_allan_deviation(std::span<const double> y, double tau0);

/// Converts the series to fractional acceleration and computes the curve.
AllanCurve allan_deviation(const ShotSeries& series, const MidFringeScale& scale);

/// Least-squares slope of log(sigma) vs log(tau) over [tau_min, tau_max].
double loglog_slope(const AllanCurve& curve, double tau_min, double tau_max);

}  // namespace lpai::analysis
