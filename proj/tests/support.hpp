#pragma once

#include <cmath>
#include <numeric>
#include <span>
#include <vector>

namespace lpai::test {

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline double mean(std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

inline double stddev(std::span<const double> x) {
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(x.size() - 1));
}

}  // namespace lpai::test
