#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "segproc/rng.hpp"

namespace segproc {

// Maximum of n independent uniforms on [1/4 - alpha/2, 1/2].  This is the
// comparison device for the radius analysis: alpha widens the interval
// while keeping its right end at 1/2.  Requires alpha in [0, 1/2] so the
// interval stays inside [0, 1/2].
struct MaxUniformLaw {
    std::uint64_t n;
    double alpha;

    double lo() const { return 0.25 - 0.5 * alpha; }
    double hi() const { return 0.5; }
    double width() const { return 0.25 + 0.5 * alpha; }

    // Exact distribution function ((x - lo)/width)^n clipped to [0,1].
    double cdf(double x) const {
        if (x <= lo()) return 0.0;
        if (x >= hi()) return 1.0;
        return std::pow((x - lo()) / width(), static_cast<double>(n));
    }
};

inline void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 0.5))
        throw std::invalid_argument("max uniform: alpha must be in [0, 1/2]");
}

template <DrawSource S>
double sample_max_uniform(std::uint64_t n, double alpha, S& src) {
    check_alpha(alpha);
    if (n == 0) throw std::invalid_argument("max uniform: n must be positive");
    const double a = 0.25 - 0.5 * alpha;
    const double w = 0.25 + 0.5 * alpha;
    double best = a;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double x = a + w * src.uniform01();
        if (x > best) best = x;
    }
    return best;
}

}  // namespace segproc
