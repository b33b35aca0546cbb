#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "segproc/rng.hpp"

namespace segproc {

// Stick-breaking weights with uniform fractions: v[0] = 1-U1,
// v[i] = U1*...*Ui*(1-U{i+1}), residual = U1*...*Um after m sticks.
// Weights are produced as successive differences of the running product,
// so the partial sums telescope and v sums to 1 - residual up to a few
// ulps regardless of m.
struct GemVector {
    std::vector<double> v;
    double residual = 1.0;
};

template <DrawSource S>
GemVector sample_gem(std::size_t m, S& src) {
    GemVector out;
    out.v.reserve(m);
    double p = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double next = p * src.uniform01();
        out.v.push_back(p - next);
        p = next;
    }
    out.residual = p;
    return out;
}

// Same weights sorted into decreasing order (the size-biased order above is
// what the sampler produces naturally; ranking gives the Poisson-Dirichlet
// arrangement).
inline std::vector<double> to_poisson_dirichlet(const GemVector& g) {
    std::vector<double> sorted = g.v;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    return sorted;
}

}  // namespace segproc
