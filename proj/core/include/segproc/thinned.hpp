#pragma once

#include <cstdint>
#include <stdexcept>

#include "segproc/rng.hpp"

namespace segproc {

// Thinned view of the refinement: only the centre displacement z and the
// residual radius factor r are tracked.  Starting from (z, r) = (0, 1),
// each step multiplies r by a fresh uniform and moves z by half the radius
// lost, with a symmetric sign.
struct ThinnedState {
    double z = 0.0;
    double r = 1.0;
    std::uint64_t step = 0;
};

// Draw order per step: the uniform first, then the sign.
template <DrawSource S>
ThinnedState step_thinned(const ThinnedState& cur, S& src) {
    const double u = src.uniform01();
    const double xi = src.sign();
    ThinnedState next;
    next.z = cur.z + 0.5 * xi * (1.0 - u) * cur.r;
    next.r = cur.r * u;
    next.step = cur.step + 1;
    return next;
}

// Limit centre as the partial sum of the sign-weighted stick lengths,
// truncated at the first step where the residual radius factor is below
// eps.  The skipped tail moves z by at most eps/2, since the remaining
// displacements telescope against r.
template <DrawSource S>
double sample_center_series(double eps, S& src,
                            std::uint64_t max_steps = 100000) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("sample_center_series: eps must be in (0,1)");
    ThinnedState st;
    while (st.r >= eps) {
        if (st.step >= max_steps)
            throw std::runtime_error(
                "sample_center_series: residual failed to reach eps within step cap");
        st = step_thinned(st, src);
    }
    return st.z;
}

}  // namespace segproc
