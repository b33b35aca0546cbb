#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "segproc/rng.hpp"

namespace segproc {

// Closed interval tracked by its endpoints.  The refinement below keeps the
// half-width in [1/2, 1] and every new segment nested in the previous one.
struct Segment {
    double lo;
    double hi;

    double center() const { return 0.5 * (lo + hi); }
    double radius() const { return 0.5 * (hi - lo); }
    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Segment& other) const {
        return lo <= other.lo && other.hi <= hi;
    }
};

inline Segment initial_segment() { return Segment{-1.0, 1.0}; }

// Segment plus step counter and the accumulated shrinkage s = 1 - radius,
// which is nondecreasing along a trajectory and lives in [0, 1/2].
struct ProcessState {
    Segment seg;
    std::uint64_t step;
    double s;
};

inline ProcessState initial_state() {
    return ProcessState{initial_segment(), 0, 0.0};
}

// One refinement with the drawn point supplied by the caller: intersect the
// current segment with the unit-radius interval around a.  The intersection
// is never empty because the current radius is at most 1.
inline ProcessState step_direct_forced(const ProcessState& st, double a) {
    if (!st.seg.contains(a))
        throw std::invalid_argument("step_direct_forced: point outside segment");
    const double lo = st.seg.lo > a - 1.0 ? st.seg.lo : a - 1.0;
    const double hi = st.seg.hi < a + 1.0 ? st.seg.hi : a + 1.0;
    const Segment seg{lo, hi};
    return ProcessState{seg, st.step + 1, 1.0 - seg.radius()};
}

// Random form: the point is uniform on the current segment.  One uniform
// draw per step.
template <DrawSource S>
ProcessState step_direct(const ProcessState& st, S& src) {
    return step_direct_forced(st, st.seg.lo + st.seg.length() * src.uniform01());
}

// Full path: result[k] is the state after k refinements (n_steps + 1 entries).
template <DrawSource S>
std::vector<ProcessState> run_direct(std::uint64_t n_steps, S& src) {
    std::vector<ProcessState> path;
    path.reserve(n_steps + 1);
    ProcessState st = initial_state();
    path.push_back(st);
    for (std::uint64_t i = 0; i < n_steps; ++i) {
        st = step_direct(st, src);
        path.push_back(st);
    }
    return path;
}

// Final state only; the common case for large replication counts.
template <DrawSource S>
ProcessState run_direct_final(std::uint64_t n_steps, S& src) {
    ProcessState st = initial_state();
    for (std::uint64_t i = 0; i < n_steps; ++i) st = step_direct(st, src);
    return st;
}

}  // namespace segproc
