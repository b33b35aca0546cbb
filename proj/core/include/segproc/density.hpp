#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace segproc::density {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Taylor coefficients of the n-th gap density on [0, 1/2], stored exactly:
// coefficient k is num[k] / den.  The coefficient recursion is triangular
// in k, so a row truncated at degree K still carries the exact coefficients
// up to K; truncation only loses tail mass beyond degree K.
struct CoefficientRow {
    int n = 0;
    std::vector<Int> num;  // degree 0 .. K
    Int den = 1;

    std::size_t degree_bound() const { return num.empty() ? 0 : num.size() - 1; }
    Rat coeff(std::size_t k) const;
    // Horner evaluation of the truncated series in double precision.
    double eval(double x) const;
};

struct CoefficientTable {
    int max_n = 0;
    std::size_t truncation = 0;  // K shared by all rows
    double tol = 0;              // certified bound on each row's mean-tail error
    std::vector<CoefficientRow> rows;  // rows[i] holds level n = i + 1

    const CoefficientRow& row(int n) const;
};

// Mean gap at level n from the truncated series, with the certified
// truncation error bound and the rescaled value n (1/2 - es) that the
// expectation table plots.
struct ExpectationRow {
    int n = 0;
    Rat es;                 // truncated-series mean, exact rational
    double es_d = 0;        // same, rounded to double
    double figure_value = 0;  // n * (1/2 - es)
    double tail_bound = 0;    // upper bound on the mean mass dropped by truncation
};

// Raised when the requested accuracy cannot be certified at the available
// truncation.
struct TruncationInsufficient : std::runtime_error {
    explicit TruncationInsufficient(const std::string& what)
        : std::runtime_error(what) {}
};

// Level 1: constant density 2 on [0, 1/2].
CoefficientRow first_coefficient_row(std::size_t truncation);

// One level up.  Coefficient k of the next row is (k+2)/k times the prefix
// sum of the current row below k (and 0 at k = 0), computed with running
// prefix sums over a common denominator: multiplying den by lcm(1..K)
// keeps every division by k integral.  K defaults to the input's degree
// bound and may only shrink (higher degrees of the next row would need
// the dropped part of this row).
CoefficientRow next_coefficient_row(const CoefficientRow& row);
CoefficientRow next_coefficient_row(const CoefficientRow& row, std::size_t K);

// Mass of the truncated series on [0, 1/2]; the full series integrates to
// exactly 1, so tail_gap = 1 - truncated_mass bounds the dropped mass.
Rat truncated_mass(const CoefficientRow& row);
Rat tail_gap(const CoefficientRow& row);  // always >= 0

// Mean of the truncated series (integral of x times the series over
// [0, 1/2]); the dropped tail contributes at most tail_gap / 2.
Rat expectation_truncated(const CoefficientRow& row);

// Mean with a certified error bound: throws TruncationInsufficient when
// tail_gap/2 exceeds tol (compared exactly; a double tol is dyadic).
ExpectationRow expectation_s(const CoefficientRow& row, double tol);

// Build rows 1..max_n with one shared truncation K, doubling K from 64
// until every row passes the expectation_s guard at tol.  Throws
// TruncationInsufficient if K would exceed k_limit.
CoefficientTable build_table(int max_n, double tol, std::size_t k_limit = 1u << 15);

std::vector<ExpectationRow> expectation_schedule(const CoefficientTable& table);

// Float-grid cross-check, independent of the exact engine: advance the
// density recursion f_{next}(x) = f(x) x/(1-x) + 2 int_0^x f(y)/(1-y) dy
// with cumulative trapezoids on a uniform grid over [0, 1/2].
std::vector<double> density_grid_quadrature(int n, std::size_t grid);
double density_eval_quadrature(int n, double x, std::size_t grid);
double expectation_quadrature(int n, std::size_t grid);

}  // namespace segproc::density
