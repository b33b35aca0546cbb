#include "segproc/density.hpp"

#include <cmath>
#include <utility>

namespace segproc::density {

namespace {

Int lcm_upto(std::size_t n) {
    Int l = 1;
    for (std::size_t k = 2; k <= n; ++k) l = lcm(l, Int(k));
    return l;
}

// Divide out the common factor of all numerators and the denominator so
// stored rows stay as small as the arithmetic allows.
void canonicalize(CoefficientRow& row) {
    Int g = row.den;
    for (const Int& v : row.num) {
        if (g == 1) return;
        if (v != 0) g = gcd(g, v);
    }
    if (g == 1) return;
    for (Int& v : row.num) v /= g;
    row.den /= g;
}

}  // namespace

Rat CoefficientRow::coeff(std::size_t k) const {
    if (k >= num.size()) return Rat(0);
    return Rat(num[k], den);
}

double CoefficientRow::eval(double x) const {
    double acc = 0.0;
    for (std::size_t i = num.size(); i-- > 0;)
        acc = acc * x + Rat(num[i], den).convert_to<double>();
    return acc;
}

const CoefficientRow& CoefficientTable::row(int n) const {
    if (n < 1 || n > max_n)
        throw std::out_of_range("CoefficientTable::row: level out of range");
    return rows[static_cast<std::size_t>(n) - 1];
}

CoefficientRow first_coefficient_row(std::size_t truncation) {
    CoefficientRow row;
    row.n = 1;
    row.num.assign(truncation + 1, Int(0));
    row.num[0] = 2;
    row.den = 1;
    return row;
}

CoefficientRow next_coefficient_row(const CoefficientRow& row, std::size_t K) {
    if (K > row.degree_bound())
        throw std::invalid_argument(
            "next_coefficient_row: cannot extend beyond the input's truncation");
    const Int L = lcm_upto(K);

    CoefficientRow out;
    out.n = row.n + 1;
    out.den = row.den * L;
    out.num.assign(K + 1, Int(0));

    Int prefix = 0;
    for (std::size_t k = 1; k <= K; ++k) {
        prefix += row.num[k - 1];
        out.num[k] = Int(k + 2) * (L / k) * prefix;
    }
    canonicalize(out);
    return out;
}

CoefficientRow next_coefficient_row(const CoefficientRow& row) {
    return next_coefficient_row(row, row.degree_bound());
}

Rat truncated_mass(const CoefficientRow& row) {
    // sum_k c_k / ((k+1) 2^(k+1)) over stored degrees, assembled as one
    // integer over den * lcm(1..K+1) * 2^(K+1)
    const std::size_t K = row.degree_bound();
    const Int L = lcm_upto(K + 1);
    Int acc = 0;
    for (std::size_t k = 0; k <= K; ++k) {
        if (row.num[k] == 0) continue;
        acc += (row.num[k] * (L / (k + 1))) << (K - k);
    }
    Int denom = row.den * L;
    denom <<= K + 1;
    return Rat(acc, denom);
}

Rat tail_gap(const CoefficientRow& row) {
    Rat g = 1 - truncated_mass(row);
    if (g < 0)
        throw std::logic_error("tail_gap: truncated mass exceeds 1");
    return g;
}

Rat expectation_truncated(const CoefficientRow& row) {
    const std::size_t K = row.degree_bound();
    const Int L = lcm_upto(K + 2);
    Int acc = 0;
    for (std::size_t k = 0; k <= K; ++k) {
        if (row.num[k] == 0) continue;
        acc += (row.num[k] * (L / (k + 2))) << (K - k);
    }
    Int denom = row.den * L;
    denom <<= K + 2;
    return Rat(acc, denom);
}

ExpectationRow expectation_s(const CoefficientRow& row, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("expectation_s: tol must be positive");
    const Rat half_gap = tail_gap(row) / 2;
    if (half_gap > Rat(tol))
        throw TruncationInsufficient(
            "expectation_s: tail bound exceeds tol at level " +
            std::to_string(row.n));

    ExpectationRow e;
    e.n = row.n;
    e.es = expectation_truncated(row);
    e.es_d = e.es.convert_to<double>();
    e.figure_value = (Rat(row.n) * (Rat(1, 2) - e.es)).convert_to<double>();
    // round the certified bound upward so the double never understates it
    double b = half_gap.convert_to<double>();
    if (Rat(b) < half_gap) b = std::nextafter(b, 1.0);
    e.tail_bound = b;
    return e;
}

CoefficientTable build_table(int max_n, double tol, std::size_t k_limit) {
    if (max_n < 1)
        throw std::invalid_argument("build_table: max_n must be at least 1");
    if (!(tol > 0.0))
        throw std::invalid_argument("build_table: tol must be positive");

    const Rat two_tol = Rat(tol) * 2;  // doubles are dyadic, so this is exact
    for (std::size_t K = 64;; K *= 2) {
        if (K > k_limit)
            throw TruncationInsufficient(
                "build_table: truncation ceiling reached before the tail bound "
                "met tol");
        CoefficientTable table;
        table.max_n = max_n;
        table.truncation = K;
        table.tol = tol;
        table.rows.reserve(static_cast<std::size_t>(max_n));

        bool ok = true;
        CoefficientRow row = first_coefficient_row(K);
        for (int n = 1; n <= max_n; ++n) {
            if (n > 1) row = next_coefficient_row(row);
            if (tail_gap(row) > two_tol) {
                ok = false;
                break;
            }
            table.rows.push_back(row);
        }
        if (ok) return table;
    }
}

std::vector<ExpectationRow> expectation_schedule(const CoefficientTable& table) {
    std::vector<ExpectationRow> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows)
        out.push_back(expectation_s(row, table.tol));
    return out;
}

std::vector<double> density_grid_quadrature(int n, std::size_t grid) {
    if (n < 1)
        throw std::invalid_argument("density_grid_quadrature: n must be >= 1");
    if (grid < 64)
        throw std::invalid_argument("density_grid_quadrature: grid must be >= 64");

    const double h = 0.5 / static_cast<double>(grid);
    std::vector<double> f(grid + 1, 2.0);
    std::vector<double> g(grid + 1), integral(grid + 1);
    for (int level = 1; level < n; ++level) {
        for (std::size_t i = 0; i <= grid; ++i) {
            const double x = h * static_cast<double>(i);
            g[i] = f[i] / (1.0 - x);
        }
        integral[0] = 0.0;
        for (std::size_t i = 1; i <= grid; ++i)
            integral[i] = integral[i - 1] + 0.5 * h * (g[i - 1] + g[i]);
        for (std::size_t i = 0; i <= grid; ++i) {
            const double x = h * static_cast<double>(i);
            f[i] = f[i] * x / (1.0 - x) + 2.0 * integral[i];
        }
    }
    return f;
}

double density_eval_quadrature(int n, double x, std::size_t grid) {
    if (!(x >= 0.0 && x <= 0.5))
        throw std::invalid_argument("density_eval_quadrature: x outside [0, 1/2]");
    const std::vector<double> f = density_grid_quadrature(n, grid);
    const double h = 0.5 / static_cast<double>(grid);
    const double pos = x / h;
    const auto i = static_cast<std::size_t>(pos);
    if (i >= grid) return f[grid];
    const double frac = pos - static_cast<double>(i);
    return f[i] * (1.0 - frac) + f[i + 1] * frac;
}

double expectation_quadrature(int n, std::size_t grid) {
    const std::vector<double> f = density_grid_quadrature(n, grid);
    const double h = 0.5 / static_cast<double>(grid);
    double acc = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) {
        const double x0 = h * static_cast<double>(i - 1);
        const double x1 = h * static_cast<double>(i);
        acc += 0.5 * h * (x0 * f[i - 1] + x1 * f[i]);
    }
    return acc;
}

}  // namespace segproc::density
