#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "segproc/max_uniform.hpp"
#include "segproc/rng.hpp"

namespace segproc::stats {

// ---------------------------------------------------------------------------
// Samples and reference distributions

struct SampleMeta {
    std::uint64_t seed = 0;
    std::uint64_t stream_base = 0;
    std::string config;  // free-form description of how the sample was drawn
};

// Sorted ascending, nonempty.
struct EmpiricalSample {
    std::vector<double> values;
    SampleMeta meta;
};

EmpiricalSample make_sample(std::vector<double> values, SampleMeta meta);

// Closed-form reference laws plus an empirical variant for two-sample
// comparisons.  cdf() is exact for the closed forms and clamps outside the
// support.
class ReferenceLaw {
public:
    static ReferenceLaw exponential(double rate);
    // CDF (2/pi) asin sqrt(x + 1/2) on [-1/2, 1/2]: the limit law of the
    // segment centre.
    static ReferenceLaw translated_arcsine();
    static ReferenceLaw max_uniform(std::uint64_t n, double alpha);
    static ReferenceLaw empirical(const EmpiricalSample& sample);

    double cdf(double x) const;
    std::string name() const;

    bool is_empirical() const;
    const std::vector<double>& sample_values() const;  // empirical kind only

private:
    struct Expo { double rate; };
    struct Arcsine {};
    struct Empirical { std::shared_ptr<const std::vector<double>> values; };
    using Kind = std::variant<Expo, Arcsine, MaxUniformLaw, Empirical>;

    explicit ReferenceLaw(Kind kind) : kind_(std::move(kind)) {}
    Kind kind_;
};

// Sup distance between the sample's ECDF and the law, evaluated exactly at
// the jump points (both one-sided gaps).  For an empirical law this is the
// exact two-sample statistic.
double ks_distance(const EmpiricalSample& sample, const ReferenceLaw& law);

double two_sample_ks(const std::vector<double>& a, const std::vector<double>& b);

// One-sided excess sup_x (ECDF_a(x) - ECDF_b(x)), never below 0.
double ecdf_excess(const std::vector<double>& a, const std::vector<double>& b);

// Asymptotic critical value c(alpha)/sqrt(N), c(alpha) = sqrt(-ln(alpha/2)/2).
double ks_critical(double alpha, std::size_t n);
double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m);

// ---------------------------------------------------------------------------
// Reports

// pass is always statistic <= threshold.  Checks whose success criterion is
// "this must fail" (negative controls) are encoded as margin statistics:
// statistic = claimed_threshold - observed, threshold = 0, so pass still
// reads statistic <= threshold.
struct TestReport {
    std::string suite;
    std::string check;
    std::size_t samples = 0;
    double statistic = 0;
    double threshold = 0;
    bool pass = false;
    double seconds = 0;  // wall time; shown in human output, kept out of CSV
};

TestReport make_report(std::string suite, std::string check, std::size_t samples,
                       double statistic, double threshold, double seconds = 0);

// ---------------------------------------------------------------------------
// Sample builders.  Replication i draws from stream (stream_base + i), so
// results are independent of the worker count and any two builders with
// disjoint base ranges are independent.

EmpiricalSample scaled_radius_sample(std::uint64_t n_steps, std::size_t reps,
                                     std::uint64_t seed, std::uint64_t stream_base);

// Radius and centre read off the same replications.
struct DirectSamplePair {
    EmpiricalSample scaled_radius;  // n * (radius - 1/2)
    EmpiricalSample center;
};
DirectSamplePair direct_sample_pair(std::uint64_t n_steps, std::size_t reps,
                                    std::uint64_t seed, std::uint64_t stream_base);

enum class CenterMethod { series, thinned, direct };

// Approximate draws of the limit centre.  series and thinned truncate at
// residual < eps (they share the same recursion; the two names select the
// code path used).  direct runs the full segment chain for direct_steps
// steps and returns its centre.
EmpiricalSample center_sample(std::size_t reps, double eps, std::uint64_t seed,
                              std::uint64_t stream_base, CenterMethod method,
                              std::uint64_t direct_steps = 10000);

// ---------------------------------------------------------------------------
// Checks

// k-th moment of a scaled-radius sample against k! / 4^k, k in {1,2,3};
// statistic is the relative error.
TestReport moment_check(const EmpiricalSample& sample, int k, double rel_tol);

// ---------------------------------------------------------------------------
// Verification suites.  Defaults mirror the acceptance gate; all thresholds
// live here as named fields rather than scattered literals.

struct VerifyConfig {
    // radius-exp / radius-moments / method-equivalence (direct side)
    std::uint64_t radius_steps = 10000;
    std::size_t radius_reps = 20000;
    double radius_ks_threshold = 0.02;  // critical value ~0.0115 plus finite-step slack
    double moment_rel_tol = 0.05;

    // center-arcsine / method-equivalence (series side)
    std::size_t center_reps = 100000;
    double center_eps = 1e-12;
    double center_ks_threshold = 0.01;
    double center_mean_tol = 0.005;
    double equivalence_threshold = 0.02;

    // fixed-point
    std::size_t fixed_point_reps = 100000;
    double fixed_point_threshold = 0.015;

    // gem-identity
    std::size_t gem_reps = 10000;
    std::size_t gem_sticks = 50;
    double gem_tol = 1e-12;

    // domination
    std::uint64_t domination_steps = 100;
    std::size_t domination_reps = 100000;
    double domination_slack = 0.02;

    // maxuniform-exact (deterministic)
    std::size_t maxuniform_grid = 10000;
    double maxuniform_threshold = 0.01;
};

// Suite registry, in report order.  "all" expands to every suite.
const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

// Run the named suites with one shared pool of lazily built samples, so the
// same (seed, config) always produces the same statistics no matter which
// subset of suites is selected.
std::vector<TestReport> run_suites(const std::vector<std::string>& names,
                                   std::uint64_t seed, const VerifyConfig& cfg);

// Individual checks used by the suites; exposed for direct calls.
TestReport fixed_point_check(std::size_t reps, std::uint64_t seed,
                             const VerifyConfig& cfg);
TestReport fixed_point_control(std::size_t reps, std::uint64_t seed,
                               const VerifyConfig& cfg);
std::vector<TestReport> domination_check(std::uint64_t n_steps, std::size_t reps,
                                         std::uint64_t seed, double slack);
std::vector<TestReport> maxuniform_exact_check(std::size_t grid, double threshold);

}  // namespace segproc::stats
