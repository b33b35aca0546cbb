#include "segproc/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>

#include "segproc/format.hpp"
#include "segproc/gem.hpp"
#include "segproc/parallel.hpp"
#include "segproc/process.hpp"
#include "segproc/thinned.hpp"

namespace segproc::stats {

namespace {

// Disjoint stream-id blocks, one per sample kind, so every sample builder
// owns an independent slice of the generator's stream space.  Replication i
// of a block uses stream base + i; no block ever needs 2^32 replications.
constexpr std::uint64_t kDirectBase = 0x1'0000'0000ull;
constexpr std::uint64_t kSeriesBase = 0x2'0000'0000ull;
constexpr std::uint64_t kMixBase = 0x3'0000'0000ull;
constexpr std::uint64_t kControlBase = 0x4'0000'0000ull;
constexpr std::uint64_t kGemBase = 0x5'0000'0000ull;
constexpr std::uint64_t kDomShrinkBase = 0x6'0000'0000ull;
constexpr std::uint64_t kDomMaxBase = 0x7'0000'0000ull;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Samples and laws

EmpiricalSample make_sample(std::vector<double> values, SampleMeta meta) {
    if (values.empty())
        throw std::invalid_argument("make_sample: empty sample");
    std::sort(values.begin(), values.end());
    return EmpiricalSample{std::move(values), std::move(meta)};
}

ReferenceLaw ReferenceLaw::exponential(double rate) {
    if (!(rate > 0.0))
        throw std::domain_error("ReferenceLaw::exponential: rate must be positive");
    return ReferenceLaw(Expo{rate});
}

ReferenceLaw ReferenceLaw::translated_arcsine() { return ReferenceLaw(Arcsine{}); }

ReferenceLaw ReferenceLaw::max_uniform(std::uint64_t n, double alpha) {
    if (n < 1 || !(alpha >= 0.0 && alpha <= 0.5))
        throw std::domain_error("ReferenceLaw::max_uniform: need n >= 1, alpha in [0,1/2]");
    return ReferenceLaw(MaxUniformLaw{n, alpha});
}

ReferenceLaw ReferenceLaw::empirical(const EmpiricalSample& sample) {
    if (sample.values.empty())
        throw std::domain_error("ReferenceLaw::empirical: empty sample");
    return ReferenceLaw(
        Empirical{std::make_shared<const std::vector<double>>(sample.values)});
}

double ReferenceLaw::cdf(double x) const {
    struct Visitor {
        double x;
        double operator()(const Expo& e) const {
            return x <= 0.0 ? 0.0 : -std::expm1(-e.rate * x);
        }
        double operator()(const Arcsine&) const {
            if (x <= -0.5) return 0.0;
            if (x >= 0.5) return 1.0;
            return (2.0 / std::numbers::pi) * std::asin(std::sqrt(x + 0.5));
        }
        double operator()(const MaxUniformLaw& m) const { return m.cdf(x); }
        double operator()(const Empirical& e) const {
            const auto& v = *e.values;
            const auto it = std::upper_bound(v.begin(), v.end(), x);
            return static_cast<double>(it - v.begin()) /
                   static_cast<double>(v.size());
        }
    };
    return std::visit(Visitor{x}, kind_);
}

std::string ReferenceLaw::name() const {
    struct Visitor {
        std::string operator()(const Expo& e) const {
            return "Exp(" + format_double(e.rate) + ")";
        }
        std::string operator()(const Arcsine&) const { return "TranslatedArcsine"; }
        std::string operator()(const MaxUniformLaw& m) const {
            return "MaxUniform(n=" + std::to_string(m.n) +
                   ",alpha=" + format_double(m.alpha) + ")";
        }
        std::string operator()(const Empirical& e) const {
            return "Empirical(N=" + std::to_string(e.values->size()) + ")";
        }
    };
    return std::visit(Visitor{}, kind_);
}

bool ReferenceLaw::is_empirical() const {
    return std::holds_alternative<Empirical>(kind_);
}

const std::vector<double>& ReferenceLaw::sample_values() const {
    return *std::get<Empirical>(kind_).values;
}

// ---------------------------------------------------------------------------
// KS machinery

double ks_distance(const EmpiricalSample& sample, const ReferenceLaw& law) {
    if (sample.values.empty())
        throw std::invalid_argument("ks_distance: empty sample");
    if (law.is_empirical())
        return two_sample_ks(sample.values, law.sample_values());
    const auto& v = sample.values;
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = law.cdf(v[i]);
        const double lower = f - static_cast<double>(i) / n;
        const double upper = static_cast<double>(i + 1) / n - f;
        if (lower > d) d = lower;
        if (upper > d) d = upper;
    }
    return d;
}

namespace {

// Walk both sorted samples; at every jump point (ties advanced together)
// visit combine(Fa, Fb).  The sup of any function of the two ECDFs over all
// reals is attained at these points or at -inf, where both are 0.
template <typename F>
double scan_ecdfs(const std::vector<double>& a, const std::vector<double>& b,
                  F combine) {
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double best = combine(0.0, 0.0);
    while (i < a.size() || j < b.size()) {
        double x;
        if (i < a.size() && (j >= b.size() || a[i] <= b[j]))
            x = a[i];
        else
            x = b[j];
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        const double val =
            combine(static_cast<double>(i) / na, static_cast<double>(j) / nb);
        if (val > best) best = val;
    }
    return best;
}

}  // namespace

double two_sample_ks(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("two_sample_ks: empty sample");
    return scan_ecdfs(a, b, [](double fa, double fb) { return std::abs(fa - fb); });
}

double ecdf_excess(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ecdf_excess: empty sample");
    return scan_ecdfs(a, b, [](double fa, double fb) { return fa - fb; });
}

double ks_critical(double alpha, std::size_t n) {
    if (!(alpha > 0.0 && alpha < 1.0) || n == 0)
        throw std::domain_error("ks_critical: need 0 < alpha < 1, n >= 1");
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) /
           std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m) {
    if (!(alpha > 0.0 && alpha < 1.0) || n == 0 || m == 0)
        throw std::domain_error("ks_critical_two_sample: bad arguments");
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) * std::sqrt((nn + mm) / (nn * mm));
}

TestReport make_report(std::string suite, std::string check, std::size_t samples,
                       double statistic, double threshold, double seconds) {
    TestReport r;
    r.suite = std::move(suite);
    r.check = std::move(check);
    r.samples = samples;
    r.statistic = statistic;
    r.threshold = threshold;
    r.pass = statistic <= threshold;
    r.seconds = seconds;
    return r;
}

// ---------------------------------------------------------------------------
// Sample builders

EmpiricalSample scaled_radius_sample(std::uint64_t n_steps, std::size_t reps,
                                     std::uint64_t seed, std::uint64_t stream_base) {
    if (n_steps < 1 || reps < 1)
        throw std::invalid_argument("scaled_radius_sample: need n_steps, reps >= 1");
    std::vector<double> out(reps);
    parallel_for(reps, [&](std::size_t i) {
        RngStream rng(seed, stream_base + i);
        const ProcessState st = run_direct_final(n_steps, rng);
        out[i] = static_cast<double>(n_steps) * (st.seg.radius() - 0.5);
    });
    SampleMeta meta{seed, stream_base,
                    "scaled_radius(n=" + std::to_string(n_steps) +
                        ",reps=" + std::to_string(reps) + ")"};
    return make_sample(std::move(out), std::move(meta));
}

DirectSamplePair direct_sample_pair(std::uint64_t n_steps, std::size_t reps,
                                    std::uint64_t seed, std::uint64_t stream_base) {
    if (n_steps < 1 || reps < 1)
        throw std::invalid_argument("direct_sample_pair: need n_steps, reps >= 1");
    std::vector<double> rad(reps), cen(reps);
    parallel_for(reps, [&](std::size_t i) {
        RngStream rng(seed, stream_base + i);
        const ProcessState st = run_direct_final(n_steps, rng);
        rad[i] = static_cast<double>(n_steps) * (st.seg.radius() - 0.5);
        cen[i] = st.seg.center();
    });
    const std::string suffix =
        "(n=" + std::to_string(n_steps) + ",reps=" + std::to_string(reps) + ")";
    DirectSamplePair pair{
        make_sample(std::move(rad), {seed, stream_base, "scaled_radius" + suffix}),
        make_sample(std::move(cen), {seed, stream_base, "direct_center" + suffix})};
    return pair;
}

EmpiricalSample center_sample(std::size_t reps, double eps, std::uint64_t seed,
                              std::uint64_t stream_base, CenterMethod method,
                              std::uint64_t direct_steps) {
    if (reps < 1) throw std::invalid_argument("center_sample: need reps >= 1");
    std::vector<double> out(reps);
    std::string how;
    switch (method) {
        case CenterMethod::series:
            parallel_for(reps, [&](std::size_t i) {
                RngStream rng(seed, stream_base + i);
                out[i] = sample_center_series(eps, rng);
            });
            how = "center_series(eps=" + format_double(eps) + ")";
            break;
        case CenterMethod::thinned:
            parallel_for(reps, [&](std::size_t i) {
                RngStream rng(seed, stream_base + i);
                ThinnedState st;
                while (st.r >= eps) st = step_thinned(st, rng);
                out[i] = st.z;
            });
            how = "center_thinned(eps=" + format_double(eps) + ")";
            break;
        case CenterMethod::direct:
            if (direct_steps < 1)
                throw std::invalid_argument("center_sample: need direct_steps >= 1");
            parallel_for(reps, [&](std::size_t i) {
                RngStream rng(seed, stream_base + i);
                out[i] = run_direct_final(direct_steps, rng).seg.center();
            });
            how = "center_direct(n=" + std::to_string(direct_steps) + ")";
            break;
    }
    SampleMeta meta{seed, stream_base, how + "[reps=" + std::to_string(reps) + "]"};
    return make_sample(std::move(out), std::move(meta));
}

// ---------------------------------------------------------------------------
// Checks

namespace {

double sequential_mean(const std::vector<double>& v, int power) {
    double acc = 0.0;
    for (const double x : v) {
        double t = x;
        for (int p = 1; p < power; ++p) t *= x;
        acc += t;
    }
    return acc / static_cast<double>(v.size());
}

EmpiricalSample fixed_point_mix_sample(std::size_t reps, double eps,
                                       std::uint64_t seed, std::uint64_t base,
                                       bool uniform_control) {
    std::vector<double> out(reps);
    parallel_for(reps, [&](std::size_t i) {
        RngStream rng(seed, base + i);
        const ThinnedState first = step_thinned(ThinnedState{}, rng);
        double inner;
        if (uniform_control)
            inner = rng.uniform01() - 0.5;
        else
            inner = sample_center_series(eps, rng);
        out[i] = first.r * inner + first.z;
    });
    SampleMeta meta{seed, base,
                    std::string(uniform_control ? "mix_uniform_control"
                                                : "mix_series") +
                        "(reps=" + std::to_string(reps) + ")"};
    return make_sample(std::move(out), std::move(meta));
}

}  // namespace

TestReport moment_check(const EmpiricalSample& sample, int k, double rel_tol) {
    if (k < 1 || k > 3)
        throw std::invalid_argument("moment_check: k must be 1, 2, or 3");
    static constexpr double targets[] = {0.25, 0.125, 0.09375};  // k!/4^k
    const double target = targets[k - 1];
    const double m = sequential_mean(sample.values, k);
    const double stat = std::abs(m - target) / target;
    return make_report("radius-moments", "moment-" + std::to_string(k),
                       sample.values.size(), stat, rel_tol);
}

TestReport fixed_point_check(std::size_t reps, std::uint64_t seed,
                             const VerifyConfig& cfg) {
    Timer t;
    const EmpiricalSample z =
        center_sample(reps, cfg.center_eps, seed, kSeriesBase, CenterMethod::series);
    const EmpiricalSample mix =
        fixed_point_mix_sample(reps, cfg.center_eps, seed, kMixBase, false);
    const double d = two_sample_ks(z.values, mix.values);
    return make_report("fixed-point", "ks-mix-vs-series", reps, d,
                       cfg.fixed_point_threshold, t.elapsed());
}

TestReport fixed_point_control(std::size_t reps, std::uint64_t seed,
                               const VerifyConfig& cfg) {
    Timer t;
    const EmpiricalSample z =
        center_sample(reps, cfg.center_eps, seed, kSeriesBase, CenterMethod::series);
    const EmpiricalSample ctl =
        fixed_point_mix_sample(reps, cfg.center_eps, seed, kControlBase, true);
    const double d = two_sample_ks(z.values, ctl.values);
    // negative control: the claim "d <= threshold" must fail, so the margin
    // threshold - d must be <= 0
    return make_report("fixed-point", "uniform-control", reps,
                       cfg.fixed_point_threshold - d, 0.0, t.elapsed());
}

std::vector<TestReport> domination_check(std::uint64_t n_steps, std::size_t reps,
                                         std::uint64_t seed, double slack) {
    if (n_steps < 1 || reps < 1)
        throw std::invalid_argument("domination_check: need n_steps, reps >= 1");
    std::vector<TestReport> out;

    Timer t;
    std::vector<double> shrink(reps), maxdev(reps);
    parallel_for(reps, [&](std::size_t i) {
        RngStream rng(seed, kDomShrinkBase + i);
        shrink[i] = run_direct_final(n_steps, rng).s;
    });
    parallel_for(reps, [&](std::size_t i) {
        RngStream rng(seed, kDomMaxBase + i);
        maxdev[i] = sample_max_uniform(n_steps, 0.0, rng);
    });
    std::sort(shrink.begin(), shrink.end());
    std::sort(maxdev.begin(), maxdev.end());
    // the max device should sit stochastically above the shrinkage: its ECDF
    // may undershoot the shrinkage ECDF by at most the slack
    const double excess = ecdf_excess(shrink, maxdev);
    out.push_back(make_report("domination", "ecdf-slack", reps, excess, slack,
                              t.elapsed()));

    // one-step closed forms: shrinkage is uniform on [0,1/2] (CDF 2x), the
    // device is uniform on [1/4,1/2] (CDF 4(x-1/4) clipped); domination means
    // device CDF <= shrinkage CDF everywhere.  Both are piecewise linear, so
    // a grid sup is exact up to grid resolution; the pieces' endpoints are on
    // the grid.
    Timer t2;
    const std::size_t grid = 1000;
    const MaxUniformLaw m1{1, 0.0};
    double sup_forward = 0.0;  // device CDF minus shrinkage CDF
    double sup_swapped = 0.0;  // shrinkage CDF minus device CDF
    for (std::size_t j = 0; j <= grid; ++j) {
        const double x = 0.5 * static_cast<double>(j) / static_cast<double>(grid);
        const double fs = 2.0 * x;
        const double fm = m1.cdf(x);
        sup_forward = std::max(sup_forward, fm - fs);
        sup_swapped = std::max(sup_swapped, fs - fm);
    }
    out.push_back(make_report("domination", "closed-form-n1", grid + 1,
                              sup_forward, 0.0, t2.elapsed()));
    // swapped direction must fail the same zero-slack claim
    out.push_back(make_report("domination", "swapped-n1-control", grid + 1,
                              0.0 - sup_swapped, 0.0, t2.elapsed()));
    return out;
}

std::vector<TestReport> maxuniform_exact_check(std::size_t grid, double threshold) {
    if (grid < 2)
        throw std::invalid_argument("maxuniform_exact_check: grid too small");
    std::vector<TestReport> out;
    for (const double alpha : {0.0, 0.25}) {
        const double w = 0.25 + 0.5 * alpha;
        double dist[3] = {0, 0, 0};
        const std::uint64_t ns[3] = {10, 100, 1000};
        for (int idx = 0; idx < 3; ++idx) {
            const double n = static_cast<double>(ns[idx]);
            // scaled deviation n(1/2 - M) has CDF 1 - (1 - y/(n w))^n on
            // [0, n w]; compare against the exponential limit 1 - e^{-y/w}
            double d = 0.0;
            for (std::size_t j = 0; j < grid; ++j) {
                const double y = n * w * static_cast<double>(j) /
                                 static_cast<double>(grid - 1);
                const double exact = std::pow(1.0 - y / (n * w), n);
                const double limit = std::exp(-y / w);
                d = std::max(d, std::abs(exact - limit));
            }
            dist[idx] = d;
        }
        const std::string tag = alpha == 0.0 ? "alpha0" : "alpha25";
        out.push_back(make_report("maxuniform-exact", tag + "-sup-n1000", grid,
                                  dist[2], threshold));
        const double worst_increase =
            std::max(dist[1] - dist[0], dist[2] - dist[1]);
        out.push_back(make_report("maxuniform-exact", tag + "-decreasing", grid,
                                  worst_increase, 0.0));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Suites

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "radius-exp",   "radius-moments", "center-arcsine",
        "method-equivalence", "fixed-point", "gem-identity",
        "domination",   "maxuniform-exact"};
    return names;
}

bool is_suite_name(const std::string& name) {
    if (name == "all") return true;
    const auto& names = suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

// Lazily built samples shared across suites, so statistics depend only on
// (seed, config), never on which subset of suites was selected.
struct SampleBank {
    std::uint64_t seed;
    const VerifyConfig& cfg;
    std::optional<DirectSamplePair> direct_;
    std::optional<EmpiricalSample> series_;

    const DirectSamplePair& direct() {
        if (!direct_)
            direct_ = direct_sample_pair(cfg.radius_steps, cfg.radius_reps, seed,
                                         kDirectBase);
        return *direct_;
    }
    const EmpiricalSample& series() {
        if (!series_)
            series_ = center_sample(cfg.center_reps, cfg.center_eps, seed,
                                    kSeriesBase, CenterMethod::series);
        return *series_;
    }
};

void run_one_suite(const std::string& name, SampleBank& bank,
                   std::vector<TestReport>& out) {
    const std::uint64_t seed = bank.seed;
    const VerifyConfig& cfg = bank.cfg;

    if (name == "radius-exp") {
        Timer t;
        const double d =
            ks_distance(bank.direct().scaled_radius, ReferenceLaw::exponential(4.0));
        out.push_back(make_report("radius-exp", "ks-exp4", cfg.radius_reps, d,
                                  cfg.radius_ks_threshold, t.elapsed()));
    } else if (name == "radius-moments") {
        for (int k = 1; k <= 3; ++k) {
            Timer t;
            TestReport r =
                moment_check(bank.direct().scaled_radius, k, cfg.moment_rel_tol);
            r.seconds = t.elapsed();
            out.push_back(std::move(r));
        }
    } else if (name == "center-arcsine") {
        Timer t;
        const EmpiricalSample& z = bank.series();
        const double d = ks_distance(z, ReferenceLaw::translated_arcsine());
        out.push_back(make_report("center-arcsine", "ks-arcsine", cfg.center_reps,
                                  d, cfg.center_ks_threshold, t.elapsed()));
        Timer t2;
        const double mean = std::abs(sequential_mean(z.values, 1));
        out.push_back(make_report("center-arcsine", "mean-zero", cfg.center_reps,
                                  mean, cfg.center_mean_tol, t2.elapsed()));
    } else if (name == "method-equivalence") {
        Timer t;
        const double d =
            two_sample_ks(bank.series().values, bank.direct().center.values);
        out.push_back(make_report("method-equivalence", "ks-series-vs-direct",
                                  cfg.center_reps + cfg.radius_reps, d,
                                  cfg.equivalence_threshold, t.elapsed()));
    } else if (name == "fixed-point") {
        out.push_back(fixed_point_check(cfg.fixed_point_reps, seed, cfg));
        out.push_back(fixed_point_control(cfg.fixed_point_reps, seed, cfg));
    } else if (name == "gem-identity") {
        Timer t;
        std::vector<double> simplex(cfg.gem_reps), product(cfg.gem_reps);
        parallel_for(cfg.gem_reps, [&](std::size_t i) {
            RngStream rng(seed, kGemBase + i);
            const GemVector g = sample_gem(cfg.gem_sticks, rng);
            double sum = 0.0;
            for (const double v : g.v) sum += v;
            simplex[i] = std::abs(1.0 - g.residual - sum);
            // replay the same stream to recompute the product of the raw
            // uniforms in draw order
            RngStream replay(seed, kGemBase + i);
            double prod = 1.0;
            for (std::size_t s = 0; s < cfg.gem_sticks; ++s)
                prod *= replay.uniform01();
            product[i] = std::abs(g.residual - prod);
        });
        const double worst_simplex =
            *std::max_element(simplex.begin(), simplex.end());
        const double worst_product =
            *std::max_element(product.begin(), product.end());
        out.push_back(make_report("gem-identity", "simplex-defect", cfg.gem_reps,
                                  worst_simplex, cfg.gem_tol, t.elapsed()));
        out.push_back(make_report("gem-identity", "product-identity", cfg.gem_reps,
                                  worst_product, cfg.gem_tol, t.elapsed()));
    } else if (name == "domination") {
        auto reports = domination_check(cfg.domination_steps, cfg.domination_reps,
                                        seed, cfg.domination_slack);
        for (auto& r : reports) out.push_back(std::move(r));
    } else if (name == "maxuniform-exact") {
        auto reports =
            maxuniform_exact_check(cfg.maxuniform_grid, cfg.maxuniform_threshold);
        for (auto& r : reports) out.push_back(std::move(r));
    } else {
        throw std::invalid_argument("unknown suite: " + name);
    }
}

}  // namespace

std::vector<TestReport> run_suites(const std::vector<std::string>& names,
                                   std::uint64_t seed, const VerifyConfig& cfg) {
    std::set<std::string> selected;
    for (const auto& n : names) {
        if (!is_suite_name(n))
            throw std::invalid_argument("unknown suite: " + n);
        if (n == "all")
            for (const auto& s : suite_names()) selected.insert(s);
        else
            selected.insert(n);
    }
    if (selected.empty())
        throw std::invalid_argument("no suites selected");

    SampleBank bank{seed, cfg};
    std::vector<TestReport> out;
    for (const auto& suite : suite_names())
        if (selected.count(suite)) run_one_suite(suite, bank, out);
    return out;
}

}  // namespace segproc::stats
