#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "run_config.hpp"
#include "segproc/density.hpp"
#include "segproc/stats.hpp"

namespace {

// exit codes: 0 success, 1 runtime error, 2 usage error, 3 verification failure
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
    using segproc::cli::RunConfig;
    RunConfig cfg;
    std::uint64_t samples = 0, steps = 0;
    double eps = 0;

    CLI::App app{"diminishing segment process: simulation, exact expectation "
                 "table, and verification suites"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "rng seed")->capture_default_str();
        sub->add_option("--out", cfg.out, "output path (default: stdout)");
    };

    auto* sim = app.add_subcommand("simulate", "run the segment refinement chain");
    add_common(sim);
    sim->add_option("--n-steps", cfg.n_steps, "refinement steps per replication")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--replications", cfg.replications, "independent chains")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_flag("--trajectory", cfg.trajectory,
                  "emit every step, not just the final state");

    auto* den = app.add_subcommand(
        "density", "exact mean-shrinkage table from the coefficient recursion");
    add_common(den);
    den->add_option("--max-n", cfg.max_n, "levels to compute")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    den->add_option("--tol", cfg.tol, "certified bound on each mean's truncation error")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    den->add_option("--format", cfg.format, "csv or svg scatter")
        ->check(CLI::IsMember({"csv", "svg"}))
        ->capture_default_str();

    auto* ver = app.add_subcommand("verify", "statistical verification suites");
    add_common(ver);
    auto* samples_opt =
        ver->add_option("--samples", samples,
                        "override replication count for the selected suites")
            ->check(CLI::PositiveNumber);
    auto* steps_opt =
        ver->add_option("--n-steps", steps, "override the radius-suite chain length")
            ->check(CLI::PositiveNumber);
    auto* eps_opt =
        ver->add_option("--tol", eps, "override the series truncation eps")
            ->check(CLI::PositiveNumber);
    ver->add_option("--suite", cfg.suite, "suite name or 'all'")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints help or the error message
        return rc == 0 ? 0 : kExitUsage;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (*samples_opt) cfg.samples = samples;
    if (*steps_opt) cfg.steps_override = steps;
    if (*eps_opt) cfg.eps_override = eps;

    if (cfg.subcommand == "verify" && !segproc::stats::is_suite_name(cfg.suite)) {
        std::cerr << "error: unknown suite '" << cfg.suite << "'; choose from";
        for (const auto& s : segproc::stats::suite_names()) std::cerr << ' ' << s;
        std::cerr << " or all\n";
        return kExitUsage;
    }

    try {
        if (cfg.subcommand == "simulate") return segproc::cli::cmd_simulate(cfg);
        if (cfg.subcommand == "density") return segproc::cli::cmd_density(cfg);
        return segproc::cli::cmd_verify(cfg);
    } catch (const segproc::density::TruncationInsufficient& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
