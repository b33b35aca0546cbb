#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace segproc::cli {

// Everything the subcommands need, resolved from flags.  The config is
// serialized into the '# config=' header of every output file so a report
// pins the exact run that produced it.
struct RunConfig {
    std::string subcommand;
    std::uint64_t seed = 0;
    std::uint64_t replications = 10;
    std::uint64_t n_steps = 100;
    std::uint32_t max_n = 70;
    double tol = 1e-10;
    std::optional<std::uint64_t> samples;  // verify: override suite replication counts
    std::optional<std::uint64_t> steps_override;  // verify: override chain length
    std::optional<double> eps_override;           // verify: override series truncation
    std::string suite = "all";
    std::string format = "csv";
    std::string out;  // empty = stdout
    bool trajectory = false;
};

int cmd_simulate(const RunConfig& cfg);
int cmd_density(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

}  // namespace segproc::cli
