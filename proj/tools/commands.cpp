#include "run_config.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "segproc/density.hpp"
#include "segproc/format.hpp"
#include "segproc/process.hpp"
#include "segproc/rng.hpp"
#include "segproc/stats.hpp"
#include "svg.hpp"

namespace segproc::cli {

namespace {

std::string describe_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << cfg.subcommand;
    if (cfg.subcommand == "simulate") {
        os << ",n_steps=" << cfg.n_steps << ",replications=" << cfg.replications
           << ",trajectory=" << (cfg.trajectory ? 1 : 0);
    } else if (cfg.subcommand == "density") {
        os << ",max_n=" << cfg.max_n << ",tol=" << format_double(cfg.tol)
           << ",format=" << cfg.format;
    } else if (cfg.subcommand == "verify") {
        os << ",suite=" << cfg.suite;
        if (cfg.samples) os << ",samples=" << *cfg.samples;
        if (cfg.steps_override) os << ",n_steps=" << *cfg.steps_override;
        if (cfg.eps_override) os << ",eps=" << format_double(*cfg.eps_override);
    }
    return os.str();
}

std::vector<std::string> header_comments(const RunConfig& cfg) {
    return {"seed=" + std::to_string(cfg.seed), "config=" + describe_config(cfg),
            "generator=" + describe_generator()};
}

// Write to --out or stdout; returns false (as exit 1) only on I/O failure.
int write_output(const RunConfig& cfg, const std::string& body) {
    if (cfg.out.empty()) {
        std::cout << body;
        std::cout.flush();
        return std::cout ? 0 : 1;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file: " << cfg.out << '\n';
        return 1;
    }
    f << body;
    f.close();
    if (!f) {
        std::cerr << "error: write failed: " << cfg.out << '\n';
        return 1;
    }
    return 0;
}

std::string csv_to_string(const CsvDoc& doc) {
    std::ostringstream os;
    write_csv(os, doc);
    return os.str();
}

stats::VerifyConfig make_verify_config(const RunConfig& cfg) {
    stats::VerifyConfig vc;
    if (cfg.samples) {
        vc.radius_reps = *cfg.samples;
        vc.center_reps = *cfg.samples;
        vc.fixed_point_reps = *cfg.samples;
        vc.gem_reps = *cfg.samples;
        vc.domination_reps = *cfg.samples;
    }
    if (cfg.steps_override) vc.radius_steps = *cfg.steps_override;
    if (cfg.eps_override) vc.center_eps = *cfg.eps_override;
    return vc;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg) {
    CsvDoc doc;
    doc.comments = header_comments(cfg);
    doc.columns = {"replication", "n", "centre", "radius"};
    for (std::uint64_t r = 0; r < cfg.replications; ++r) {
        RngStream rng(cfg.seed, r);
        if (cfg.trajectory) {
            const auto path = run_direct(cfg.n_steps, rng);
            for (const auto& st : path)
                doc.rows.push_back({std::to_string(r), std::to_string(st.step),
                                    format_double(st.seg.center()),
                                    format_double(st.seg.radius())});
        } else {
            const auto st = run_direct_final(cfg.n_steps, rng);
            doc.rows.push_back({std::to_string(r), std::to_string(st.step),
                                format_double(st.seg.center()),
                                format_double(st.seg.radius())});
        }
    }
    return write_output(cfg, csv_to_string(doc));
}

int cmd_density(const RunConfig& cfg) {
    const auto table = density::build_table(static_cast<int>(cfg.max_n), cfg.tol);
    const auto schedule = density::expectation_schedule(table);

    if (cfg.format == "svg") {
        ScatterPlot plot;
        plot.title = "n(1/2 - E S_n) by level";
        plot.x_label = "n";
        plot.y_label = "n(1/2 - E S_n)";
        plot.header_comments = header_comments(cfg);
        for (const auto& row : schedule)
            plot.points.emplace_back(static_cast<double>(row.n), row.figure_value);
        plot.reference_y = 0.25;
        plot.draw_reference = true;
        return write_output(cfg, render_scatter_svg(plot));
    }

    CsvDoc doc;
    doc.comments = header_comments(cfg);
    doc.columns = {"n", "es", "figure_value", "tail_bound"};
    for (const auto& row : schedule)
        doc.rows.push_back({std::to_string(row.n), format_double(row.es_d),
                            format_double(row.figure_value),
                            format_double(row.tail_bound)});
    return write_output(cfg, csv_to_string(doc));
}

int cmd_verify(const RunConfig& cfg) {
    const stats::VerifyConfig vc = make_verify_config(cfg);
    const auto reports = stats::run_suites({cfg.suite}, cfg.seed, vc);

    CsvDoc doc;
    doc.comments = header_comments(cfg);
    doc.columns = {"suite", "check", "samples", "statistic", "threshold", "pass"};
    bool all_pass = true;
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        doc.rows.push_back({r.suite, r.check, std::to_string(r.samples),
                            format_double(r.statistic), format_double(r.threshold),
                            r.pass ? "1" : "0"});
    }

    // human-readable table; kept apart from the machine CSV so report bytes
    // stay reproducible (wall times vary run to run)
    std::ostream& hout = cfg.out.empty() ? std::cerr : std::cout;
    hout << std::left << std::setw(20) << "suite" << std::setw(24) << "check"
         << std::right << std::setw(9) << "samples" << std::setw(14)
         << "statistic" << std::setw(11) << "threshold" << std::setw(7) << "pass"
         << std::setw(10) << "seconds" << '\n';
    for (const auto& r : reports) {
        std::ostringstream stat, thr, sec;
        stat << std::setprecision(4) << std::scientific << r.statistic;
        thr << std::setprecision(3) << std::defaultfloat << r.threshold;
        sec << std::setprecision(2) << std::fixed << r.seconds;
        hout << std::left << std::setw(20) << r.suite << std::setw(24) << r.check
             << std::right << std::setw(9) << r.samples << std::setw(14)
             << stat.str() << std::setw(11) << thr.str() << std::setw(7)
             << (r.pass ? "ok" : "FAIL") << std::setw(10) << sec.str() << '\n';
    }
    hout.flush();

    const int rc = write_output(cfg, csv_to_string(doc));
    if (rc != 0) return rc;
    return all_pass ? 0 : 3;
}

}  // namespace segproc::cli
