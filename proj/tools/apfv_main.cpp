#include <cstdlib>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "apfv/chapman_enskog.hpp"
#include "apfv/harness.hpp"
#include "apfv/models.hpp"

namespace {

void print_report(const apfv::RunReport& rep, bool strict, int& exit_code)
{
    std::cout << std::setprecision(6);
    std::cout << "steps:          " << rep.steps << "\n";
    std::cout << "dt:             " << rep.dt << "\n";
    std::cout << "wall seconds:   " << rep.wall_seconds << "\n";
    if (!rep.diagnostics.empty()) {
        const auto& last = rep.diagnostics.back();
        std::cout << "final time:     " << last.time << "\n";
        std::cout << "final mass:     " << last.mass.transpose() << "\n";
        if (std::isfinite(last.entropy))
            std::cout << "final entropy:  " << last.entropy << "\n";
        std::cout << "u range:        [" << last.umin.transpose() << "] .. ["
                  << last.umax.transpose() << "]\n";
        if (last.floor_events > 0)
            std::cout << "floor events:   " << last.floor_events << "\n";
    }
    if (!rep.snapshot_files.empty())
        std::cout << "snapshots:      " << rep.snapshot_files.size() << " file(s), last "
                  << rep.snapshot_files.back() << "\n";
    if (!rep.diagnostics_file.empty())
        std::cout << "diagnostics:    " << rep.diagnostics_file << "\n";
    if (rep.max_entropy_increase > 1e-10) {
        std::cout << "WARNING: entropy increased by relative "
                  << rep.max_entropy_increase << " in at least one step\n";
        if (strict) exit_code = 2;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"1-D finite-volume solvers for balance laws with stiff relaxation"};
    app.require_subcommand(1);
    bool strict = false;
    app.add_flag("--strict", strict, "nonzero exit on diagnostic violations");

    std::string run_config;
    auto* cmd_run = app.add_subcommand("run", "execute a configured simulation");
    cmd_run->add_option("config", run_config, "config file")->required();

    std::string val_model;
    int val_samples = 200;
    auto* cmd_val = app.add_subcommand("validate", "spot-check model assumptions");
    cmd_val->add_option("model", val_model, "model name")->required();
    cmd_val->add_option("--samples", val_samples, "sample count");

    std::string cor_model;
    int cor_samples = 100;
    auto* cmd_cor = app.add_subcommand("corrector", "numeric vs analytic corrector");
    cmd_cor->add_option("model", cor_model, "model name")->required();
    cmd_cor->add_option("--samples", cor_samples, "sample count");

    std::string conv_config;
    int conv_levels = 3;
    auto* cmd_conv = app.add_subcommand("converge", "grid refinement study");
    cmd_conv->add_option("config", conv_config, "config file")->required();
    cmd_conv->add_option("--levels", conv_levels, "number of refinement levels");

    std::string cmp_a, cmp_b, cmp_norm = "L1";
    auto* cmd_cmp = app.add_subcommand("compare", "norm of snapshot difference");
    cmd_cmp->add_option("a", cmp_a, "snapshot CSV (coarse)")->required();
    cmd_cmp->add_option("b", cmp_b, "snapshot CSV (same grid or finer)")->required();
    cmd_cmp->add_option("--norm", cmp_norm, "L1 | L2 | Linf");

    CLI11_PARSE(app, argc, argv);

    int exit_code = 0;
    try {
        if (cmd_run->parsed()) {
            const apfv::RunReport rep = apfv::run(apfv::parse_config(run_config));
            print_report(rep, strict, exit_code);
        } else if (cmd_val->parsed()) {
            const auto m = apfv::make_model(val_model);
            const auto report = apfv::validate_model(*m, val_samples);
            std::cout << report.summary();
            std::cout << (report.ok() ? "OK" : "VIOLATIONS FOUND") << "\n";
            if (!report.ok()) exit_code = 2;
        } else if (cmd_cor->parsed()) {
            const auto m = apfv::make_model(cor_model);
            const auto rep = apfv::corrector_report(*m, cor_samples);
            std::cout << rep.table;
            std::cout << "samples:      " << rep.samples << "\n";
            std::cout << "max rel U1:   " << rep.max_rel_u1 << "\n";
            std::cout << "max rel flux: " << rep.max_rel_flux << "\n";
            if (strict && (rep.max_rel_u1 > 1e-8 || rep.max_rel_flux > 1e-8))
                exit_code = 2;
        } else if (cmd_conv->parsed()) {
            const auto rows =
                apfv::converge(apfv::parse_config(conv_config), conv_levels);
            std::cout << "cells,L1_error,rate\n" << std::setprecision(6);
            for (const auto& r : rows)
                std::cout << r.num_cells << "," << r.error << "," << r.rate << "\n";
        } else if (cmd_cmp->parsed()) {
            const auto res = apfv::compare(apfv::read_csv(cmp_a), apfv::read_csv(cmp_b),
                                           apfv::parse_norm(cmp_norm));
            std::cout << std::setprecision(17);
            std::cout << "absolute: " << res.absolute << "\n";
            std::cout << "relative: " << res.relative << "\n";
        }
    } catch (const apfv::SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
