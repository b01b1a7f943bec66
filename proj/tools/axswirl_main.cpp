#include "axswirl/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Axisymmetric Navier-Stokes solver with a regularity-estimate monitor"};
    app.require_subcommand(1);

    std::string scenario;
    auto* run = app.add_subcommand("run", "Run one scenario file");
    run->add_option("scenario", scenario, "Scenario JSON")->required();

    std::string a, b, gamma;
    auto* exps = app.add_subcommand("check-exponents", "Admissibility and derived exponents of (a, b, gamma)");
    exps->add_option("a", a)->required();
    exps->add_option("b", b, "number or inf")->required();
    exps->add_option("gamma", gamma)->required();

    std::string kind;
    std::vector<int> levels;
    auto* mms = app.add_subcommand("mms", "Convergence study on a manufactured solution");
    mms->add_option("kind", kind, "rigid_rotation, decaying_swirl, taylor_vortex_swirl or negative_control")
        ->required();
    mms->add_option("levels", levels, "n_rho per level, each doubling the previous")->required();

    std::string dir;
    auto* sweep = app.add_subcommand("sweep", "Run every scenario in a directory concurrently");
    sweep->add_option("dir", dir, "Directory of *.json scenarios")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : axswirl::exit_code::config;
    }

    try {
        if (*run) return axswirl::run_scenario_file(scenario, std::cout, std::cerr);
        if (*exps) return axswirl::check_exponents(a, b, gamma, std::cout, std::cerr);
        if (*mms) return axswirl::mms_report(kind, levels, std::cout, std::cerr);
        if (*sweep) return axswirl::sweep_directory(dir, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return axswirl::exit_code::internal;
    }
    return axswirl::exit_code::internal;
}
