#include <CLI11.hpp>

#include <iostream>

#include "heatlab/cli.hpp"

int main(int argc, char** argv) {
    heatlab::RunManifest run;
    CLI::App app{"heatlab: rate-type heat conduction models"};
    app.set_version_flag("--version", heatlab::kVersion);
    app.require_subcommand(1, 1);
    for (const char* name : {"check", "modal", "simulate", "sweep", "audit"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", run.config_path, "flat key=value config file")->required();
        sub->add_option("--out", run.out_dir, "output directory");
        sub->add_option("--seed", run.seed, "seed for randomized sampling");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    run.subcommand = app.get_subcommands().front()->get_name();
    return heatlab::run_command(run, std::cout, std::cerr);
}
