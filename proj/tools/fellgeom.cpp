#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "fellgeom/cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace fellgeom::cli;
    CLI::App app{"Fell bundle geometries and finite spectral triples"};
    app.require_subcommand(1);
    Flags f;
    std::string mode;
    int samples = 0, state = 0;
    app.add_option("--seed", f.seed, "random seed");
    app.add_option("--tol", f.tol, "relative tolerance");
    auto* samples_opt = app.add_option("--samples", samples, "random samples");
    app.add_option("--sector", f.sector, "quark, lepton or all");
    auto* mode_opt = app.add_option("--mode", mode, "partition mode: trace or state-weighted");
    app.add_option("--out", f.out, "CSV output path");
    app.add_option("--function", f.function, "spectral function: x2, x4, cutoff, cutoff:<scale> or poly:<c0>,<c1>,...");
    app.add_option("--shift", f.shift, "constant added to the spectral function");
    app.add_option("--dirac-scale", f.dirac_scale, "multiply D by this factor");
    app.add_option("--random-states", f.random_states, "use this many random states");
    auto* state_opt = app.add_option("--state", state, "index of the state");
    app.add_option("--time", f.time, "flow parameter");
    app.add_option("--continuation", f.continuation, "modular or inverted");
    app.add_option("--steps", f.steps, "Metropolis steps");
    app.add_option("--proposal-scale", f.proposal_scale, "Gaussian proposal width");
    app.add_option("--thin", f.thin, "keep every n-th sample");

    const std::map<std::string, std::string> help = {
        {"check", "verify the Fell bundle and spectral triple axioms"},
        {"enumerate", "list the admissible block patterns"},
        {"count-params", "count free parameters of the mass block"},
        {"exclusions", "leptoquark and sector-mixing exclusions"},
        {"action", "spectral action and its unitary invariance"},
        {"distance", "state distances"},
        {"flow", "modular flow of a state"},
        {"kms", "KMS condition of a state"},
        {"partition", "partition sum over states"},
        {"sample", "Metropolis ensemble over the configuration space"},
        {"generate-dims", "dimensions of the generated algebras"},
        {"diagonalize", "mass spectrum of the mass block"},
    };
    std::string config;
    std::string chosen;
    for (const auto& name : subcommand_names()) {
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->fallthrough();
        sub->add_option("config", config, "bundled config name or path")->required();
        sub->callback([&chosen, name] { chosen = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }
    if (samples_opt->count() > 0) f.samples = samples;
    if (mode_opt->count() > 0) f.mode = mode;
    if (state_opt->count() > 0) f.state = state;
    return run_subcommand(chosen, config, f, std::cout, std::cerr);
}
