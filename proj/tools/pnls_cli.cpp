#include "pnls_harness/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace pnls::harness;

    CLI::App app{"Pseudospectral p-NLS experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", code_version());

    RunOptions opts;
    std::string out;
    std::uint64_t seed = 0;

    for (const char* name : {"simulate", "smoothing", "resonance", "attractor"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opts.config_path, "INI config file")->required();
        sub->add_option("--out", out, "run registry directory (default: [output] dir)");
        sub->add_option("--threads", opts.threads, "worker threads");
        sub->add_option("--seed-override", seed, "replace [experiment] seed");
    }
    auto* rep = app.add_subcommand("report", "aggregate manifests into report.csv");
    rep->add_option("--out", out, "run registry directory")->default_val("runs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_schema;
    }

    const auto* chosen = app.get_subcommands().front();
    if (chosen->get_name() == "report") return report(out, std::cout);

    if (!out.empty()) opts.out = out;
    if (chosen->count("--seed-override")) opts.seed_override = seed;
    return run(parse_command(chosen->get_name()), opts, std::cout);
}
