// Command-line driver: experiment grids, dataset checks and fixtures.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ssac/experiment.hpp"

namespace {

struct Flags {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::size_t> reps;
    std::optional<std::size_t> parallel;
    std::optional<std::uint64_t> seed;
};

ssac::ExperimentConfig resolve(const Flags& f) {
    ssac::ExperimentConfig cfg = f.config.empty() ? ssac::ExperimentConfig{} : ssac::load_config(f.config);
    if (f.out) cfg.out_dir = *f.out;
    if (f.reps) cfg.repetitions = *f.reps;
    if (f.parallel) cfg.parallel = *f.parallel;
    if (f.seed) cfg.seed = *f.seed;
    return cfg;
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "key-value or JSON experiment config")->check(CLI::ExistingFile);
    cmd->add_option("--seed", f.seed, "base seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semi-supervised active clustering with weak same-cluster oracles"};
    app.require_subcommand(1);

    Flags run_flags;
    auto* run = app.add_subcommand("run", "run an experiment grid and write runs.csv / summary.csv");
    add_common(run, run_flags);
    run->add_option("--out", run_flags.out, "output directory");
    run->add_option("--reps", run_flags.reps, "repetitions per cell");
    run->add_option("--parallel", run_flags.parallel, "worker threads");

    Flags check_flags;
    auto* check = app.add_subcommand("check", "report margin and recovery conditions of the dataset");
    add_common(check, check_flags);

    std::uint64_t fixture_seed = 0;
    std::string fixture_out;
    auto* fixture = app.add_subcommand("fixture", "write a small labelled dataset in the embedding format");
    fixture->add_option("--seed", fixture_seed, "generator seed");
    fixture->add_option("--out", fixture_out, "output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            ssac::run_and_write(resolve(run_flags), std::cout);
        } else if (check->parsed()) {
            ssac::print_check(std::cout, ssac::check_dataset(resolve(check_flags)));
        } else if (fixture->parsed()) {
            const auto data = ssac::emit_fixture(fixture_seed, fixture_out);
            std::cout << "wrote " << data.dataset.size() << " points to " << fixture_out << '\n';
        }
    } catch (const ssac::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
