#ifndef SSAC_EXPERIMENT_HPP
#define SSAC_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ssac/algorithm.hpp"
#include "ssac/datagen.hpp"
#include "ssac/eval.hpp"
#include "ssac/theorem.hpp"

namespace ssac {

struct ExperimentConfig {
    enum class Source { Synthetic, Embedding };

    Source source = Source::Synthetic;
    SynthConfig synth;  // synth.seed is ignored; data seeds derive from `seed`
    std::filesystem::path embedding_path;
    std::set<int> labels;  // embedding rows to keep, empty keeps all

    std::vector<std::string> oracles{"local"};  // perfect | local | global
    std::vector<double> c_dist{0.6, 0.8, 1.0};
    std::vector<double> eta{2, 5, 10, 20, 30};
    std::size_t beta = 1;
    double delta = 0.1;
    std::vector<Variant> variants{Variant::Improved, Variant::Vanilla};
    std::size_t repetitions = 1000;
    std::uint64_t seed = 0;
    std::filesystem::path out_dir = "results";
    std::size_t parallel = 1;

    std::optional<double> epsilon;  // `check` only; defaults to (gamma - 1) / 2

    void validate() const;
};

// "key = value" lines ('#' comments, comma-separated lists) or a JSON object
// with the same keys. Unknown keys throw UsageError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// splitmix64-based combination of seed material.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
std::uint64_t cell_seed(std::uint64_t base, const CellKey& cell, std::size_t rep);
std::uint64_t data_seed(std::uint64_t base, std::size_t rep);

// The dataset repetition `rep` runs on.
LabeledDataset experiment_dataset(const ExperimentConfig& cfg, std::size_t rep);

// Weak-oracle kind for an oracle name, c_dist and dataset margin.
OracleKind oracle_for(const std::string& name, double c_dist, const ExtendedReal& gamma);

// Cells in canonical order: variant, then oracle, then c_dist, then eta.
std::vector<CellKey> grid_cells(const ExperimentConfig& cfg);

struct GridResult {
    std::vector<RunResult> runs;  // sorted by cell, then repetition
    std::vector<CellSummary> summary;
};

// Runs every cell `repetitions` times. Synthetic data is drawn once per
// repetition and shared by all cells of that repetition; the embedding is
// loaded once. Output order does not depend on `parallel`.
GridResult run_grid(const ExperimentConfig& cfg);

void write_runs_csv(std::ostream& out, const std::vector<RunResult>& runs);
void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& cells);
void print_summary(std::ostream& out, const std::vector<CellSummary>& cells);

// run_grid plus runs.csv / summary.csv under cfg.out_dir.
GridResult run_and_write(const ExperimentConfig& cfg, std::ostream& console);

struct ConditionVerdict {
    WeakModel model = WeakModel::Local;
    double c_dist = 1.0;
    WeakParams params;
    double epsilon = 0.0;
    CoverageReport report;
};

struct DatasetCheck {
    std::size_t points = 0;
    int k = 0;
    ExtendedReal gamma = ExtendedReal::infinite();
    bool center_based = false;
    std::vector<double> min_ratios;  // per cluster, min d(x, mu) / r
    std::vector<ConditionVerdict> verdicts;
    std::string note;  // set when the conditions cannot be evaluated
};

// Inspects the repetition-0 dataset: margin, coverage ratios and the weak
// recovery conditions for every configured weak oracle and c_dist.
DatasetCheck check_dataset(const ExperimentConfig& cfg);
void print_check(std::ostream& out, const DatasetCheck& check);

// Small labelled dataset in the embedding file format.
LabeledDataset emit_fixture(std::uint64_t seed, const std::filesystem::path& path);

}  // namespace ssac

#endif  // SSAC_EXPERIMENT_HPP
