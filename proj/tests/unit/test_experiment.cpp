#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ssac/experiment.hpp"

namespace ssac {
namespace {

namespace fs = std::filesystem;

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.synth.n = 90;
    cfg.oracles = {"local"};
    cfg.c_dist = {1.0};
    cfg.eta = {2.0};
    cfg.variants = {Variant::Improved};
    cfg.repetitions = 1;
    cfg.seed = 3;
    return cfg;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("ssac_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST(ParseConfig, KeyValue) {
    const auto cfg = parse_config(
        "# grid\n"
        "oracles = local, global\n"
        "c_dist = 0.6, 1.0\n"
        "eta = 2, 30   # ends\n"
        "variants = improved\n"
        "reps = 7\n"
        "seed = 11\n"
        "n = 300\n"
        "beta = 2\n"
        "out = somewhere\n");
    EXPECT_EQ(cfg.oracles, (std::vector<std::string>{"local", "global"}));
    EXPECT_EQ(cfg.c_dist, (std::vector<double>{0.6, 1.0}));
    EXPECT_EQ(cfg.eta, (std::vector<double>{2.0, 30.0}));
    EXPECT_EQ(cfg.variants, (std::vector<Variant>{Variant::Improved}));
    EXPECT_EQ(cfg.repetitions, 7u);
    EXPECT_EQ(cfg.seed, 11u);
    EXPECT_EQ(cfg.synth.n, 300u);
    EXPECT_EQ(cfg.beta, 2u);
    EXPECT_EQ(cfg.out_dir, fs::path("somewhere"));
}

TEST(ParseConfig, Json) {
    const auto cfg = parse_config(R"({"oracles": ["global"], "c_dist": [0.7, 0.85], "eta": [5], "repetitions": 4,
                                      "source": "embedding", "embedding": "x.csv", "labels": [0, 6]})");
    EXPECT_EQ(cfg.oracles, (std::vector<std::string>{"global"}));
    EXPECT_EQ(cfg.c_dist.size(), 2u);
    EXPECT_EQ(cfg.repetitions, 4u);
    EXPECT_EQ(cfg.source, ExperimentConfig::Source::Embedding);
    EXPECT_EQ(cfg.labels, (std::set<int>{0, 6}));
}

TEST(ParseConfig, Errors) {
    EXPECT_THROW(parse_config("bogus = 1\n"), UsageError);
    EXPECT_THROW(parse_config("{\"eta\": \n"), UsageError);
    EXPECT_THROW(parse_config("just words\n"), ParseError);
    auto cfg = small_config();
    cfg.oracles = {"psychic"};
    EXPECT_THROW(cfg.validate(), UsageError);
    cfg = small_config();
    cfg.c_dist = {1.5};
    EXPECT_THROW(cfg.validate(), UsageError);
}

TEST(Seeds, DistinctAcrossCellsAndReps) {
    const CellKey a{"improved", "local", 1.0, 2.0, 1};
    const CellKey b{"vanilla", "local", 1.0, 2.0, 1};
    EXPECT_NE(cell_seed(0, a, 0), cell_seed(0, b, 0));
    EXPECT_NE(cell_seed(0, a, 0), cell_seed(0, a, 1));
    EXPECT_NE(cell_seed(0, a, 0), cell_seed(1, a, 0));
    EXPECT_EQ(cell_seed(5, a, 9), cell_seed(5, a, 9));
    EXPECT_NE(data_seed(0, 0), data_seed(0, 1));
}

TEST(OracleFor, UsesMapping) {
    const auto k = oracle_for("local", 0.8, ExtendedReal::finite(1.05));
    EXPECT_EQ(k.model, OracleKind::Model::LocalDistanceWeak);
    EXPECT_NEAR(k.nu, 1.45, 1e-12);
    EXPECT_DOUBLE_EQ(k.rho, 0.8);
    EXPECT_EQ(oracle_for("global", 0.7, ExtendedReal::infinite()).rho, 0.7);
    EXPECT_EQ(oracle_for("perfect", 0.7, ExtendedReal::infinite()).model, OracleKind::Model::Perfect);
}

TEST(Grid, CanonicalCellOrder) {
    ExperimentConfig cfg = small_config();
    cfg.variants = {Variant::Improved, Variant::Vanilla};
    cfg.c_dist = {0.6, 1.0};
    cfg.eta = {2.0, 5.0, 10.0};
    const auto cells = grid_cells(cfg);
    ASSERT_EQ(cells.size(), 12u);
    EXPECT_EQ(cells[0], (CellKey{"improved", "local", 0.6, 2.0, 1}));
    EXPECT_EQ(cells[1], (CellKey{"improved", "local", 0.6, 5.0, 1}));
    EXPECT_EQ(cells[3], (CellKey{"improved", "local", 1.0, 2.0, 1}));
    EXPECT_EQ(cells[6], (CellKey{"vanilla", "local", 0.6, 2.0, 1}));
}

TEST(Grid, OneCellOneRep) {
    const auto dir = scratch("one");
    auto cfg = small_config();
    cfg.out_dir = dir;
    std::ostringstream console;
    const auto res = run_and_write(cfg, console);
    EXPECT_EQ(res.runs.size(), 1u);
    EXPECT_EQ(res.summary.size(), 1u);
    const auto runs = slurp(dir / "runs.csv");
    const auto summary = slurp(dir / "summary.csv");
    EXPECT_EQ(lines(runs), 2u);
    EXPECT_EQ(lines(summary), 2u);
    EXPECT_EQ(runs.substr(0, runs.find('\n')),
              "variant,oracle,c_dist,eta,beta,seed,accuracy,failed,phase1_failures,queries_p1,queries_p2,"
              "ambiguity_events,realized_gamma,assignment_failures");
    EXPECT_EQ(summary.substr(0, summary.find('\n')),
              "variant,oracle,c_dist,eta,beta,n_reps,mean_accuracy,std_accuracy,failure_count,mean_queries,"
              "mean_queries_p1,mean_queries_p2,assignment_failures,ambiguity_events,exact_recoveries");
}

TEST(Grid, RowCountAndByteIdentical) {
    auto cfg = small_config();
    cfg.oracles = {"local", "global"};
    cfg.c_dist = {0.7, 1.0};
    cfg.eta = {2.0, 5.0};
    cfg.variants = {Variant::Improved, Variant::Vanilla};
    cfg.repetitions = 4;
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    std::ostringstream console;
    cfg.out_dir = a;
    run_and_write(cfg, console);
    cfg.out_dir = b;
    cfg.parallel = 3;
    run_and_write(cfg, console);
    const auto runs = slurp(a / "runs.csv");
    EXPECT_EQ(lines(runs), 1 + 2 * 2 * 2 * 2 * 4u);
    EXPECT_EQ(lines(slurp(a / "summary.csv")), 1 + 2 * 2 * 2 * 2u);
    EXPECT_EQ(runs, slurp(b / "runs.csv"));
    EXPECT_EQ(slurp(a / "summary.csv"), slurp(b / "summary.csv"));
}

TEST(Grid, SharedDatasetPerRepetition) {
    auto cfg = small_config();
    cfg.variants = {Variant::Improved, Variant::Vanilla};
    cfg.repetitions = 3;
    const auto res = run_grid(cfg);
    ASSERT_EQ(res.runs.size(), 6u);
    for (std::size_t rep = 0; rep < 3; ++rep) {
        EXPECT_EQ(res.runs[rep].realized_gamma, res.runs[3 + rep].realized_gamma);
    }
}

TEST(Grid, UnwritableOutputFails) {
    const auto dir = scratch("blocked");
    std::ofstream(dir / "file") << "x";
    auto cfg = small_config();
    cfg.out_dir = dir / "file" / "sub";
    std::ostringstream console;
    EXPECT_ANY_THROW(run_and_write(cfg, console));
}

TEST(Grid, EmbeddingSource) {
    const auto dir = scratch("emb");
    emit_fixture(1, dir / "fixture.csv");
    auto cfg = small_config();
    cfg.source = ExperimentConfig::Source::Embedding;
    cfg.embedding_path = dir / "fixture.csv";
    cfg.oracles = {"perfect"};
    cfg.eta = {10.0};
    cfg.repetitions = 3;
    const auto res = run_grid(cfg);
    ASSERT_EQ(res.summary.size(), 1u);
    EXPECT_EQ(res.summary[0].repetitions, 3u);
}

TEST(Fixture, RoundTripAndSeeds) {
    const auto dir = scratch("fixture");
    const auto data = emit_fixture(4, dir / "a.csv");
    emit_fixture(4, dir / "b.csv");
    emit_fixture(5, dir / "c.csv");
    EXPECT_EQ(load_embedding(dir / "a.csv", {}).dataset, data.dataset);
    EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
    EXPECT_NE(slurp(dir / "a.csv"), slurp(dir / "c.csv"));
    EXPECT_ANY_THROW(emit_fixture(4, dir / "missing" / "x.csv"));
}

TEST(Check, ReportsConditions) {
    auto cfg = small_config();
    cfg.oracles = {"local", "global"};
    cfg.c_dist = {0.6, 1.0};
    const auto check = check_dataset(cfg);
    EXPECT_EQ(check.points, 90u);
    EXPECT_TRUE(check.center_based);
    EXPECT_EQ(check.min_ratios.size(), 3u);
    EXPECT_EQ(check.verdicts.size(), 4u);
    std::ostringstream out;
    print_check(out, check);
    EXPECT_NE(out.str().find("gamma"), std::string::npos);
}

TEST(Check, RejectsLargeEpsilon) {
    auto cfg = small_config();
    cfg.epsilon = 0.5;
    EXPECT_THROW(check_dataset(cfg), UsageError);
}

}  // namespace
}  // namespace ssac
