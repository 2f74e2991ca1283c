#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "reference.hpp"
#include "ssac/eval.hpp"

namespace ssac {
namespace {

SsacOutput output_of(std::vector<int> labels, int clusters, bool failed = false) {
    SsacOutput out;
    out.labels = std::move(labels);
    out.clusters = clusters;
    out.failed = failed;
    return out;
}

TEST(MatchLabels, SwapsToNearest) {
    const auto m = match_labels({{1.0}, {7.0}}, {{6.9}, {1.2}});
    EXPECT_EQ(m.truth_of, (std::vector<int>{1, 0}));
    EXPECT_NEAR(m.cost, 0.3, 1e-12);
}

TEST(MatchLabels, ExtraRecoveredClusterUnmatched) {
    const auto m = match_labels({{0.0}}, {{5.0}, {0.5}});
    EXPECT_EQ(m.truth_of, (std::vector<int>{kUnassigned, 0}));
}

TEST(Score, MergedClusters) {
    const Dataset ds = fixture::line();
    const auto truth = Clustering::from_labels(ds, fixture::line_labels(), 2);
    const auto res = score(ds, truth, output_of({0, 1, 1, 1}, 2));
    EXPECT_DOUBLE_EQ(res.accuracy, 0.75);
}

TEST(Score, EmptyOutput) {
    const Dataset ds = fixture::line();
    const auto truth = Clustering::from_labels(ds, fixture::line_labels(), 2);
    const auto res = score(ds, truth, output_of({kUnassigned, kUnassigned, kUnassigned, kUnassigned}, 0, true));
    EXPECT_DOUBLE_EQ(res.accuracy, 0.0);
    EXPECT_TRUE(res.failed);
}

TEST(Score, UnassignedCountsAsWrong) {
    const Dataset ds = fixture::line();
    const auto truth = Clustering::from_labels(ds, fixture::line_labels(), 2);
    EXPECT_DOUBLE_EQ(score(ds, truth, output_of({0, 0, kUnassigned, kUnassigned}, 1, true)).accuracy, 0.5);
}

TEST(Score, InvariantUnderRelabeling) {
    const auto data = fixture::synthetic(4, 90);
    std::vector<int> noisy = data.truth.labels();
    for (std::size_t i = 0; i < noisy.size(); i += 7) noisy[i] = (noisy[i] + 1) % 3;
    const double base = score(data.dataset, data.truth, output_of(noisy, 3)).accuracy;
    std::vector<int> perm{2, 0, 1};
    std::vector<int> relabeled = noisy;
    for (auto& l : relabeled) l = perm[static_cast<std::size_t>(l)];
    EXPECT_DOUBLE_EQ(score(data.dataset, data.truth, output_of(relabeled, 3)).accuracy, base);
}

TEST(Hungarian, MatchesBruteForce) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int t = 0; t < 300; ++t) {
        const std::size_t rows = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
        const std::size_t cols = std::uniform_int_distribution<std::size_t>(rows, 5)(rng);
        std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
        for (auto& r : cost) {
            for (auto& v : r) v = t % 3 == 0 ? std::floor(u(rng) / 3.0) : u(rng);
        }
        const auto a = min_cost_assignment(cost);
        ASSERT_EQ(a.size(), rows);
        std::set<int> used;
        double total = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            ASSERT_GE(a[r], 0);
            used.insert(a[r]);
            total += cost[r][static_cast<std::size_t>(a[r])];
        }
        EXPECT_EQ(used.size(), rows);
        EXPECT_NEAR(total, ref::brute_force_assignment_cost(cost), 1e-9);
    }
}

TEST(Hungarian, MoreRowsThanColumns) {
    const auto a = min_cost_assignment({{5.0}, {1.0}, {3.0}});
    EXPECT_EQ(a, (std::vector<int>{-1, 0, -1}));
    EXPECT_THROW(min_cost_assignment({{1.0, 2.0}, {1.0}}), UsageError);
}

RunResult run(const CellKey& cell, double acc, bool failed, std::size_t q1, std::size_t q2) {
    RunResult r;
    r.cell = cell;
    r.accuracy = acc;
    r.failed = failed;
    r.queries_phase1 = q1;
    r.queries_phase2 = q2;
    return r;
}

TEST(Aggregate, SingleRun) {
    const CellKey cell{"improved", "local", 1.0, 2.0, 1};
    const auto cells = aggregate({run(cell, 0.5, true, 3, 4)});
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_DOUBLE_EQ(cells[0].mean_accuracy, 0.5);
    EXPECT_DOUBLE_EQ(cells[0].std_accuracy, 0.0);
    EXPECT_EQ(cells[0].failure_count, 1u);
    EXPECT_DOUBLE_EQ(cells[0].mean_queries, 7.0);
}

TEST(Aggregate, GroupsByCellInOrder) {
    const CellKey a{"improved", "local", 1.0, 2.0, 1};
    const CellKey b{"vanilla", "local", 1.0, 2.0, 1};
    const auto cells = aggregate({run(b, 1.0, false, 0, 0), run(a, 0.2, false, 1, 0), run(b, 0.0, true, 2, 0),
                                  run(a, 1.0, false, 3, 0)});
    ASSERT_EQ(cells.size(), 2u);
    EXPECT_EQ(cells[0].cell, b);
    EXPECT_DOUBLE_EQ(cells[0].mean_accuracy, 0.5);
    EXPECT_DOUBLE_EQ(cells[0].std_accuracy, 0.5);
    EXPECT_EQ(cells[0].failure_count, 1u);
    EXPECT_EQ(cells[0].exact_recoveries, 1u);
    EXPECT_DOUBLE_EQ(cells[1].mean_queries_phase1, 2.0);
    EXPECT_DOUBLE_EQ(cells[1].std_accuracy, 0.4);
}

}  // namespace
}  // namespace ssac
