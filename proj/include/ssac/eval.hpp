#ifndef SSAC_EVAL_HPP
#define SSAC_EVAL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ssac/algorithm.hpp"
#include "ssac/core.hpp"

namespace ssac {

// Minimum-cost one-to-one assignment of rows to columns of a rectangular
// cost matrix (Hungarian method). Entry r is the column of row r, or -1 when
// there are more rows than columns and row r stays unmatched.
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost);

struct LabelMatch {
    std::vector<int> truth_of;  // recovered id -> true label, kUnassigned if unmatched
    double cost = 0.0;          // total center distance of the matched pairs
};

// Matches recovered centers to true centers minimizing the summed distance.
LabelMatch match_labels(const std::vector<Point>& truth_centers, const std::vector<Point>& recovered_centers);

// Means of the recovered clusters, indexed by recovered id.
std::vector<Point> recovered_centers(const Dataset& ds, const SsacOutput& out);

// Identifies one grid cell.
struct CellKey {
    std::string variant;
    std::string oracle;
    double c_dist = 1.0;
    double eta = 1.0;
    std::size_t beta = 1;

    friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct RunResult {
    CellKey cell;
    std::uint64_t seed = 0;
    double accuracy = 0.0;
    bool failed = false;
    int clusters = 0;
    std::size_t phase1_failures = 0;      // rounds whose sample produced no group
    std::size_t assignment_failures = 0;  // sampled points dropped as NotSure
    std::size_t queries_phase1 = 0;
    std::size_t queries_phase2 = 0;
    std::size_t ambiguity_events = 0;
    ExtendedReal realized_gamma = ExtendedReal::infinite();
};

// Accuracy is the share of points whose recovered cluster maps onto their
// true label; unassigned points and unmatched clusters count as wrong.
RunResult score(const Dataset& ds, const Clustering& truth, const SsacOutput& out);

struct CellSummary {
    CellKey cell;
    std::size_t repetitions = 0;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;  // population standard deviation
    std::size_t failure_count = 0;
    double mean_queries = 0.0;
    double mean_queries_phase1 = 0.0;
    double mean_queries_phase2 = 0.0;
    std::size_t assignment_failures = 0;
    std::size_t ambiguity_events = 0;
    std::size_t exact_recoveries = 0;  // runs with accuracy 1
};

// Groups results by cell in order of first appearance.
std::vector<CellSummary> aggregate(const std::vector<RunResult>& results);

}  // namespace ssac

#endif  // SSAC_EVAL_HPP
