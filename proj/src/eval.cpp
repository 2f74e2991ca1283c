#include "ssac/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ssac {

namespace {

// Potentials-based Hungarian method for rows <= cols, O(rows^2 * cols).
std::vector<int> hungarian(const std::vector<std::vector<double>>& a, std::size_t rows, std::size_t cols) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0), minv(cols + 1);
    std::vector<std::size_t> match(cols + 1, 0), way(cols + 1, 0);
    std::vector<char> used(cols + 1);
    for (std::size_t i = 1; i <= rows; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= cols; ++j) {
                if (used[j]) continue;
                const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= cols; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_to_col(rows, -1);
    for (std::size_t j = 1; j <= cols; ++j) {
        if (match[j] != 0) {
            row_to_col[match[j] - 1] = static_cast<int>(j - 1);
        }
    }
    return row_to_col;
}

}  // namespace

std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t rows = cost.size();
    if (rows == 0) {
        return {};
    }
    const std::size_t cols = cost.front().size();
    for (const auto& row : cost) {
        if (row.size() != cols) {
            throw UsageError("cost matrix rows differ in length");
        }
    }
    if (cols == 0) {
        return std::vector<int>(rows, -1);
    }
    if (rows <= cols) {
        return hungarian(cost, rows, cols);
    }
    std::vector<std::vector<double>> transposed(cols, std::vector<double>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            transposed[c][r] = cost[r][c];
        }
    }
    const auto col_to_row = hungarian(transposed, cols, rows);
    std::vector<int> row_to_col(rows, -1);
    for (std::size_t c = 0; c < cols; ++c) {
        row_to_col[static_cast<std::size_t>(col_to_row[c])] = static_cast<int>(c);
    }
    return row_to_col;
}

LabelMatch match_labels(const std::vector<Point>& truth_centers, const std::vector<Point>& recovered_centers) {
    std::vector<std::vector<double>> cost(recovered_centers.size(), std::vector<double>(truth_centers.size()));
    for (std::size_t r = 0; r < recovered_centers.size(); ++r) {
        for (std::size_t t = 0; t < truth_centers.size(); ++t) {
            cost[r][t] = distance(recovered_centers[r], truth_centers[t]);
        }
    }
    LabelMatch m;
    m.truth_of = min_cost_assignment(cost);
    for (std::size_t r = 0; r < m.truth_of.size(); ++r) {
        if (m.truth_of[r] >= 0) {
            m.cost += cost[r][static_cast<std::size_t>(m.truth_of[r])];
        } else {
            m.truth_of[r] = kUnassigned;
        }
    }
    return m;
}

std::vector<Point> recovered_centers(const Dataset& ds, const SsacOutput& out) {
    if (out.clusters == 0) {
        return {};
    }
    return compute_centers(ds, out.labels, out.clusters);
}

RunResult score(const Dataset& ds, const Clustering& truth, const SsacOutput& out) {
    RunResult res;
    res.failed = out.failed;
    res.clusters = out.clusters;
    res.phase1_failures = out.phase1_failures();
    res.assignment_failures = out.assignment_failures();
    res.queries_phase1 = out.queries_phase1();
    res.queries_phase2 = out.queries_phase2();
    res.ambiguity_events = out.ambiguity_events();
    if (out.clusters == 0 || ds.size() == 0) {
        return res;
    }
    const LabelMatch m = match_labels(truth.centers(), recovered_centers(ds, out));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const int rec = out.labels[i];
        if (rec != kUnassigned && m.truth_of[static_cast<std::size_t>(rec)] == truth.label(i)) {
            ++correct;
        }
    }
    res.accuracy = static_cast<double>(correct) / static_cast<double>(ds.size());
    return res;
}

std::vector<CellSummary> aggregate(const std::vector<RunResult>& results) {
    std::vector<CellSummary> cells;
    std::vector<std::vector<double>> accuracies;
    for (const auto& r : results) {
        std::size_t idx = 0;
        while (idx < cells.size() && !(cells[idx].cell == r.cell)) ++idx;
        if (idx == cells.size()) {
            cells.push_back(CellSummary{.cell = r.cell});
            accuracies.emplace_back();
        }
        auto& c = cells[idx];
        ++c.repetitions;
        c.mean_accuracy += r.accuracy;
        accuracies[idx].push_back(r.accuracy);
        c.failure_count += r.failed ? 1 : 0;
        c.mean_queries_phase1 += static_cast<double>(r.queries_phase1);
        c.mean_queries_phase2 += static_cast<double>(r.queries_phase2);
        c.assignment_failures += r.assignment_failures;
        c.ambiguity_events += r.ambiguity_events;
        c.exact_recoveries += r.accuracy == 1.0 ? 1 : 0;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto& c = cells[i];
        const double n = static_cast<double>(c.repetitions);
        c.mean_accuracy /= n;
        double ss = 0.0;
        for (double a : accuracies[i]) ss += (a - c.mean_accuracy) * (a - c.mean_accuracy);
        c.std_accuracy = std::sqrt(ss / n);
        c.mean_queries_phase1 /= n;
        c.mean_queries_phase2 /= n;
        c.mean_queries = c.mean_queries_phase1 + c.mean_queries_phase2;
    }
    return cells;
}

}  // namespace ssac
