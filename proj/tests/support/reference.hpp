#ifndef SSAC_TESTS_REFERENCE_HPP
#define SSAC_TESTS_REFERENCE_HPP

// Straight-line reference implementations used as test oracles. Deliberately
// naive and independent of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "ssac/core.hpp"
#include "ssac/oracle.hpp"

namespace ssac::ref {

template <typename A, typename B>
double dist(const A& a, const B& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

inline std::vector<double> row(const Dataset& ds, std::size_t i) {
    const auto p = ds.point(i);
    return {p.begin(), p.end()};
}

// Means and radii straight from the label vector.
struct Geometry {
    std::vector<std::vector<double>> centers;
    std::vector<double> radii;
};

inline Geometry geometry(const Dataset& ds, const std::vector<int>& labels, int k) {
    Geometry g;
    g.centers.assign(static_cast<std::size_t>(k), std::vector<double>(ds.dim(), 0.0));
    std::vector<double> count(static_cast<std::size_t>(k), 0.0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        for (std::size_t d = 0; d < ds.dim(); ++d) g.centers[c][d] += ds.point(i)[d];
        count[c] += 1.0;
    }
    for (std::size_t c = 0; c < g.centers.size(); ++c) {
        for (auto& v : g.centers[c]) v /= count[c];
    }
    g.radii.assign(static_cast<std::size_t>(k), 0.0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        g.radii[c] = std::max(g.radii[c], dist(row(ds, i), g.centers[c]));
    }
    return g;
}

// The definitional inequalities of the weak oracle models, evaluated directly.
inline Answer brute_force_answer(const Dataset& ds, const std::vector<int>& labels, const Geometry& g,
                                 const OracleKind& kind, std::size_t x, std::size_t y) {
    const auto lx = static_cast<std::size_t>(labels[x]);
    const auto ly = static_cast<std::size_t>(labels[y]);
    const bool same = lx == ly;
    const Answer truth = same ? Answer::Same : Answer::Different;
    if (kind.model == OracleKind::Model::Perfect) return truth;
    const double dxy = dist(ds.point(x), ds.point(y));
    if (same) {
        return dxy > 2.0 * kind.rho * g.radii[lx] ? Answer::NotSure : Answer::Same;
    }
    const double dx = dist(ds.point(x), g.centers[lx]);
    const double dy = dist(ds.point(y), g.centers[ly]);
    if (kind.model == OracleKind::Model::LocalDistanceWeak) {
        return dxy < (kind.nu - 1.0) * std::min(dx, dy) ? Answer::NotSure : Answer::Different;
    }
    return (dx > kind.rho * g.radii[lx] || dy > kind.rho * g.radii[ly]) ? Answer::NotSure : Answer::Different;
}

// First position in `sorted` whose point is judged a non-member, scanning in
// order; `member` returns nullopt for an ambiguous probe, which counts as a
// non-member.
struct ScanResult {
    std::optional<std::size_t> boundary;
    std::size_t ambiguity_events = 0;
};

inline ScanResult linear_scan(const std::vector<std::size_t>& sorted,
                              const std::function<std::optional<bool>(std::size_t)>& member) {
    ScanResult r;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        const auto m = member(sorted[j]);
        if (!m) ++r.ambiguity_events;
        if (!m || !*m) {
            r.boundary = j;
            return r;
        }
    }
    return r;
}

// Minimum total cost over all injective row->column maps (rows <= cols).
inline double brute_force_assignment_cost(const std::vector<std::vector<double>>& cost) {
    const std::size_t rows = cost.size();
    const std::size_t cols = rows == 0 ? 0 : cost[0].size();
    std::vector<std::size_t> perm(cols);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double s = 0.0;
        for (std::size_t r = 0; r < rows; ++r) s += cost[r][perm[r]];
        best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// A sorted list of `n` points whose first `prefix` entries share cluster 0
// with the `known` members; every later entry sits in cluster 1. Point values
// grow along the list so the list is sorted by distance from the origin-side
// mean.
struct PrefixInstance {
    Dataset dataset;
    std::vector<int> labels;
    std::vector<std::size_t> sorted;
    std::vector<std::size_t> known;
    std::vector<double> mean;
    std::size_t prefix = 0;
};

inline PrefixInstance make_prefix_instance(std::size_t n, std::size_t prefix, std::size_t known_count,
                                           std::mt19937_64& rng) {
    std::uniform_real_distribution<double> step(0.01, 1.0);
    std::vector<double> coords;
    std::vector<int> labels;
    // known members first, clustered around -1
    for (std::size_t i = 0; i < known_count; ++i) {
        coords.push_back(-1.0 - step(rng) * 0.1);
        labels.push_back(0);
    }
    double x = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        x += step(rng);
        coords.push_back(x);
        labels.push_back(j < prefix ? 0 : 1);
    }
    // guarantees cluster 1 is nonempty
    coords.push_back(x + 1000.0);
    labels.push_back(1);

    PrefixInstance inst{Dataset(1, coords), labels, {}, {}, {-1.0}, prefix};
    for (std::size_t i = 0; i < known_count; ++i) inst.known.push_back(i);
    for (std::size_t j = 0; j < n; ++j) inst.sorted.push_back(known_count + j);
    return inst;
}

inline std::size_t ceil_log2(std::size_t n) {
    std::size_t b = 0;
    while ((std::size_t{1} << b) < n) ++b;
    return b;
}

}  // namespace ssac::ref

#endif  // SSAC_TESTS_REFERENCE_HPP
