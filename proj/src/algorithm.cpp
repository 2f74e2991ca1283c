#include "ssac/algorithm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

#include <fmt/format.h>

namespace ssac {

std::string to_string(Variant v) {
    return v == Variant::Improved ? "improved" : "vanilla";
}

std::size_t SsacParams::sample_size() const {
    return static_cast<std::size_t>(std::ceil(static_cast<double>(k) * eta));
}

void SsacParams::validate() const {
    if (k < 1) {
        throw UsageError(fmt::format("k must be at least 1, got {}", k));
    }
    if (!(eta > 0.0) || sample_size() < static_cast<std::size_t>(k)) {
        throw UsageError(fmt::format("eta must give at least k samples per round, got eta={}", eta));
    }
    if (beta < 1) {
        throw UsageError("beta must be at least 1");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw UsageError(fmt::format("delta must lie in (0, 1), got {}", delta));
    }
}

namespace {

struct Group {
    std::vector<std::size_t> members;
    Point sum;
    std::size_t rep = 0;

    Point mean() const {
        Point m = sum;
        for (auto& v : m) {
            v /= static_cast<double>(members.size());
        }
        return m;
    }
};

void add_member(Group& g, const Dataset& ds, std::size_t x, Variant variant) {
    if (g.members.empty()) {
        g.sum.assign(ds.dim(), 0.0);
        g.rep = x;
    }
    g.members.push_back(x);
    const auto p = ds.point(x);
    for (std::size_t d = 0; d < ds.dim(); ++d) {
        g.sum[d] += p[d];
    }
    if (variant == Variant::Improved) {
        const Point m = g.mean();
        g.rep = g.members[nearest_known(ds, g.members, m)];
    }
}

std::vector<std::size_t> draw_without_replacement(std::vector<std::size_t> pool, std::size_t r, std::mt19937_64& rng) {
    const std::size_t m = std::min(r, pool.size());
    for (std::size_t s = 0; s < m; ++s) {
        const std::size_t pick = s + std::uniform_int_distribution<std::size_t>(0, pool.size() - s - 1)(rng);
        std::swap(pool[s], pool[pick]);
    }
    pool.resize(m);
    return pool;
}

}  // namespace

std::size_t SsacOutput::queries_phase1() const {
    std::size_t s = 0;
    for (const auto& r : rounds) s += r.queries_phase1;
    return s;
}

std::size_t SsacOutput::queries_phase2() const {
    std::size_t s = 0;
    for (const auto& r : rounds) s += r.queries_phase2;
    return s;
}

std::size_t SsacOutput::ambiguity_events() const {
    std::size_t s = 0;
    for (const auto& r : rounds) s += r.ambiguity_events;
    return s;
}

std::size_t SsacOutput::phase1_failures() const {
    return static_cast<std::size_t>(
        std::count_if(rounds.begin(), rounds.end(), [](const RoundRecord& r) { return r.phase1_failed; }));
}

std::size_t SsacOutput::assignment_failures() const {
    std::size_t s = 0;
    for (const auto& r : rounds) s += r.assignment_failures;
    return s;
}

SsacOutput run_ssac(const Dataset& ds, Oracle& oracle, const SsacParams& params) {
    params.validate();
    if (&oracle.dataset() != &ds && !(oracle.dataset() == ds)) {
        throw UsageError("run_ssac: oracle answers for a different dataset");
    }

    std::mt19937_64 rng(params.seed);
    const std::size_t r = params.sample_size();
    const AnchorPolicy policy =
        params.variant == Variant::Improved ? AnchorPolicy::NearestToMean : AnchorPolicy::RandomKnown;

    SsacOutput out;
    out.labels.assign(ds.size(), kUnassigned);
    out.delta = params.delta;
    const std::size_t start_queries = oracle.read_counter();

    std::vector<std::size_t> remaining(ds.size());
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});

    for (int round = 0; round < params.k; ++round) {
        RoundRecord rec;

        // Phase 1: sample, assign by weak queries, pick the largest group.
        std::size_t before = oracle.read_counter();
        const auto sample = draw_without_replacement(remaining, r, rng);
        rec.sampled = sample.size();
        std::vector<Group> groups;
        std::vector<std::size_t> reps;
        for (std::size_t x : sample) {
            const Assignment a = cluster_assignment_query(oracle, x, reps, params.k);
            switch (a.kind) {
                case Assignment::Kind::Group:
                    add_member(groups[a.group], ds, x, params.variant);
                    reps[a.group] = groups[a.group].rep;
                    break;
                case Assignment::Kind::NewGroup:
                    groups.emplace_back();
                    add_member(groups.back(), ds, x, params.variant);
                    reps.push_back(groups.back().rep);
                    break;
                case Assignment::Kind::NotSure:
                    ++rec.assignment_failures;
                    break;
            }
        }
        rec.queries_phase1 = oracle.read_counter() - before;
        rec.groups = groups.size();
        if (groups.empty()) {
            rec.phase1_failed = true;
            out.rounds.push_back(std::move(rec));
            break;
        }
        std::size_t p = 0;
        for (std::size_t g = 1; g < groups.size(); ++g) {
            if (groups[g].members.size() > groups[p].members.size()) {
                p = g;
            }
        }
        const Group& best = groups[p];
        rec.group = p;
        rec.group_size = best.members.size();
        rec.mean = best.mean();

        // Phase 2: order the remaining points by distance to the empirical
        // mean and search for the first non-member.
        std::vector<std::pair<double, std::size_t>> keyed;
        keyed.reserve(remaining.size());
        for (std::size_t x : remaining) {
            keyed.emplace_back(distance(ds.point(x), rec.mean), x);
        }
        std::sort(keyed.begin(), keyed.end());
        std::vector<std::size_t> sorted(keyed.size());
        std::transform(keyed.begin(), keyed.end(), sorted.begin(), [](const auto& e) { return e.second; });

        before = oracle.read_counter();
        const std::size_t beta = std::min(params.beta, best.members.size());
        const BoundarySearch found = binary_search(sorted, oracle, policy, best.members, rec.mean, beta, rng);
        rec.queries_phase2 = oracle.read_counter() - before;
        rec.ambiguity_events = found.ambiguity_events;
        rec.threshold = found.radius;

        std::vector<std::size_t> rest;
        for (const auto& [d, x] : keyed) {
            if (found.radius.exceeds(d)) {
                out.labels[x] = out.clusters;
                ++rec.captured;
            } else {
                rest.push_back(x);
            }
        }
        std::sort(rest.begin(), rest.end());
        remaining = std::move(rest);
        if (rec.captured > 0) {
            ++out.clusters;
        }
        out.rounds.push_back(std::move(rec));
    }

    out.total_queries = oracle.read_counter() - start_queries;
    out.failed = out.clusters < params.k;
    return out;
}

}  // namespace ssac
