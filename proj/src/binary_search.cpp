#include "ssac/binary_search.hpp"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

namespace ssac {

namespace {

class MembershipProbe {
public:
    MembershipProbe(Oracle& oracle, AnchorPolicy policy, std::span<const std::size_t> known, PointView mean,
                    std::size_t beta, std::mt19937_64& rng)
        : oracle_(oracle), policy_(policy), known_(known), beta_(beta), rng_(rng) {
        if (policy_ == AnchorPolicy::NearestToMean) {
            fixed_anchor_ = nearest_known(oracle.dataset(), known, mean);
        }
    }

    bool is_member(std::size_t x, BoundarySearch& stats) {
        const std::size_t anchor = policy_ == AnchorPolicy::NearestToMean ? fixed_anchor_ : draw_index(known_.size());
        ++stats.queries;
        const Answer first = oracle_.same_cluster_query(known_[anchor], x);
        if (first != Answer::NotSure) {
            return first == Answer::Same;
        }

        pool_.clear();
        for (std::size_t i = 0; i < known_.size(); ++i) {
            if (i != anchor) {
                pool_.push_back(known_[i]);
            }
        }
        const std::size_t extra = std::min(beta_ - 1, pool_.size());
        for (std::size_t s = 0; s < extra; ++s) {
            std::swap(pool_[s], pool_[s + draw_index(pool_.size() - s)]);
            ++stats.queries;
            const Answer a = oracle_.same_cluster_query(x, pool_[s]);
            if (a != Answer::NotSure) {
                return a == Answer::Same;
            }
        }
        ++stats.ambiguity_events;
        return false;
    }

private:
    std::size_t draw_index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
    }

    Oracle& oracle_;
    AnchorPolicy policy_;
    std::span<const std::size_t> known_;
    std::size_t beta_;
    std::mt19937_64& rng_;
    std::size_t fixed_anchor_ = 0;
    std::vector<std::size_t> pool_;
};

}  // namespace

std::size_t nearest_known(const Dataset& ds, std::span<const std::size_t> known, PointView mean) {
    if (known.empty()) {
        throw UsageError("nearest_known: no known members");
    }
    std::size_t best = 0;
    double best_d = distance(ds.point(known[0]), mean);
    for (std::size_t i = 1; i < known.size(); ++i) {
        const double d = distance(ds.point(known[i]), mean);
        if (d < best_d || (d == best_d && known[i] < known[best])) {
            best = i;
            best_d = d;
        }
    }
    return best;
}

BoundarySearch binary_search(std::span<const std::size_t> sorted, Oracle& oracle, AnchorPolicy policy,
                             std::span<const std::size_t> known, PointView mean, std::size_t beta,
                             std::mt19937_64& rng) {
    if (sorted.empty() || known.empty()) {
        throw UsageError("binary_search needs a nonempty list and at least one known member");
    }
    if (beta < 1 || beta > known.size()) {
        throw UsageError(fmt::format("binary_search: beta {} outside [1, {}]", beta, known.size()));
    }

    BoundarySearch out;
    MembershipProbe probe(oracle, policy, known, mean, beta, rng);
    // Positions < lo were judged members; boundary is the leftmost position
    // judged a non-member so far.
    std::ptrdiff_t lo = 0;
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(sorted.size()) - 1;
    while (lo <= hi) {
        const std::ptrdiff_t mid = lo + (hi - lo) / 2;
        if (probe.is_member(sorted[static_cast<std::size_t>(mid)], out)) {
            lo = mid + 1;
        } else {
            out.boundary = static_cast<std::size_t>(mid);
            hi = mid - 1;
        }
    }
    if (out.boundary) {
        out.radius = ExtendedReal::finite(distance(oracle.dataset().point(sorted[*out.boundary]), mean));
    }
    return out;
}

}  // namespace ssac
