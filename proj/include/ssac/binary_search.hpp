#ifndef SSAC_BINARY_SEARCH_HPP
#define SSAC_BINARY_SEARCH_HPP

#include <cstddef>
#include <optional>
#include <random>
#include <span>

#include "ssac/core.hpp"
#include "ssac/oracle.hpp"

namespace ssac {

// How the search picks the known member each probe is compared against.
enum class AnchorPolicy {
    NearestToMean,  // the known member closest to the empirical mean, fixed
    RandomKnown,    // a uniformly random known member, redrawn per probe
};

struct BoundarySearch {
    // Distance from the mean to the first non-member; infinite when every
    // point of the list was judged a member.
    ExtendedReal radius = ExtendedReal::infinite();
    std::optional<std::size_t> boundary;  // 0-based position of that point
    std::size_t queries = 0;
    std::size_t ambiguity_events = 0;  // probes where every answer was NotSure
};

// Index into `known` of the member closest to `mean`; ties go to the lower
// point index.
std::size_t nearest_known(const Dataset& ds, std::span<const std::size_t> known, PointView mean);

// Smallest position in `sorted` (ascending by distance to `mean`) whose point
// is judged outside the cluster of `known`. A NotSure anchor answer falls back
// to beta - 1 further members drawn without replacement from `known`; the
// first definitive answer decides, and all-NotSure counts as non-member.
// Requires nonempty `sorted` and `known`, and 1 <= beta <= known.size().
BoundarySearch binary_search(std::span<const std::size_t> sorted, Oracle& oracle, AnchorPolicy policy,
                             std::span<const std::size_t> known, PointView mean, std::size_t beta,
                             std::mt19937_64& rng);

}  // namespace ssac

#endif  // SSAC_BINARY_SEARCH_HPP
