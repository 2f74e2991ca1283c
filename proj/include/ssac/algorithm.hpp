#ifndef SSAC_ALGORITHM_HPP
#define SSAC_ALGORITHM_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ssac/binary_search.hpp"
#include "ssac/core.hpp"
#include "ssac/oracle.hpp"

namespace ssac {

enum class Variant {
    Improved,  // mean-proximal representatives and search anchor
    Vanilla,   // first-acquired representatives, random search anchor
};

std::string to_string(Variant v);

struct SsacParams {
    int k = 1;
    double eta = 1.0;        // Phase-1 sample size is ceil(k * eta)
    std::size_t beta = 1;    // search fallback budget, clamped to |Z_p| per round
    double delta = 0.1;      // recorded only
    Variant variant = Variant::Improved;
    std::uint64_t seed = 0;

    std::size_t sample_size() const;
    void validate() const;
};

struct RoundRecord {
    std::size_t sampled = 0;            // |Z| drawn this round
    std::size_t groups = 0;             // groups discovered in Phase 1
    std::size_t group = 0;              // chosen p
    std::size_t group_size = 0;         // |Z_p|
    Point mean;                         // empirical mean of Z_p
    ExtendedReal threshold = ExtendedReal::infinite();
    std::size_t captured = 0;           // |C'_p|
    bool phase1_failed = false;         // no sampled point could be assigned
    std::size_t assignment_failures = 0;  // sampled points dropped as NotSure
    std::size_t queries_phase1 = 0;
    std::size_t queries_phase2 = 0;
    std::size_t ambiguity_events = 0;

    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct SsacOutput {
    // Recovered cluster id per point, kUnassigned when no round captured it.
    // Ids are dense in [0, clusters) in order of recovery.
    std::vector<int> labels;
    int clusters = 0;
    std::vector<RoundRecord> rounds;
    std::size_t total_queries = 0;
    bool failed = false;  // fewer than k nonempty clusters recovered
    double delta = 0.0;

    std::size_t queries_phase1() const;
    std::size_t queries_phase2() const;
    std::size_t ambiguity_events() const;
    std::size_t phase1_failures() const;
    std::size_t assignment_failures() const;

    friend bool operator==(const SsacOutput&, const SsacOutput&) = default;
};

// Two-phase active clustering driven by weak same-cluster queries. All
// randomness comes from params.seed. The vanilla baseline expects an oracle
// with random resolution enabled; run_ssac does not switch it on itself.
SsacOutput run_ssac(const Dataset& ds, Oracle& oracle, const SsacParams& params);

}  // namespace ssac

#endif  // SSAC_ALGORITHM_HPP
