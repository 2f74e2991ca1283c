#ifndef SSAC_ORACLE_HPP
#define SSAC_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>

#include "ssac/core.hpp"

namespace ssac {

enum class Answer : int { Same = 1, NotSure = 0, Different = -1 };

std::string to_string(Answer a);

// Which weak-oracle model answers the queries and with what parameters.
struct OracleKind {
    enum class Model { Perfect, LocalDistanceWeak, GlobalDistanceWeak };

    Model model = Model::Perfect;
    double nu = 1.0;   // local model only, >= 1
    double rho = 1.0;  // local and global models, in (0, 1]

    static OracleKind perfect() { return {}; }
    static OracleKind local(double nu, double rho);
    static OracleKind global(double rho);

    std::string name() const;
};

// Simulated oracle over a fixed ground truth. Holds non-owning references:
// the dataset and truth must outlive it. Not thread-safe; give each
// repetition its own instance.
class Oracle {
public:
    Oracle(const Dataset& ds, const Clustering& truth, OracleKind kind);

    // Replace every NotSure with Same/Different, each with probability 0.5.
    void enable_random_resolution(std::uint64_t seed);
    bool resolves_randomly() const { return resolver_.has_value(); }

    // Counted query. Throws UsageError for an out-of-range index.
    Answer same_cluster_query(std::size_t i, std::size_t j);

    // The model's answer without counting and without random resolution.
    Answer model_answer(std::size_t i, std::size_t j) const;

    std::size_t read_counter() const { return queries_; }
    void reset_counter() { queries_ = 0; }

    const Dataset& dataset() const { return *ds_; }
    const Clustering& truth() const { return *truth_; }
    const OracleKind& kind() const { return kind_; }

private:
    const Dataset* ds_;
    const Clustering* truth_;
    OracleKind kind_;
    std::size_t queries_ = 0;
    std::optional<std::mt19937_64> resolver_;
};

// Result of a weak pairwise cluster-assignment query over the groups
// discovered so far.
struct Assignment {
    enum class Kind { Group, NewGroup, NotSure };

    Kind kind = Kind::NotSure;
    std::size_t group = 0;  // valid for Kind::Group

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Queries x against one representative per discovered group, in order, and
// returns the first group answering Same. When nobody says Same: NewGroup if
// every answer was Different and fewer than k groups exist, NotSure otherwise.
// With no representatives the point opens the first group without a query.
Assignment cluster_assignment_query(Oracle& oracle, std::size_t x, std::span<const std::size_t> reps, int k);

}  // namespace ssac

#endif  // SSAC_ORACLE_HPP
