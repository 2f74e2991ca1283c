#include "ssac/oracle.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace ssac {

std::string to_string(Answer a) {
    switch (a) {
        case Answer::Same:
            return "same";
        case Answer::NotSure:
            return "not-sure";
        case Answer::Different:
            return "different";
    }
    return "?";
}

OracleKind OracleKind::local(double nu, double rho) {
    if (!(nu >= 1.0)) {
        throw UsageError(fmt::format("local distance-weak oracle needs nu >= 1, got {}", nu));
    }
    if (!(rho > 0.0 && rho <= 1.0)) {
        throw UsageError(fmt::format("rho must lie in (0, 1], got {}", rho));
    }
    return {Model::LocalDistanceWeak, nu, rho};
}

OracleKind OracleKind::global(double rho) {
    if (!(rho > 0.0 && rho <= 1.0)) {
        throw UsageError(fmt::format("rho must lie in (0, 1], got {}", rho));
    }
    return {Model::GlobalDistanceWeak, 1.0, rho};
}

std::string OracleKind::name() const {
    switch (model) {
        case Model::Perfect:
            return "perfect";
        case Model::LocalDistanceWeak:
            return "local";
        case Model::GlobalDistanceWeak:
            return "global";
    }
    return "?";
}

Oracle::Oracle(const Dataset& ds, const Clustering& truth, OracleKind kind)
    : ds_(&ds), truth_(&truth), kind_(kind) {
    if (truth.size() != ds.size() || truth.is_partial()) {
        throw UsageError("oracle truth must label every point of its dataset");
    }
}

void Oracle::enable_random_resolution(std::uint64_t seed) {
    resolver_.emplace(seed);
}

Answer Oracle::model_answer(std::size_t i, std::size_t j) const {
    const std::size_t n = ds_->size();
    if (i >= n || j >= n) {
        throw UsageError(fmt::format("query ({}, {}) out of range for {} points", i, j, n));
    }
    const int ci = truth_->label(i);
    const int cj = truth_->label(j);
    const bool same = ci == cj;
    const Answer truthful = same ? Answer::Same : Answer::Different;
    if (kind_.model == OracleKind::Model::Perfect) {
        return truthful;
    }

    const double dxy = ds_->distance(i, j);
    if (same) {
        return dxy > 2.0 * kind_.rho * truth_->radius(ci) ? Answer::NotSure : truthful;
    }
    const double di = truth_->center_distance(i);
    const double dj = truth_->center_distance(j);
    if (kind_.model == OracleKind::Model::LocalDistanceWeak) {
        return dxy < (kind_.nu - 1.0) * std::min(di, dj) ? Answer::NotSure : truthful;
    }
    const bool outside = di > kind_.rho * truth_->radius(ci) || dj > kind_.rho * truth_->radius(cj);
    return outside ? Answer::NotSure : truthful;
}

Answer Oracle::same_cluster_query(std::size_t i, std::size_t j) {
    const Answer a = model_answer(i, j);
    ++queries_;
    if (a == Answer::NotSure && resolver_) {
        return std::bernoulli_distribution(0.5)(*resolver_) ? Answer::Same : Answer::Different;
    }
    return a;
}

Assignment cluster_assignment_query(Oracle& oracle, std::size_t x, std::span<const std::size_t> reps, int k) {
    if (reps.empty()) {
        return {Assignment::Kind::NewGroup, 0};
    }
    bool unsure = false;
    for (std::size_t g = 0; g < reps.size(); ++g) {
        const Answer a = oracle.same_cluster_query(x, reps[g]);
        if (a == Answer::Same) {
            return {Assignment::Kind::Group, g};
        }
        unsure = unsure || a == Answer::NotSure;
    }
    if (!unsure && reps.size() < static_cast<std::size_t>(k)) {
        return {Assignment::Kind::NewGroup, reps.size()};
    }
    return {Assignment::Kind::NotSure, 0};
}

}  // namespace ssac
