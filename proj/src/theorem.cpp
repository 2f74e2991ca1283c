#include "ssac/theorem.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

namespace ssac {

double coverage_coefficient(const TheoremParams& tp, WeakModel model) {
    if (model == WeakModel::Local) {
        return std::min(2.0 * tp.rho - 1.0, tp.gamma - tp.nu + 1.0) - 2.0 * tp.epsilon;
    }
    return 2.0 * tp.rho - 1.0 - 2.0 * tp.epsilon;
}

CoverageReport check_theorem_condition(const Dataset& ds, const Clustering& truth, const TheoremParams& tp,
                                       WeakModel model) {
    if (!(tp.epsilon >= 0.0) || tp.epsilon > (tp.gamma - 1.0) / 2.0) {
        throw UsageError(
            fmt::format("epsilon {} must lie in [0, (gamma - 1) / 2] for gamma {}", tp.epsilon, tp.gamma));
    }
    if (truth.size() != ds.size()) {
        throw UsageError("clustering does not match the dataset");
    }

    CoverageReport report;
    report.coefficient = coverage_coefficient(tp, model);
    report.clusters.resize(static_cast<std::size_t>(truth.k()));
    std::vector<double> closest(report.clusters.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const int c = truth.label(i);
        if (c != kUnassigned) {
            auto& m = closest[static_cast<std::size_t>(c)];
            m = std::min(m, truth.center_distance(i));
        }
    }

    report.satisfied = report.coefficient > 0.0;
    for (int c = 0; c < truth.k(); ++c) {
        auto& cov = report.clusters[static_cast<std::size_t>(c)];
        const double r = truth.radius(c);
        const double d = closest[static_cast<std::size_t>(c)];
        cov.min_ratio = r > 0.0 ? d / r : 0.0;
        cov.covered = report.coefficient > 0.0 && d < report.coefficient * r;
        report.satisfied = report.satisfied && cov.covered;
    }
    return report;
}

WeakParams map_cdist_params(double c_dist, double gamma) {
    if (!(c_dist > 0.0 && c_dist <= 1.0)) {
        throw UsageError(fmt::format("c_dist must lie in (0, 1], got {}", c_dist));
    }
    return {std::max(1.0, gamma) + 2.0 * (1.0 - c_dist), c_dist};
}

}  // namespace ssac
