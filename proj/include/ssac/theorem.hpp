#ifndef SSAC_THEOREM_HPP
#define SSAC_THEOREM_HPP

#include <vector>

#include "ssac/core.hpp"

namespace ssac {

enum class WeakModel { Local, Global };

struct TheoremParams {
    double epsilon = 0.0;  // 0 <= epsilon <= (gamma - 1) / 2
    double gamma = 1.0;
    double nu = 1.0;
    double rho = 1.0;
};

struct ClusterCoverage {
    double min_ratio = 0.0;  // min over members of d(x, mu) / r
    bool covered = false;    // some member lies strictly inside coefficient * r
};

struct CoverageReport {
    double coefficient = 0.0;
    bool satisfied = false;
    std::vector<ClusterCoverage> clusters;
};

// Recovery coefficient of the weak model:
//   local:  min(2 rho - 1, gamma - nu + 1) - 2 epsilon
//   global: 2 rho - 1 - 2 epsilon
double coverage_coefficient(const TheoremParams& tp, WeakModel model);

// Checks that every cluster holds a point strictly within coefficient * r of
// its center. A nonpositive coefficient is unsatisfiable. Throws UsageError
// when epsilon is negative or exceeds (gamma - 1) / 2.
CoverageReport check_theorem_condition(const Dataset& ds, const Clustering& truth, const TheoremParams& tp,
                                       WeakModel model);

struct WeakParams {
    double nu = 1.0;
    double rho = 1.0;
};

// rho = c_dist, nu = max(1, gamma) + 2 (1 - c_dist).
WeakParams map_cdist_params(double c_dist, double gamma);

}  // namespace ssac

#endif  // SSAC_THEOREM_HPP
