#ifndef SSAC_CORE_HPP
#define SSAC_CORE_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ssac/errors.hpp"

namespace ssac {

using Point = std::vector<double>;
using PointView = std::span<const double>;

inline constexpr int kUnassigned = -1;

// Nonnegative real extended with a +inf sentinel. Used for margins and
// search thresholds that can be unbounded; serializes the sentinel as "inf".
class ExtendedReal {
public:
    static ExtendedReal infinite() { return ExtendedReal(true, 0.0); }
    static ExtendedReal finite(double v) { return ExtendedReal(false, v); }

    bool is_infinite() const { return infinite_; }
    // +inf as a double when the sentinel is set.
    double value() const { return infinite_ ? std::numeric_limits<double>::infinity() : value_; }

    // True iff x < *this.
    bool exceeds(double x) const { return infinite_ || x < value_; }

    std::string to_string() const;

    friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;

private:
    ExtendedReal(bool inf, double v) : infinite_(inf), value_(v) {}

    bool infinite_;
    double value_;
};

// Euclidean distance. Throws UsageError on dimension mismatch.
double distance(PointView a, PointView b);

// Dense, immutable, row-major collection of m-dimensional points.
class Dataset {
public:
    Dataset(std::size_t dim, std::vector<double> coords);

    static Dataset from_points(const std::vector<Point>& points);

    std::size_t size() const { return coords_.size() / dim_; }
    std::size_t dim() const { return dim_; }

    PointView point(std::size_t i) const {
        return PointView(coords_.data() + i * dim_, dim_);
    }

    double distance(std::size_t i, std::size_t j) const { return ssac::distance(point(i), point(j)); }

    const std::vector<double>& coords() const { return coords_; }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::size_t dim_;
    std::vector<double> coords_;
};

// Arithmetic mean per label. Unassigned entries are skipped; any other label
// outside [0, k) or an empty cluster throws InvalidClustering.
std::vector<Point> compute_centers(const Dataset& ds, const std::vector<int>& labels, int k);

// Label map plus derived centers and radii. Immutable after construction.
class Clustering {
public:
    // Every index labelled, every cluster nonempty.
    static Clustering from_labels(const Dataset& ds, std::vector<int> labels, int k);
    // kUnassigned entries allowed; flagged through is_partial().
    static Clustering from_partial_labels(const Dataset& ds, std::vector<int> labels, int k);

    int k() const { return k_; }
    std::size_t size() const { return labels_.size(); }
    bool is_partial() const { return partial_; }

    const std::vector<int>& labels() const { return labels_; }
    int label(std::size_t i) const { return labels_[i]; }

    const std::vector<Point>& centers() const { return centers_; }
    PointView center(int c) const { return centers_[static_cast<std::size_t>(c)]; }
    double radius(int c) const { return radii_[static_cast<std::size_t>(c)]; }
    const std::vector<double>& radii() const { return radii_; }

    // d(x_i, center of x_i's own cluster); meaningless for unassigned points.
    double center_distance(std::size_t i) const { return center_dist_[i]; }

    std::vector<std::size_t> members(int c) const;

private:
    Clustering(const Dataset& ds, std::vector<int> labels, int k, bool partial);

    int k_;
    bool partial_;
    std::vector<int> labels_;
    std::vector<Point> centers_;
    std::vector<double> radii_;
    std::vector<double> center_dist_;
};

// True iff every assigned point's label is the strict arg-min over center
// distances. A tie between two centers is a violation.
bool is_center_based(const Dataset& ds, const Clustering& clustering);

// Supremum margin: min over clusters of (closest outside point to the center)
// divided by the cluster radius. Infinite when k == 1 or no cluster constrains
// it; 0 when an outside point sits on a center.
ExtendedReal realized_gamma(const Dataset& ds, const Clustering& clustering);

}  // namespace ssac

#endif  // SSAC_CORE_HPP
