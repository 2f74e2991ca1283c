#include "ssac/core.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace ssac {

std::string ExtendedReal::to_string() const {
    if (infinite_) {
        return "inf";
    }
    return fmt::format("{}", value_);
}

double distance(PointView a, PointView b) {
    if (a.size() != b.size()) {
        throw UsageError(fmt::format("distance: dimension mismatch ({} vs {})", a.size(), b.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

Dataset::Dataset(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) {
        throw UsageError("dataset dimension must be at least 1");
    }
    if (coords_.empty() || coords_.size() % dim_ != 0) {
        throw UsageError(fmt::format("dataset needs a positive multiple of {} coordinates, got {}", dim_,
                                     coords_.size()));
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!std::isfinite(coords_[i])) {
            throw UsageError(fmt::format("point {} has a non-finite coordinate", i / dim_));
        }
    }
}

Dataset Dataset::from_points(const std::vector<Point>& points) {
    if (points.empty()) {
        throw UsageError("dataset must contain at least one point");
    }
    const std::size_t dim = points.front().size();
    std::vector<double> coords;
    coords.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (p.size() != dim) {
            throw UsageError("all points of a dataset must share one dimension");
        }
        coords.insert(coords.end(), p.begin(), p.end());
    }
    return Dataset(dim, std::move(coords));
}

std::vector<Point> compute_centers(const Dataset& ds, const std::vector<int>& labels, int k) {
    if (labels.size() != ds.size()) {
        throw InvalidClustering(fmt::format("label map has {} entries for {} points", labels.size(), ds.size()));
    }
    if (k < 1) {
        throw InvalidClustering("k must be at least 1");
    }
    const auto kk = static_cast<std::size_t>(k);
    std::vector<Point> centers(kk, Point(ds.dim(), 0.0));
    std::vector<std::size_t> counts(kk, 0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const int c = labels[i];
        if (c == kUnassigned) {
            continue;
        }
        if (c < 0 || c >= k) {
            throw InvalidClustering(fmt::format("point {} has label {} outside [0, {})", i, c, k));
        }
        const auto p = ds.point(i);
        auto& center = centers[static_cast<std::size_t>(c)];
        for (std::size_t d = 0; d < ds.dim(); ++d) {
            center[d] += p[d];
        }
        ++counts[static_cast<std::size_t>(c)];
    }
    for (std::size_t c = 0; c < kk; ++c) {
        if (counts[c] == 0) {
            throw InvalidClustering(fmt::format("cluster {} is empty", c));
        }
        for (auto& v : centers[c]) {
            v /= static_cast<double>(counts[c]);
        }
    }
    return centers;
}

Clustering::Clustering(const Dataset& ds, std::vector<int> labels, int k, bool partial)
    : k_(k), partial_(partial), labels_(std::move(labels)) {
    centers_ = compute_centers(ds, labels_, k_);
    radii_.assign(static_cast<std::size_t>(k_), 0.0);
    center_dist_.assign(ds.size(), 0.0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const int c = labels_[i];
        if (c == kUnassigned) {
            continue;
        }
        const double d = distance(ds.point(i), center(c));
        center_dist_[i] = d;
        auto& r = radii_[static_cast<std::size_t>(c)];
        r = std::max(r, d);
    }
}

Clustering Clustering::from_labels(const Dataset& ds, std::vector<int> labels, int k) {
    if (std::find(labels.begin(), labels.end(), kUnassigned) != labels.end()) {
        throw InvalidClustering("ground-truth clustering must label every point");
    }
    return Clustering(ds, std::move(labels), k, false);
}

Clustering Clustering::from_partial_labels(const Dataset& ds, std::vector<int> labels, int k) {
    const bool partial = std::find(labels.begin(), labels.end(), kUnassigned) != labels.end();
    return Clustering(ds, std::move(labels), k, partial);
}

std::vector<std::size_t> Clustering::members(int c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == c) {
            out.push_back(i);
        }
    }
    return out;
}

bool is_center_based(const Dataset& ds, const Clustering& clustering) {
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const int own = clustering.label(i);
        if (own == kUnassigned) {
            continue;
        }
        const double own_d = clustering.center_distance(i);
        for (int c = 0; c < clustering.k(); ++c) {
            if (c != own && distance(ds.point(i), clustering.center(c)) <= own_d) {
                return false;
            }
        }
    }
    return true;
}

ExtendedReal realized_gamma(const Dataset& ds, const Clustering& clustering) {
    bool bounded = false;
    double best = 0.0;
    for (int c = 0; c < clustering.k(); ++c) {
        double outside = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (clustering.label(i) != c) {
                outside = std::min(outside, distance(ds.point(i), clustering.center(c)));
            }
        }
        if (std::isinf(outside)) {
            continue;
        }
        if (outside == 0.0) {
            return ExtendedReal::finite(0.0);
        }
        const double r = clustering.radius(c);
        if (r == 0.0) {
            continue;
        }
        const double ratio = outside / r;
        if (!bounded || ratio < best) {
            best = ratio;
            bounded = true;
        }
    }
    return bounded ? ExtendedReal::finite(best) : ExtendedReal::infinite();
}

}  // namespace ssac
