#pragma once

// Data model shared by every component: datasets, medoid solutions, the
// Euclidean score, aggregate distance sums and closest-centroid assignment.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tsclust {

using Index = std::int32_t;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ModelError : public Error { public: using Error::Error; };
class ParamError : public Error { public: using Error::Error; };
class MoveError  : public Error { public: using Error::Error; };
class MetricError : public Error { public: using Error::Error; };
class EngineError : public Error { public: using Error::Error; };
class IoError    : public Error { public: using Error::Error; };

/// One observation: k attribute values plus an optional ground-truth label.
struct DataPoint {
    std::vector<double> coords;
    std::optional<std::string> label;
};

/// Immutable set of points, all of the same dimension. Coordinates are kept
/// in one flat row-major buffer; labels (when present) are interned to ids.
class Dataset {
public:
    Dataset() = default;

    static Dataset from_points(const std::vector<DataPoint>& points) {
        Dataset d;
        if (points.size() < 2)
            throw ModelError("dataset needs at least 2 points");
        d.dim_ = static_cast<int>(points[0].coords.size());
        if (d.dim_ < 1)
            throw ModelError("points must have at least one attribute");
        bool any_label = false;
        for (const auto& p : points) any_label |= p.label.has_value();
        d.coords_.reserve(points.size() * static_cast<std::size_t>(d.dim_));
        for (std::size_t t = 0; t < points.size(); ++t) {
            const auto& p = points[t];
            if (static_cast<int>(p.coords.size()) != d.dim_)
                throw ModelError("point " + std::to_string(t) + " has dimension " +
                                 std::to_string(p.coords.size()) + ", expected " +
                                 std::to_string(d.dim_));
            for (double v : p.coords) {
                if (!std::isfinite(v))
                    throw ModelError("point " + std::to_string(t) + " has a non-finite coordinate");
                d.coords_.push_back(v);
            }
            if (any_label) {
                if (!p.label)
                    throw ModelError("point " + std::to_string(t) + " is missing a label");
                d.labels_.push_back(d.intern_label(*p.label));
            }
        }
        return d;
    }

    Index size() const { return static_cast<Index>(labels_.empty() ? coords_.size() / dim_ : labels_.size()); }
    int dim() const { return dim_; }
    bool has_labels() const { return !labels_.empty(); }
    int n_labels() const { return static_cast<int>(label_names_.size()); }

    std::span<const double> point(Index i) const {
        return {coords_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
    }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<std::string>& label_names() const { return label_names_; }

    /// Min-max rescaling of every attribute to [0,1]; constant attributes map to 0.
    void normalize_min_max() {
        const Index n = size();
        for (int a = 0; a < dim_; ++a) {
            double lo = coords_[a], hi = coords_[a];
            for (Index t = 1; t < n; ++t) {
                double v = coords_[static_cast<std::size_t>(t) * dim_ + a];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            const double range = hi - lo;
            for (Index t = 0; t < n; ++t) {
                double& v = coords_[static_cast<std::size_t>(t) * dim_ + a];
                v = range > 0 ? (v - lo) / range : 0.0;
            }
        }
    }

private:
    friend Dataset make_unlabeled(std::vector<double> coords, int dim);

    int intern_label(const std::string& name) {
        for (std::size_t i = 0; i < label_names_.size(); ++i)
            if (label_names_[i] == name) return static_cast<int>(i);
        label_names_.push_back(name);
        return static_cast<int>(label_names_.size() - 1);
    }

    std::vector<double> coords_;
    int dim_ = 0;
    std::vector<int> labels_;
    std::vector<std::string> label_names_;
};

/// Builds a dataset straight from a flat row-major buffer (no labels).
inline Dataset make_unlabeled(std::vector<double> coords, int dim) {
    Dataset d;
    if (dim < 1 || coords.size() % dim != 0 || coords.size() / dim < 2)
        throw ModelError("flat buffer does not describe a dataset of >= 2 points");
    for (double v : coords)
        if (!std::isfinite(v)) throw ModelError("non-finite coordinate");
    d.coords_ = std::move(coords);
    d.dim_ = dim;
    return d;
}

/// Euclidean distance between two points of equal dimension.
inline double score(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw ModelError("score: dimension mismatch");
    double s = 0.0;
    for (std::size_t p = 0; p < a.size(); ++p) {
        const double d = a[p] - b[p];
        s += d * d;
    }
    return std::sqrt(s);
}

inline double score(const Dataset& data, Index i, Index j) {
    return score(data.point(i), data.point(j));
}

/// Sum of pairwise scores between the sets L and U, skipping identical indices.
inline double v_sum(std::span<const Index> l, std::span<const Index> u, const Dataset& data) {
    double s = 0.0;
    for (Index i : l)
        for (Index j : u)
            if (i != j) s += score(data, i, j);
    return s;
}

/// A medoid clustering: each cluster's centroid is one of the data points.
struct Solution {
    std::vector<Index> centroids;   // cluster c is centered at point centroids[c]
    std::vector<Index> assignment;  // per point, cluster index in [0, n_clusters)
    double objective = 0.0;

    int n_clusters() const { return static_cast<int>(centroids.size()); }
};

/// Picks the closest of `n_centers` centers for one point; ties go to the
/// lowest center position. `center_at(c)` must yield the c-th center's coords.
template <class CenterAt>
std::pair<Index, double> nearest_center(std::span<const double> pt, Index n_centers, CenterAt&& center_at) {
    Index best = 0;
    double best_d = score(pt, center_at(Index{0}));
    for (Index c = 1; c < n_centers; ++c) {
        const double d = score(pt, center_at(c));
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return {best, best_d};
}

/// Closest-centroid decision for one point against a medoid centroid list.
/// Centroid points are pinned to their own cluster.
inline std::pair<Index, double> assign_point(const Dataset& data, std::span<const Index> centroids, Index p) {
    for (Index c = 0; c < static_cast<Index>(centroids.size()); ++c)
        if (centroids[c] == p) return {c, 0.0};
    return nearest_center(data.point(p), static_cast<Index>(centroids.size()),
                          [&](Index c) { return data.point(centroids[c]); });
}

inline void check_centroids(const Dataset& data, std::span<const Index> centroids) {
    const Index n = data.size();
    if (centroids.empty() || static_cast<Index>(centroids.size()) > n)
        throw ModelError("centroid count must be in [1, n_points]");
    for (std::size_t a = 0; a < centroids.size(); ++a) {
        if (centroids[a] < 0 || centroids[a] >= n)
            throw ModelError("centroid index out of range");
        for (std::size_t b = a + 1; b < centroids.size(); ++b)
            if (centroids[a] == centroids[b])
                throw ModelError("duplicate centroid index " + std::to_string(centroids[a]));
    }
}

/// Assigns every point to its closest centroid and totals the objective.
/// The objective is accumulated in ascending point order; every code path
/// that produces a Solution uses this same fold so that equal clusterings
/// carry bit-identical objective values.
inline Solution assign_closest(std::span<const Index> centroids, const Dataset& data) {
    check_centroids(data, centroids);
    const Index n = data.size();
    Solution sol;
    sol.centroids.assign(centroids.begin(), centroids.end());
    sol.assignment.resize(n);
    double obj = 0.0;
    for (Index p = 0; p < n; ++p) {
        auto [c, d] = assign_point(data, centroids, p);
        sol.assignment[p] = c;
        obj += d;
    }
    sol.objective = obj;
    return sol;
}

/// Objective recomputed cluster by cluster as the sum of each cluster's
/// total member-to-centroid distance. Independent of the fold inside
/// assign_closest; agreement within 1e-9 is a model invariant.
inline double objective(const Solution& sol, const Dataset& data) {
    const int k = sol.n_clusters();
    std::vector<double> per_cluster(k, 0.0);
    for (Index p = 0; p < data.size(); ++p) {
        const Index c = sol.assignment[p];
        if (c < 0 || c >= k) throw ModelError("assignment refers to a cluster that does not exist");
        if (p != sol.centroids[c]) per_cluster[c] += score(data, p, sol.centroids[c]);
    }
    double total = 0.0;
    for (double v : per_cluster) total += v;
    return total;
}

/// Members of each cluster in ascending point order.
inline std::vector<std::vector<Index>> cluster_members(const Solution& sol, const Dataset& data) {
    std::vector<std::vector<Index>> members(sol.n_clusters());
    for (Index p = 0; p < data.size(); ++p)
        members[sol.assignment[p]].push_back(p);
    return members;
}

}  // namespace tsclust
