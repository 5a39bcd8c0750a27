#pragma once

// Per-cluster sphere radii, neighborhoods and candidate lists. Candidate
// lists are the intensification device: the neighborhood sorted by cost,
// truncated to epsilon + delta entries. Diversification keeps the whole
// neighborhood.

#include <algorithm>
#include <limits>
#include <numeric>

#include "tsclust/core.hpp"
#include "tsclust/random.hpp"

namespace tsclust {

enum class RadiusMode { kSmall, kStandard, kLarge };

inline const char* to_string(RadiusMode m) {
    switch (m) {
        case RadiusMode::kSmall: return "small";
        case RadiusMode::kLarge: return "large";
        default: return "standard";
    }
}

/// Sphere radius of one cluster. Standard mode divides the summed
/// member-to-centroid distance by the full cluster size (centroid included
/// in the count, not in the sum); small halves it; large takes the farthest
/// member distance.
inline double radius(std::span<const Index> cluster_members, Index centroid, RadiusMode mode,
                     const Dataset& data) {
    double sum = 0.0, max_d = 0.0;
    for (Index m : cluster_members) {
        if (m == centroid) continue;
        const double d = score(data, m, centroid);
        sum += d;
        max_d = std::max(max_d, d);
    }
    switch (mode) {
        case RadiusMode::kSmall: return sum / cluster_members.size() / 2.0;
        case RadiusMode::kLarge: return max_d;
        default: return sum / cluster_members.size();
    }
}

/// Cluster members strictly other than the centroid whose distance to the
/// centroid is at most r.
inline std::vector<Index> component_neighborhood(std::span<const Index> cluster_members, Index centroid,
                                                 double r, const Dataset& data) {
    std::vector<Index> nb;
    for (Index m : cluster_members)
        if (m != centroid && score(data, m, centroid) <= r) nb.push_back(m);
    return nb;
}

/// One cluster's candidate material: the neighborhood sorted ascending by
/// (V(k), point index), the cost of each entry, and the epsilon/delta/n
/// bookkeeping. The candidate list CL(i) is the first `selected` entries.
struct ClusterCandidates {
    Index centroid = -1;
    std::vector<Index> neighborhood;  // sorted by (v, index)
    std::vector<double> v;            // aligned with neighborhood
    int epsilon = 0;
    int delta = 0;
    int selected = 0;

    std::span<const Index> candidates() const {
        return {neighborhood.data(), static_cast<std::size_t>(selected)};
    }
};

struct CandidateList {
    std::vector<ClusterCandidates> clusters;

    int total_candidates() const {
        int n = 0;
        for (const auto& c : clusters) n += c.selected;
        return n;
    }
};

/// Builds one cluster's sorted neighborhood, V(k) costs and epsilon. Pure:
/// safe to run for different clusters on different workers. The delta draw
/// and truncation happen afterwards, in cluster order, on the caller.
inline ClusterCandidates build_cluster_candidates(std::span<const Index> cluster_members, Index centroid,
                                                  RadiusMode mode, std::span<const double> v_prime,
                                                  const Dataset& data) {
    ClusterCandidates cc;
    cc.centroid = centroid;
    const double r = radius(cluster_members, centroid, mode, data);
    cc.neighborhood = component_neighborhood(cluster_members, centroid, r, data);

    // V(k) with L = {centroid} and U = N(i) \ {centroid, k}: the summed
    // distance from the centroid to the rest of the neighborhood.
    double total = 0.0;
    for (Index m : cc.neighborhood) total += score(data, m, centroid);
    cc.v.resize(cc.neighborhood.size());
    for (std::size_t t = 0; t < cc.neighborhood.size(); ++t)
        cc.v[t] = total - score(data, cc.neighborhood[t], centroid);

    std::vector<std::size_t> order(cc.neighborhood.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (cc.v[a] != cc.v[b]) return cc.v[a] < cc.v[b];
        return cc.neighborhood[a] < cc.neighborhood[b];
    });
    std::vector<Index> nb(order.size());
    std::vector<double> v(order.size());
    for (std::size_t t = 0; t < order.size(); ++t) {
        nb[t] = cc.neighborhood[order[t]];
        v[t] = cc.v[order[t]];
    }
    cc.neighborhood = std::move(nb);
    cc.v = std::move(v);

    cc.epsilon = 0;
    for (std::size_t t = 0; t < cc.neighborhood.size(); ++t)
        if (cc.v[t] < v_prime[cc.neighborhood[t]]) ++cc.epsilon;
    return cc;
}

/// Applies the random part of the candidate list size: delta uniform in
/// [0, |N(i)| - epsilon], n(i) = min(epsilon + delta, |N(i)|). Draws once
/// per cluster, in cluster order, regardless of neighborhood size.
template <class Gen>
void select_candidates(CandidateList& cl, Gen& rng) {
    for (auto& cc : cl.clusters) {
        const int n = static_cast<int>(cc.neighborhood.size());
        cc.delta = static_cast<int>(draw_bounded(rng, static_cast<std::uint64_t>(n - cc.epsilon)));
        cc.selected = std::min(cc.epsilon + cc.delta, n);
    }
}

/// Intensification candidate lists for a whole solution.
template <class Gen>
CandidateList create_candidate_list(const Solution& sol, RadiusMode mode, std::span<const double> v_prime,
                                    Gen& rng, const Dataset& data) {
    const auto members = cluster_members(sol, data);
    CandidateList cl;
    cl.clusters.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
        cl.clusters.push_back(build_cluster_candidates(members[i], sol.centroids[i], mode, v_prime, data));
    select_candidates(cl, rng);
    return cl;
}

/// Diversification: the entire neighborhood of every cluster, still sorted
/// ascending by V(k).
inline CandidateList diversification_candidates(const Solution& sol, RadiusMode mode, const Dataset& data) {
    const auto members = cluster_members(sol, data);
    std::vector<double> inf(data.size(), std::numeric_limits<double>::infinity());
    CandidateList cl;
    cl.clusters.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        auto cc = build_cluster_candidates(members[i], sol.centroids[i], mode, inf, data);
        cc.epsilon = static_cast<int>(cc.neighborhood.size());
        cc.delta = 0;
        cc.selected = cc.epsilon;
        cl.clusters.push_back(std::move(cc));
    }
    return cl;
}

}  // namespace tsclust
