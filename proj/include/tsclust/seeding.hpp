#pragma once

// Initial solution construction: a random first centroid, then repeatedly
// the point with the largest summed distance to all centroids picked so far.

#include <limits>
#include <optional>

#include "tsclust/core.hpp"
#include "tsclust/random.hpp"

namespace tsclust {

/// How the first centroid is chosen: forced to a specific point (tests,
/// reproduction experiments) or drawn uniformly from the seeded generator.
struct SeedChoice {
    std::optional<Index> first_centroid;
    std::uint64_t rng_seed = 0;
};

/// Medoid list built by maximum-sum-of-distances selection. The caller owns
/// the generator; only the first centroid consumes a draw.
inline std::vector<Index> select_initial_centroids(const Dataset& data, int n_clusters, Rng& rng,
                                                   std::optional<Index> forced_first = std::nullopt) {
    const Index n = data.size();
    if (n_clusters < 2 || n_clusters > n)
        throw ParamError("number of clusters must be in [2, n_points]");

    Index first;
    if (forced_first) {
        first = *forced_first;
        if (first < 0 || first >= n) throw ParamError("forced first centroid out of range");
    } else {
        first = static_cast<Index>(draw_bounded(rng, static_cast<std::uint64_t>(n - 1)));
    }

    std::vector<Index> centroids{first};
    std::vector<char> taken(n, 0);
    taken[first] = 1;

    // sum_dist[x] accumulates the distance from x to every centroid in the
    // order the centroids were added.
    std::vector<double> sum_dist(n, 0.0);
    Index latest = first;
    while (static_cast<int>(centroids.size()) < n_clusters) {
        double max_v = -1.0;
        Index next = -1;
        for (Index x = 0; x < n; ++x) {
            if (taken[x]) continue;
            sum_dist[x] += score(data, x, latest);
            if (sum_dist[x] > max_v) {  // strict: ties keep the lowest index
                max_v = sum_dist[x];
                next = x;
            }
        }
        centroids.push_back(next);
        taken[next] = 1;
        latest = next;
    }
    return centroids;
}

/// Full initial solution: centroid selection followed by closest-centroid
/// assignment of the remaining points.
inline Solution create_initial_solution(const Dataset& data, int n_clusters, Rng& rng,
                                        std::optional<Index> forced_first = std::nullopt) {
    return assign_closest(select_initial_centroids(data, n_clusters, rng, forced_first), data);
}

inline Solution create_initial_solution(const Dataset& data, int n_clusters, const SeedChoice& seed) {
    Rng rng(seed.rng_seed);
    return create_initial_solution(data, n_clusters, rng, seed.first_centroid);
}

}  // namespace tsclust
