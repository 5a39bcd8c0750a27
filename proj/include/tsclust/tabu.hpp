#pragma once

// Sequential Tabu Search driver: recency tabu list, aspiration, candidate
// list driven intensification/diversification, and the centroid-swap move
// evaluator shared with the parallel engine.

#include <cassert>
#include <cmath>
#include <limits>
#include <optional>

#include "tsclust/core.hpp"
#include "tsclust/neighborhood.hpp"
#include "tsclust/random.hpp"
#include "tsclust/seeding.hpp"

namespace tsclust {

struct SearchParams {
    int n_clusters = 2;
    int tenure = 5;
    int max_iterations = 1000;
    RadiusMode radius_mode = RadiusMode::kStandard;
    int max_no_improve = 50;       // NI limit before a phase switch
    int n_partitions = 1;          // data blocks used by the parallel engine
    std::uint64_t seed = 0;
    std::optional<Index> first_centroid;  // pin the seeded pick (tests/experiments)
    bool record_trace = true;
};

inline void check_params(const SearchParams& p, const Dataset& data) {
    if (p.tenure < 1) throw ParamError("tenure must be >= 1");
    if (p.max_iterations < 0) throw ParamError("max_iterations must be >= 0");
    if (p.max_no_improve < 1) throw ParamError("max_no_improve must be >= 1");
    if (p.n_partitions < 1) throw ParamError("n_partitions must be >= 1");
    if (p.n_clusters < 2 || p.n_clusters > data.size())
        throw ParamError("n_clusters must be in [2, n_points]");
}

/// Recency memory: expiry[j] is the iteration at which point j's tabu
/// restriction is relaxed. j is tabu at iteration i while expiry[j] > i.
struct TabuList {
    std::vector<long long> expiry;
    int tenure = 1;

    TabuList() = default;
    TabuList(Index n_points, int tenure_) : expiry(n_points, 0), tenure(tenure_) {}

    bool is_tabu(Index j, long long iteration) const { return expiry[j] > iteration; }
    void record_displaced(Index j, long long iteration) { expiry[j] = iteration + tenure; }
};

/// A centroid substitution: cluster `cluster` adopts `candidate` as its
/// centroid, displacing the current one.
struct Move {
    Index cluster = -1;
    Index candidate = -1;
};

/// Per-point nearest and second-nearest current centroid (ties resolved by
/// centroid position). Lets a swap move be scored with one distance
/// evaluation per point instead of one per point per centroid.
struct NearestCache {
    std::vector<Index> c1, c2;
    std::vector<double> d1, d2;

    void resize(Index n) {
        c1.assign(n, -1);
        c2.assign(n, -1);
        d1.assign(n, std::numeric_limits<double>::infinity());
        d2.assign(n, std::numeric_limits<double>::infinity());
    }
};

inline void build_nearest_cache_range(const Dataset& data, std::span<const Index> centroids,
                                      Index begin, Index end, NearestCache& cache) {
    const Index k = static_cast<Index>(centroids.size());
    for (Index p = begin; p < end; ++p) {
        double d1 = std::numeric_limits<double>::infinity();
        double d2 = d1;
        Index c1 = -1, c2 = -1;
        for (Index c = 0; c < k; ++c) {
            const double d = score(data, p, centroids[c]);
            if (d < d1) {
                d2 = d1; c2 = c1;
                d1 = d; c1 = c;
            } else if (d < d2) {
                d2 = d; c2 = c;
            }
        }
        cache.d1[p] = d1; cache.c1[p] = c1;
        cache.d2[p] = d2; cache.c2[p] = c2;
    }
}

/// Exact objective of the solution reached by the move, folded over points
/// in ascending order — the same fold assign_closest uses, so the value is
/// bit-identical to the objective of the constructed solution.
inline double swap_move_objective(const Dataset& data, const NearestCache& cache, const Move& move) {
    const Index n = data.size();
    const auto xk = data.point(move.candidate);
    double obj = 0.0;
    for (Index p = 0; p < n; ++p) {
        const double dk = score(data.point(p), xk);
        const double other = cache.c1[p] == move.cluster ? cache.d2[p] : cache.d1[p];
        obj += dk < other ? dk : other;
    }
    return obj;
}

/// Applies a centroid substitution and reassigns every point.
inline Solution apply_move(const Solution& current, Index cluster, Index new_centroid, const Dataset& data) {
    if (cluster < 0 || cluster >= current.n_clusters()) throw MoveError("cluster index out of range");
    if (current.assignment[new_centroid] != cluster)
        throw MoveError("candidate centroid is not a member of the target cluster");
    if (current.centroids[cluster] == new_centroid)
        throw MoveError("candidate centroid already is the cluster centroid");
    std::vector<Index> centroids = current.centroids;
    centroids[cluster] = new_centroid;
    return assign_closest(centroids, data);
}

/// In-thread execution engine: the reference for what every parallel
/// configuration must reproduce bit for bit.
class SerialEngine {
public:
    explicit SerialEngine(const Dataset& data) : data_(data) {}

    Solution assign_full(std::span<const Index> centroids) const { return assign_closest(centroids, data_); }

    NearestCache build_cache(std::span<const Index> centroids) const {
        NearestCache cache;
        cache.resize(data_.size());
        build_nearest_cache_range(data_, centroids, 0, data_.size(), cache);
        return cache;
    }

    std::vector<double> score_moves(const NearestCache& cache, std::span<const Move> moves) const {
        std::vector<double> z(moves.size());
        for (std::size_t m = 0; m < moves.size(); ++m) z[m] = swap_move_objective(data_, cache, moves[m]);
        return z;
    }

    /// Neighborhoods, V(k) and epsilon for every cluster; the delta draw is
    /// left to the driver so the rng stream is engine independent.
    CandidateList build_candidates(const Solution& sol, RadiusMode mode, std::span<const double> v_prime) const {
        const auto members = cluster_members(sol, data_);
        CandidateList cl;
        cl.clusters.resize(members.size());
        for (std::size_t i = 0; i < members.size(); ++i)
            cl.clusters[i] = build_cluster_candidates(members[i], sol.centroids[i], mode, v_prime, data_);
        return cl;
    }

    const Dataset& data() const { return data_; }

private:
    const Dataset& data_;
};

enum class Phase { kIntensification, kDiversification };

inline const char* to_string(Phase p) {
    return p == Phase::kIntensification ? "intensification" : "diversification";
}

struct SearchState {
    Solution current;            // S; coincides with the local best S' between steps
    double z_local_best = 0.0;   // Z(S')
    Solution global_best;        // S*
    long long iteration = 0;     // I, counts ts_step invocations
    int no_improve = 0;          // NI
    int max_no_improve = 50;     // MaxNI
    Phase phase = Phase::kIntensification;
    int phase_failures = 0;      // consecutive phases that did not improve S*
    bool improved_this_phase = false;
    std::vector<double> v_prime;     // V'(k): V at the most recent local optimum
    bool v_prime_pending = false;    // a new local best awaits its V' snapshot
    NearestCache cache;              // nearest centroids of `current`
};

struct TraceEntry {
    long long iteration = 0;
    Phase phase = Phase::kIntensification;
    int n_candidates = 0;
    bool accepted = false;
    Move move;
    Index displaced = -1;
    double z_move = std::numeric_limits<double>::quiet_NaN();
    double z_global_before = 0.0;
    double z_local_after = 0.0;
    double z_global_after = 0.0;
    bool incoming_was_tabu = false;
    bool aspiration = false;
    int no_improve_after = 0;
};

struct RunResult {
    Solution best;
    long long iterations = 0;
    std::vector<TraceEntry> trace;
};

/// One Tabu Search iteration over a prebuilt candidate list: score every
/// candidate move, accept the best admissible one, update the tabu list,
/// S', S* and NI.
template <class Engine>
TraceEntry ts_step(SearchState& st, const CandidateList& cl, TabuList& tabu, Engine& eng) {
    ++st.iteration;
    const long long iter = st.iteration;

    std::vector<Move> moves;
    for (std::size_t i = 0; i < cl.clusters.size(); ++i)
        for (Index cand : cl.clusters[i].candidates())
            moves.push_back({static_cast<Index>(i), cand});

    TraceEntry entry;
    entry.iteration = iter;
    entry.phase = st.phase;
    entry.n_candidates = static_cast<int>(moves.size());
    entry.z_global_before = st.global_best.objective;

    const std::vector<double> z = eng.score_moves(st.cache, moves);

    // Admissible: non-tabu and improving on S', or aspiration beating S*.
    int best = -1;
    bool best_tabu = false;
    for (std::size_t m = 0; m < moves.size(); ++m) {
        const bool is_tabu = tabu.is_tabu(moves[m].candidate, iter);
        const bool admissible =
            (!is_tabu && z[m] < st.z_local_best) || z[m] < st.global_best.objective;
        if (!admissible) continue;
        if (best < 0 || z[m] < z[best]) {
            best = static_cast<int>(m);
            best_tabu = is_tabu;
        }
    }

    if (best >= 0) {
        const Move mv = moves[best];
        const Index displaced = st.current.centroids[mv.cluster];
        std::vector<Index> centroids = st.current.centroids;
        centroids[mv.cluster] = mv.candidate;
        Solution next = eng.assign_full(centroids);
        if (next.objective != z[best])
            throw EngineError("move score diverged from constructed objective");

        tabu.record_displaced(displaced, iter);
        st.current = std::move(next);
        st.z_local_best = st.current.objective;
        st.cache = eng.build_cache(st.current.centroids);
        st.v_prime_pending = true;

        entry.accepted = true;
        entry.move = mv;
        entry.displaced = displaced;
        entry.z_move = z[best];
        entry.incoming_was_tabu = best_tabu;
        entry.aspiration = best_tabu && z[best] < entry.z_global_before;

        if (st.current.objective < st.global_best.objective) {
            st.global_best = st.current;
            st.no_improve = 0;
            st.improved_this_phase = true;
        } else {
            ++st.no_improve;
        }
    } else {
        ++st.no_improve;
    }

    entry.z_local_after = st.z_local_best;
    entry.z_global_after = st.global_best.objective;
    entry.no_improve_after = st.no_improve;
    return entry;
}

/// Full search loop around ts_step: seeding, V' snapshots, phase switching
/// and the two stopping criteria (iteration budget, or an intensification
/// and a diversification phase back to back without improving S*).
template <class Engine>
RunResult drive(const Dataset& data, const SearchParams& params, Engine& eng) {
    check_params(params, data);
    Rng rng(params.seed);

    const std::vector<Index> seed_centroids =
        select_initial_centroids(data, params.n_clusters, rng, params.first_centroid);

    SearchState st;
    st.current = eng.assign_full(seed_centroids);
    st.z_local_best = st.current.objective;
    st.global_best = st.current;
    st.max_no_improve = params.max_no_improve;
    st.v_prime.assign(data.size(), std::numeric_limits<double>::infinity());
    st.cache = eng.build_cache(st.current.centroids);

    TabuList tabu(data.size(), params.tenure);
    RunResult result;

    while (st.iteration < params.max_iterations) {
        CandidateList cl = eng.build_candidates(st.current, params.radius_mode, st.v_prime);
        if (st.phase == Phase::kIntensification) {
            select_candidates(cl, rng);
        } else {
            for (auto& cc : cl.clusters) {
                cc.delta = 0;
                cc.selected = static_cast<int>(cc.neighborhood.size());
            }
        }

        // V' snapshot of the newly recorded local best. epsilon inside `cl`
        // was computed against the previous snapshot, as intended.
        if (st.v_prime_pending) {
            for (const auto& cc : cl.clusters)
                for (std::size_t t = 0; t < cc.neighborhood.size(); ++t)
                    st.v_prime[cc.neighborhood[t]] = cc.v[t];
            st.v_prime_pending = false;
        }

        TraceEntry entry = ts_step(st, cl, tabu, eng);
        if (params.record_trace) result.trace.push_back(entry);

        if (st.no_improve >= st.max_no_improve) {
            st.phase_failures = st.improved_this_phase ? 0 : st.phase_failures + 1;
            if (st.phase_failures >= 2) break;
            st.phase = st.phase == Phase::kIntensification ? Phase::kDiversification
                                                           : Phase::kIntensification;
            st.no_improve = 0;
            st.improved_this_phase = false;
        }
    }

    result.best = std::move(st.global_best);
    result.iterations = st.iteration;
    return result;
}

/// Sequential Tabu Search clustering.
inline RunResult run(const Dataset& data, const SearchParams& params) {
    SerialEngine eng(data);
    return drive(data, params, eng);
}

}  // namespace tsclust
