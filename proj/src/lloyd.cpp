#include "rsclust/lloyd.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "rsclust/geometry.hpp"

namespace rsclust {

namespace {

CentroidSet uniform_distinct_points(const Dataset& X, std::int32_t k, RngStream& rng) {
    const std::size_t n = X.size();
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    // partial Fisher-Yates; k distinct indices
    for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(n - i));
        std::swap(idx[i], idx[j]);
    }
    CentroidSet centers(static_cast<std::size_t>(k), X.dim());
    for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j) {
        centers.set_center(j, X.row(idx[j]));
    }
    return centers;
}

// Move each empty cluster's center onto the point farthest from its assigned
// center; each point is used at most once. Returns true if anything moved.
bool repair_empty_clusters(const Dataset& X, const Clustering& cl, CentroidSet& centers) {
    const std::size_t n = X.size();
    const std::size_t d = X.dim();
    bool repaired = false;
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = centers.center(static_cast<std::size_t>(cl.assignment[i]));
        dist[i] = squared_distance(X.row(i), c);
    }
    std::vector<char> used(n, 0);
    for (std::size_t j = 0; j < static_cast<std::size_t>(cl.k); ++j) {
        if (!cl.cluster_empty(j)) continue;
        std::size_t far = n;
        double far_dist = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!used[i] && dist[i] > far_dist) {
                far_dist = dist[i];
                far = i;
            }
        }
        if (far == n) break;
        used[far] = 1;
        centers.set_center(j, X.row(far));
        repaired = true;
        (void)d;
    }
    return repaired;
}

}  // namespace

Clustering lloyd(const Dataset& X, std::int32_t k, const LloydConfig& cfg,
                 RngStream& rng, std::int64_t* iters_out) {
    const std::size_t n = X.size();
    if (k < 1) throw InvalidParameterError("k must be >= 1");
    if (n < static_cast<std::size_t>(k)) {
        throw InvalidParameterError("need n >= k points for k clusters");
    }
    if (cfg.max_iters < 1) throw InvalidParameterError("max_iters must be >= 1");
    if (cfg.tol < 0.0) throw InvalidParameterError("tol must be >= 0");

    CentroidSet centers = [&] {
        switch (cfg.init) {
            case LloydConfig::Init::KmppSeeding:
                return kmpp_seed(X, k, rng);
            case LloydConfig::Init::Provided:
                if (!cfg.provided_centers.has_value()) {
                    throw InvalidParameterError("Provided init without centers");
                }
                if (cfg.provided_centers->k() != static_cast<std::size_t>(k) ||
                    cfg.provided_centers->dim() != X.dim()) {
                    throw DimensionError("provided centers shape mismatch");
                }
                return *cfg.provided_centers;
            case LloydConfig::Init::UniformRandomPoints:
            default:
                return uniform_distinct_points(X, k, rng);
        }
    }();

    Clustering cur;
    double prev_objective = -1.0;
    std::vector<std::int32_t> prev_assignment;
    std::int64_t it = 0;
    for (; it < cfg.max_iters; ++it) {
        cur = voronoi_assign(X, centers);
        assert(prev_objective < 0.0 || cur.objective <= prev_objective * (1.0 + 1e-12));

        const bool unchanged = cur.assignment == prev_assignment;
        centers = cur.centroids;
        const bool had_empty =
            std::any_of(cur.sizes.begin(), cur.sizes.end(), [](auto s) { return s == 0; });
        if (had_empty) {
            if (!repair_empty_clusters(X, cur, centers)) break;
            prev_objective = cur.objective;
            prev_assignment = cur.assignment;
            continue;  // give the reseeded center a chance to pick up points
        }
        if (unchanged) {
            ++it;
            break;
        }
        if (prev_objective >= 0.0 && prev_objective - cur.objective <= cfg.tol * prev_objective) {
            ++it;
            break;
        }
        prev_objective = cur.objective;
        prev_assignment = cur.assignment;
    }
    if (iters_out != nullptr) *iters_out = it;
    return cur;
}

CentroidSet kmpp_seed(const Dataset& X, std::int32_t k, RngStream& rng) {
    const std::size_t n = X.size();
    const std::size_t d = X.dim();
    if (k < 1) throw InvalidParameterError("k must be >= 1");
    if (n < static_cast<std::size_t>(k)) {
        throw InvalidParameterError("need n >= k points for k centers");
    }

    CentroidSet centers(static_cast<std::size_t>(k), d);
    const std::size_t first = static_cast<std::size_t>(rng.uniform_below(n));
    centers.set_center(0, X.row(first));

    std::vector<double> dist2(n);
    for (std::size_t i = 0; i < n; ++i) {
        dist2[i] = squared_distance(X.row(i), centers.center(0));
    }

    for (std::size_t j = 1; j < static_cast<std::size_t>(k); ++j) {
        double total = 0.0;
        for (double w : dist2) total += w;
        std::size_t chosen;
        if (total > 0.0) {
            // D^2 sampling; a zero-weight point can never satisfy cum > r
            const double r = rng.uniform01() * total;
            double cum = 0.0;
            chosen = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cum += dist2[i];
                if (cum > r) {
                    chosen = i;
                    break;
                }
            }
        } else {
            // every point coincides with some chosen center
            chosen = static_cast<std::size_t>(rng.uniform_below(n));
        }
        centers.set_center(j, X.row(chosen));
        for (std::size_t i = 0; i < n; ++i) {
            dist2[i] = std::min(dist2[i], squared_distance(X.row(i), centers.center(j)));
        }
    }
    return centers;
}

Clustering kmeans_plus_plus(const Dataset& X, std::int32_t k, const LloydConfig& cfg,
                            RngStream& rng) {
    LloydConfig run = cfg;
    run.init = LloydConfig::Init::Provided;
    run.provided_centers = kmpp_seed(X, k, rng);
    return lloyd(X, k, run, rng);
}

}  // namespace rsclust
