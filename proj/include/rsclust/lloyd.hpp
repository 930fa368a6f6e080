#ifndef RSCLUST_LLOYD_HPP
#define RSCLUST_LLOYD_HPP

#include <cstdint>
#include <optional>

#include "rsclust/rng.hpp"
#include "rsclust/types.hpp"

namespace rsclust {

struct LloydConfig {
    enum class Init { UniformRandomPoints, KmppSeeding, Provided };

    std::int64_t max_iters = 300;
    double tol = 1e-9;  // stop when the relative objective decrease drops below this
    Init init = Init::UniformRandomPoints;
    std::optional<CentroidSet> provided_centers;
};

// Lloyd's method: alternate nearest-center assignment and centroid update.
// A cluster that goes empty is repaired by reseeding its center at the point
// currently farthest from its own assigned center (one point per empty
// cluster, ties to the lowest point index). The objective never increases
// from one iteration to the next. iters_out, when given, receives the number
// of assignment rounds executed.
Clustering lloyd(const Dataset& X, std::int32_t k, const LloydConfig& cfg,
                 RngStream& rng, std::int64_t* iters_out = nullptr);

// k-means++ seeding: first center uniform, every further center drawn with
// probability proportional to the squared distance to the nearest center
// chosen so far.
CentroidSet kmpp_seed(const Dataset& X, std::int32_t k, RngStream& rng);

// kmpp_seed followed by lloyd with the seeded centers.
Clustering kmeans_plus_plus(const Dataset& X, std::int32_t k, const LloydConfig& cfg,
                            RngStream& rng);

}  // namespace rsclust

#endif  // RSCLUST_LLOYD_HPP
