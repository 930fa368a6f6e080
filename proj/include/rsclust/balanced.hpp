#ifndef RSCLUST_BALANCED_HPP
#define RSCLUST_BALANCED_HPP

#include "rsclust/mcf.hpp"
#include "rsclust/rs.hpp"
#include "rsclust/types.hpp"

namespace rsclust {

struct BalancedRsConfig {
    RsConfig base;
    BalanceBounds bounds;
};

// true iff every cluster size lies in [lower, upper]
bool verify_balanced(const Clustering& clustering, BalanceBounds b);

// Random Sampling for balanced k-clustering: identical to run_rs except that
// each candidate's partition of X comes from the minimum-cost-flow assignment
// to the candidate centroids instead of the Voronoi rule, so every cluster
// size lands in [l, u]. The value is still taken about the recomputed means.
RsResult run_balanced_rs(const Dataset& X, const BalancedRsConfig& cfg);
RsResult run_balanced_rs_with_sample(const Dataset& X, SampleSet sample,
                                     const BalancedRsConfig& cfg);

}  // namespace rsclust

#endif  // RSCLUST_BALANCED_HPP
