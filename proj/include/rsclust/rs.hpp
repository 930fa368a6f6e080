#ifndef RSCLUST_RS_HPP
#define RSCLUST_RS_HPP

#include <cstdint>

#include "rsclust/candidates.hpp"
#include "rsclust/sampling.hpp"
#include "rsclust/types.hpp"

namespace rsclust {

struct RsConfig {
    std::int32_t k = 1;
    std::size_t m = 0;  // sample size, must be >= k
    CandidateStrategy strategy;
    std::uint64_t seed = 0;
    std::size_t sample_cap = 10'000'000;
};

struct RsResult {
    Clustering clustering;
    std::uint64_t best_candidate_index;
    std::uint64_t candidates_evaluated;
    SampleSet sample;
    // the candidate centroid set c(S_i) that induced the winning partition
    CentroidSet best_candidate_centers;
};

// Random Sampling for k-clustering: draw a sample S of m uniform draws,
// walk the candidate k-clusterings of S, Voronoi-partition X around each
// candidate's block centroids, score the partition about its own recomputed
// means, and keep the minimum. Candidate evaluations run in parallel; the
// value of every candidate and the argmin reduction (ties within 1e-9
// relative go to the earliest candidate index) are independent of the thread
// count, so results are a pure function of (X, cfg).
RsResult run_rs(const Dataset& X, const RsConfig& cfg);

// The candidate loop on a caller-supplied sample (the S = X oracle hook).
RsResult run_rs_with_sample(const Dataset& X, SampleSet sample, const RsConfig& cfg);

// Voronoi-partition X around one candidate's block centroids and score the
// result about recomputed means.
Clustering evaluate_candidate(const Dataset& X, const Candidate& candidate);

namespace detail {

// Deterministic tolerant argmin over a candidate stream. Values are offered
// in candidate order; the winner is the earliest index whose value lies
// within 1e-9 relative of the exact running minimum.
class ArgminTracker {
public:
    void offer(std::uint64_t index, double value, const Candidate& candidate);
    bool empty() const { return near_.empty(); }
    double best_value() const { return best_value_; }
    // earliest index still within tolerance of the final minimum
    const Candidate& winner(std::uint64_t& index_out, double& value_out) const;

private:
    struct Entry {
        std::uint64_t index;
        double value;
        Candidate candidate;
    };
    void prune();

    double best_value_ = 0.0;
    bool has_value_ = false;
    std::vector<Entry> near_;
};

}  // namespace detail

}  // namespace rsclust

#endif  // RSCLUST_RS_HPP
