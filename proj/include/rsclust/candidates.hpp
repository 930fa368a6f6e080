#ifndef RSCLUST_CANDIDATES_HPP
#define RSCLUST_CANDIDATES_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "rsclust/rng.hpp"
#include "rsclust/sampling.hpp"
#include "rsclust/types.hpp"

namespace rsclust {

// How to walk the k-clusterings of the sample. The literal loop over every
// partition of S is only feasible for tiny samples, so three tiers exist:
//
//   ExhaustivePartitions   every partition of the m sample members into k
//                          nonempty blocks (restricted growth strings);
//                          guarded by partition_cap, used for oracle tests.
//   ExhaustiveCenterSubsets  every k-subset of the distinct sample points,
//                          each inducing the Voronoi partition of S around
//                          those points; degenerate subsets (fewer than k
//                          nonempty cells) are skipped.
//   RandomRestarts         R seeded k-means++ runs on the sample; candidate
//                          r depends only on (seed, r).
struct CandidateStrategy {
    enum class Mode { ExhaustivePartitions, ExhaustiveCenterSubsets, RandomRestarts };

    Mode mode = Mode::ExhaustiveCenterSubsets;
    std::size_t restarts = 200;
    std::uint64_t partition_cap = 10'000'000;
};

// One k-clustering of the sample: a block label per sample member plus the
// block centroids c(S_i). Every emitted candidate has exactly k nonempty
// blocks, so centers always holds k rows.
struct Candidate {
    std::vector<std::int32_t> labels;
    CentroidSet centers;
};

class CandidateGenerator {
public:
    virtual ~CandidateGenerator() = default;
    virtual void reset() = 0;
    // Fills out with the next candidate; false once exhausted.
    virtual bool next(Candidate& out) = 0;
    // Upper bound on the number of candidates, when cheap to know.
    virtual std::optional<std::uint64_t> max_candidates() const { return std::nullopt; }
};

std::unique_ptr<CandidateGenerator> make_candidate_generator(
    const SampleSet& sample, std::int32_t k, const CandidateStrategy& strategy,
    RngStream rng);

// Number of distinct rows (exact coordinate equality), first-occurrence order.
std::size_t count_distinct_rows(const Dataset& points);

// The benchmark default: exhaustive center subsets while C(distinct, k) stays
// under subset_cap, seeded restarts beyond that.
CandidateStrategy auto_candidate_strategy(const SampleSet& sample, std::int32_t k,
                                          std::uint64_t subset_cap,
                                          std::size_t restarts);

}  // namespace rsclust

#endif  // RSCLUST_CANDIDATES_HPP
