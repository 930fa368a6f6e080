#ifndef RSCLUST_REFERENCE_HPP
#define RSCLUST_REFERENCE_HPP

#include <cstdint>
#include <utility>

#include "rsclust/candidates.hpp"
#include "rsclust/types.hpp"

namespace rsclust::reference {

// Serial reference implementations, written the obvious way (explicit
// coordinate differences, no expanded dot-product form, no OpenMP). The
// optimized kernels are tested and benchmarked against these.

Clustering voronoi_assign(const Dataset& X, const CentroidSet& C);

// Walks a candidate generator serially, scoring each candidate with the
// reference voronoi_assign. Returns (best index, best objective, evaluated).
struct SweepResult {
    std::uint64_t best_index = 0;
    double best_value = 0.0;
    std::uint64_t evaluated = 0;
};
SweepResult best_candidate(const Dataset& X, CandidateGenerator& gen);

}  // namespace rsclust::reference

#endif  // RSCLUST_REFERENCE_HPP
