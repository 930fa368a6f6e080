#ifndef RSCLUST_SAMPLING_HPP
#define RSCLUST_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "rsclust/rng.hpp"
#include "rsclust/types.hpp"

namespace rsclust {

// m independent uniform draws from a dataset. Duplicates are kept as distinct
// sample members; they reweight the sample mean, which is exactly what the
// unbiasedness of c(S) relies on.
struct SampleSet {
    std::vector<std::uint32_t> indices;  // m entries into the source dataset
    Dataset points;                      // the drawn rows, in draw order

    std::size_t size() const { return indices.size(); }
};

SampleSet sample_with_replacement(const Dataset& X, std::size_t m, RngStream& rng);

// S = X verbatim (index i draws point i). Test hook for oracle comparisons.
SampleSet identity_sample(const Dataset& X);

}  // namespace rsclust

#endif  // RSCLUST_SAMPLING_HPP
