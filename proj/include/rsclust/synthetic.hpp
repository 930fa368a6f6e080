#ifndef RSCLUST_SYNTHETIC_HPP
#define RSCLUST_SYNTHETIC_HPP

#include "rsclust/rng.hpp"
#include "rsclust/types.hpp"

namespace rsclust {

// n i.i.d. points with standard normal coordinates.
struct SyntheticSpec {
    std::size_t n = 0;
    std::size_t d = 2;
};

Dataset gen_synthetic(const SyntheticSpec& spec, RngStream& rng);

// Equal-spread Gaussian blobs around the given centers; cluster i contributes
// sizes[i] points (in order), so the ground-truth membership is the index
// range. Used by the lemma drivers to construct mu-balanced instances.
Dataset gen_blobs(const std::vector<Point>& centers, const std::vector<std::size_t>& sizes,
                  double stddev, RngStream& rng);

}  // namespace rsclust

#endif  // RSCLUST_SYNTHETIC_HPP
