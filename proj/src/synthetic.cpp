#include "rsclust/synthetic.hpp"

namespace rsclust {

Dataset gen_synthetic(const SyntheticSpec& spec, RngStream& rng) {
    if (spec.n < 1) throw InvalidParameterError("synthetic spec needs n >= 1");
    if (spec.d < 1) throw InvalidParameterError("synthetic spec needs d >= 1");
    std::vector<double> coords(spec.n * spec.d);
    for (double& v : coords) v = rng.normal();
    return Dataset(spec.n, spec.d, std::move(coords));
}

Dataset gen_blobs(const std::vector<Point>& centers, const std::vector<std::size_t>& sizes,
                  double stddev, RngStream& rng) {
    if (centers.empty() || centers.size() != sizes.size()) {
        throw InvalidParameterError("blob centers/sizes mismatch");
    }
    const std::size_t d = centers.front().size();
    std::vector<double> coords;
    for (std::size_t c = 0; c < centers.size(); ++c) {
        if (centers[c].size() != d) throw DimensionError("blob center dimension mismatch");
        for (std::size_t i = 0; i < sizes[c]; ++i) {
            for (std::size_t t = 0; t < d; ++t) {
                coords.push_back(centers[c][t] + stddev * rng.normal());
            }
        }
    }
    const std::size_t n = coords.size() / d;
    return Dataset(n, d, std::move(coords));
}

}  // namespace rsclust
