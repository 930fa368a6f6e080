#include "rsclust/sampling.hpp"

#include <numeric>

namespace rsclust {

SampleSet sample_with_replacement(const Dataset& X, std::size_t m, RngStream& rng) {
    if (m == 0) throw InvalidParameterError("sample size m must be >= 1");
    const std::size_t n = X.size();
    const std::size_t d = X.dim();
    std::vector<std::uint32_t> indices(m);
    std::vector<double> coords(m * d);
    for (std::size_t i = 0; i < m; ++i) {
        const auto idx = static_cast<std::uint32_t>(rng.uniform_below(n));
        indices[i] = idx;
        const auto row = X.row(idx);
        for (std::size_t t = 0; t < d; ++t) coords[i * d + t] = row[t];
    }
    return SampleSet{std::move(indices), Dataset(m, d, std::move(coords))};
}

SampleSet identity_sample(const Dataset& X) {
    std::vector<std::uint32_t> indices(X.size());
    std::iota(indices.begin(), indices.end(), 0u);
    return SampleSet{std::move(indices), X};
}

}  // namespace rsclust
