#include "rsclust/reference.hpp"

#include <limits>

namespace rsclust::reference {

Clustering voronoi_assign(const Dataset& X, const CentroidSet& C) {
    if (X.dim() != C.dim()) throw DimensionError("dataset/center dimension mismatch");
    const std::size_t n = X.size();
    const std::size_t d = X.dim();
    const std::size_t k = C.k();

    Clustering cl;
    cl.k = static_cast<std::int32_t>(k);
    cl.assignment.resize(n);
    cl.sizes.assign(k, 0);

    for (std::size_t i = 0; i < n; ++i) {
        const auto x = X.row(i);
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < k; ++j) {
            const auto c = C.center(j);
            double dist = 0.0;
            for (std::size_t t = 0; t < d; ++t) {
                const double diff = x[t] - c[t];
                dist += diff * diff;
            }
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        cl.assignment[i] = static_cast<std::int32_t>(best);
        cl.sizes[best] += 1;
    }

    CentroidSet means(k, d);
    for (std::size_t i = 0; i < n; ++i) {
        double* row = means.data() + static_cast<std::size_t>(cl.assignment[i]) * d;
        const auto x = X.row(i);
        for (std::size_t t = 0; t < d; ++t) row[t] += x[t];
    }
    for (std::size_t j = 0; j < k; ++j) {
        double* row = means.data() + j * d;
        if (cl.sizes[j] > 0) {
            for (std::size_t t = 0; t < d; ++t) row[t] /= static_cast<double>(cl.sizes[j]);
        } else {
            const auto seed = C.center(j);
            for (std::size_t t = 0; t < d; ++t) row[t] = seed[t];
        }
    }

    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = means.data() + static_cast<std::size_t>(cl.assignment[i]) * d;
        const auto x = X.row(i);
        for (std::size_t t = 0; t < d; ++t) {
            const double diff = x[t] - row[t];
            objective += diff * diff;
        }
    }
    cl.centroids = means;
    cl.objective = objective;
    return cl;
}

SweepResult best_candidate(const Dataset& X, CandidateGenerator& gen) {
    SweepResult res;
    Candidate cand;
    bool any = false;
    std::uint64_t index = 0;
    while (gen.next(cand)) {
        const Clustering cl = voronoi_assign(X, cand.centers);
        if (!any || cl.objective < res.best_value) {
            res.best_value = cl.objective;
            res.best_index = index;
            any = true;
        }
        ++index;
    }
    res.evaluated = index;
    if (!any) throw DegenerateSampleError("no candidates emitted");
    return res;
}

}  // namespace rsclust::reference
