#include "rsclust/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rsclust {

Point centroid(const std::vector<Point>& points) {
    if (points.empty()) throw EmptyClusterError("centroid of an empty collection");
    const std::size_t d = points.front().size();
    Point mean(d, 0.0);
    for (const Point& p : points) {
        if (p.size() != d) throw DimensionError("mixed dimensions in point collection");
        for (std::size_t t = 0; t < d; ++t) mean[t] += p[t];
    }
    const double inv = 1.0 / static_cast<double>(points.size());
    for (double& v : mean) v *= inv;
    return mean;
}

double sse(const std::vector<Point>& points, const Point& v) {
    double total = 0.0;
    for (const Point& p : points) {
        if (p.size() != v.size()) throw DimensionError("point/center dimension mismatch");
        double acc = 0.0;
        for (std::size_t t = 0; t < v.size(); ++t) {
            const double diff = p[t] - v[t];
            acc += diff * diff;
        }
        total += acc;
    }
    return total;
}

double total_variance(const Dataset& X) {
    const std::size_t n = X.size();
    const std::size_t d = X.dim();
    std::vector<double> mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = X.row(i);
        for (std::size_t t = 0; t < d; ++t) mean[t] += r[t];
    }
    for (double& v : mean) v /= static_cast<double>(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = X.row(i);
        for (std::size_t t = 0; t < d; ++t) {
            const double diff = r[t] - mean[t];
            total += diff * diff;
        }
    }
    return total / static_cast<double>(n);
}

std::pair<double, double> centroid_lemma_gap(const std::vector<Point>& points,
                                             const Point& v) {
    if (points.empty()) throw EmptyClusterError("centroid lemma over an empty collection");
    const Point c = centroid(points);
    if (c.size() != v.size()) throw DimensionError("point/center dimension mismatch");
    const double lhs = sse(points, v);
    double shift = 0.0;
    for (std::size_t t = 0; t < v.size(); ++t) {
        const double diff = c[t] - v[t];
        shift += diff * diff;
    }
    const double rhs = sse(points, c) + static_cast<double>(points.size()) * shift;
    return {lhs, rhs};
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionError("squared_distance dimension mismatch");
    double acc = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        const double diff = a[t] - b[t];
        acc += diff * diff;
    }
    return acc;
}

bool rel_close(double a, double b, double rtol) {
    const double scale = std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
    return std::fabs(a - b) <= rtol * scale;
}

namespace detail {

void assign_nearest(const double* xs, std::size_t n, std::size_t d,
                    const double* cs, std::size_t k, std::int32_t* labels) {
    std::vector<double> cnorm(k);
    for (std::size_t j = 0; j < k; ++j) {
        cnorm[j] = dot(cs + j * d, cs + j * d, d);
    }
    const std::int64_t nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (n * k * d > 65536)
    for (std::int64_t i = 0; i < nn; ++i) {
        const double* x = xs + static_cast<std::size_t>(i) * d;
        std::int32_t best = 0;
        double best_score = cnorm[0] - 2.0 * dot(x, cs, d);
        for (std::size_t j = 1; j < k; ++j) {
            const double score = cnorm[j] - 2.0 * dot(x, cs + j * d, d);
            if (score < best_score) {
                best_score = score;
                best = static_cast<std::int32_t>(j);
            }
        }
        labels[i] = best;
    }
}

}  // namespace detail

Clustering clustering_from_assignment(const Dataset& X,
                                      std::vector<std::int32_t> assignment,
                                      std::int32_t k,
                                      const CentroidSet* seed_centers) {
    const std::size_t n = X.size();
    const std::size_t d = X.dim();
    if (k < 1) throw InvalidParameterError("cluster count must be >= 1");
    if (assignment.size() != n) throw InvalidParameterError("assignment size mismatch");
    if (seed_centers != nullptr &&
        (seed_centers->k() != static_cast<std::size_t>(k) || seed_centers->dim() != d)) {
        throw DimensionError("seed center shape mismatch");
    }

    Clustering cl;
    cl.k = k;
    cl.assignment = std::move(assignment);
    cl.sizes.assign(static_cast<std::size_t>(k), 0);
    CentroidSet centroids(static_cast<std::size_t>(k), d);

    // accumulate in point order; this keeps the result independent of any
    // upstream parallel scheduling
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t j = cl.assignment[i];
        if (j < 0 || j >= k) throw InvalidParameterError("assignment label out of range");
        cl.sizes[static_cast<std::size_t>(j)] += 1;
        double* row = centroids.data() + static_cast<std::size_t>(j) * d;
        const auto x = X.row(i);
        for (std::size_t t = 0; t < d; ++t) row[t] += x[t];
    }
    for (std::int32_t j = 0; j < k; ++j) {
        double* row = centroids.data() + static_cast<std::size_t>(j) * d;
        if (cl.sizes[static_cast<std::size_t>(j)] > 0) {
            const double inv = 1.0 / static_cast<double>(cl.sizes[static_cast<std::size_t>(j)]);
            for (std::size_t t = 0; t < d; ++t) row[t] *= inv;
        } else if (seed_centers != nullptr) {
            const auto seed = seed_centers->center(static_cast<std::size_t>(j));
            for (std::size_t t = 0; t < d; ++t) row[t] = seed[t];
        }
    }

    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t j = cl.assignment[i];
        const double* row = centroids.data() + static_cast<std::size_t>(j) * d;
        const auto x = X.row(i);
        double acc = 0.0;
        for (std::size_t t = 0; t < d; ++t) {
            const double diff = x[t] - row[t];
            acc += diff * diff;
        }
        objective += acc;
    }
    cl.centroids = std::move(centroids);
    cl.objective = objective;
    return cl;
}

Clustering voronoi_assign(const Dataset& X, const CentroidSet& C) {
    if (X.dim() != C.dim()) throw DimensionError("dataset/center dimension mismatch");
    std::vector<std::int32_t> labels(X.size());
    detail::assign_nearest(X.data(), X.size(), X.dim(), C.data(), C.k(), labels.data());
    return clustering_from_assignment(X, std::move(labels),
                                      static_cast<std::int32_t>(C.k()), &C);
}

}  // namespace rsclust
