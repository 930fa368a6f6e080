#ifndef RSCLUST_GEOMETRY_HPP
#define RSCLUST_GEOMETRY_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rsclust/types.hpp"

namespace rsclust {

// Coordinate-wise mean of a nonempty collection.
Point centroid(const std::vector<Point>& points);

// Sum of squared Euclidean distances to v; 0 for an empty collection.
double sse(const std::vector<Point>& points, const Point& v);

// (1/n) * sse(X, centroid(X)); var(X) in the sampling estimates.
double total_variance(const Dataset& X);

// lhs = sse(X, v), rhs = sse(X, c(X)) + |X| * ||c(X) - v||^2. The two sides
// agree to 1e-9 relative for any v.
std::pair<double, double> centroid_lemma_gap(const std::vector<Point>& points,
                                             const Point& v);

// Nearest-center partition of X under squared Euclidean distance, ties to the
// lowest center index. Cells may be empty; centroids are recomputed over
// nonempty clusters and the objective is taken about the recomputed means.
Clustering voronoi_assign(const Dataset& X, const CentroidSet& C);

// Rebuild sizes, centroids and objective for a given assignment. This is the
// one deterministic reduction shared by every engine: accumulation runs in
// point order regardless of thread count. Empty clusters keep the matching
// row of seed_centers when given, otherwise zeros.
Clustering clustering_from_assignment(const Dataset& X,
                                      std::vector<std::int32_t> assignment,
                                      std::int32_t k,
                                      const CentroidSet* seed_centers = nullptr);

double squared_distance(std::span<const double> a, std::span<const double> b);

// |a - b| <= rtol * max(1, |a|, |b|)
bool rel_close(double a, double b, double rtol = 1e-9);

namespace detail {

// Nearest-center labels via the expanded form argmin_j ||c_j||^2 - 2 x.c_j.
// Parallel over points when OpenMP is enabled and the scan is large enough
// to pay for it; every point is independent, so the result does not depend
// on the thread count.
void assign_nearest(const double* xs, std::size_t n, std::size_t d,
                    const double* cs, std::size_t k, std::int32_t* labels);

inline double dot(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t t = 0; t < d; ++t) s += a[t] * b[t];
    return s;
}

}  // namespace detail

}  // namespace rsclust

#endif  // RSCLUST_GEOMETRY_HPP
