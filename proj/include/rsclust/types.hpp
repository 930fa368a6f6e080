#ifndef RSCLUST_TYPES_HPP
#define RSCLUST_TYPES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "rsclust/errors.hpp"

namespace rsclust {

// A single d-dimensional data point.
using Point = std::vector<double>;

// Immutable row-major n x d point matrix. n >= 1, d >= 1, every coordinate
// finite; the constructor enforces all three.
class Dataset {
public:
    Dataset(std::size_t n, std::size_t d, std::vector<double> coords);
    static Dataset from_rows(const std::vector<Point>& rows);

    std::size_t size() const { return n_; }
    std::size_t dim() const { return d_; }
    std::span<const double> row(std::size_t i) const {
        return {coords_.data() + i * d_, d_};
    }
    const double* data() const { return coords_.data(); }
    const std::vector<double>& coords() const { return coords_; }

private:
    std::size_t n_ = 0;
    std::size_t d_ = 0;
    std::vector<double> coords_;
};

// Ordered list of k centers (k x d, row-major). The order is significant:
// the row index is the cluster id and breaks distance ties.
class CentroidSet {
public:
    CentroidSet() = default;
    CentroidSet(std::size_t k, std::size_t d);  // zero-initialized rows
    static CentroidSet from_rows(const std::vector<Point>& rows);

    std::size_t k() const { return k_; }
    std::size_t dim() const { return d_; }
    std::span<const double> center(std::size_t j) const {
        return {coords_.data() + j * d_, d_};
    }
    void set_center(std::size_t j, std::span<const double> values);
    const double* data() const { return coords_.data(); }
    double* data() { return coords_.data(); }
    const std::vector<double>& coords() const { return coords_; }

private:
    std::size_t k_ = 0;
    std::size_t d_ = 0;
    std::vector<double> coords_;
};

// Cluster size constraints: every cluster size must land in [lower, upper].
struct BalanceBounds {
    std::int64_t lower = 0;
    std::int64_t upper = 0;
};

// A partition of the dataset into k clusters. Empty clusters are allowed and
// flagged by sizes[j] == 0; their centroid row keeps the center that induced
// the partition. The objective is the sum over nonempty clusters of the
// within-cluster SSE about that cluster's own mean.
struct Clustering {
    std::vector<std::int32_t> assignment;
    std::int32_t k = 0;
    CentroidSet centroids;
    std::vector<std::int64_t> sizes;
    double objective = 0.0;

    bool cluster_empty(std::size_t j) const { return sizes[j] == 0; }
};

}  // namespace rsclust

#endif  // RSCLUST_TYPES_HPP
