#include "rsclust/types.hpp"

#include <cmath>
#include <string>

namespace rsclust {

namespace {

void check_finite(const std::vector<double>& coords) {
    for (double v : coords) {
        if (!std::isfinite(v)) {
            throw InvalidParameterError("non-finite coordinate in point data");
        }
    }
}

std::vector<double> flatten(const std::vector<Point>& rows, std::size_t& d_out) {
    if (rows.empty()) throw InvalidParameterError("empty point collection");
    d_out = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * d_out);
    for (const Point& p : rows) {
        if (p.size() != d_out) {
            throw DimensionError("ragged point collection: expected dimension " +
                                 std::to_string(d_out) + ", got " +
                                 std::to_string(p.size()));
        }
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return flat;
}

}  // namespace

Dataset::Dataset(std::size_t n, std::size_t d, std::vector<double> coords)
    : n_(n), d_(d), coords_(std::move(coords)) {
    if (n_ < 1) throw InvalidParameterError("dataset needs at least one point");
    if (d_ < 1) throw InvalidParameterError("dataset dimension must be >= 1");
    if (coords_.size() != n_ * d_) {
        throw DimensionError("coordinate buffer size " + std::to_string(coords_.size()) +
                             " does not match n*d = " + std::to_string(n_ * d_));
    }
    check_finite(coords_);
}

Dataset Dataset::from_rows(const std::vector<Point>& rows) {
    std::size_t d = 0;
    std::vector<double> flat = flatten(rows, d);
    return Dataset(rows.size(), d, std::move(flat));
}

CentroidSet::CentroidSet(std::size_t k, std::size_t d)
    : k_(k), d_(d), coords_(k * d, 0.0) {
    if (k_ < 1) throw InvalidParameterError("centroid set needs at least one center");
    if (d_ < 1) throw InvalidParameterError("centroid dimension must be >= 1");
}

CentroidSet CentroidSet::from_rows(const std::vector<Point>& rows) {
    std::size_t d = 0;
    std::vector<double> flat = flatten(rows, d);
    check_finite(flat);
    CentroidSet c(rows.size(), d);
    c.coords_ = std::move(flat);
    return c;
}

void CentroidSet::set_center(std::size_t j, std::span<const double> values) {
    if (values.size() != d_) throw DimensionError("center dimension mismatch");
    for (std::size_t t = 0; t < d_; ++t) coords_[j * d_ + t] = values[t];
}

}  // namespace rsclust
