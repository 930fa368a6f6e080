#include "rsclust/candidates.hpp"

#include <algorithm>
#include <string>

#include "rsclust/geometry.hpp"
#include "rsclust/lloyd.hpp"
#include "rsclust/partitions.hpp"

namespace rsclust {

namespace {

// Block centroids for a label vector over the sample; returns false if any of
// the k blocks is empty.
bool block_centroids(const Dataset& points, const std::vector<std::int32_t>& labels,
                     std::int32_t k, CentroidSet& centers,
                     std::vector<std::int64_t>& counts) {
    const std::size_t m = points.size();
    const std::size_t d = points.dim();
    counts.assign(static_cast<std::size_t>(k), 0);
    std::fill(centers.data(), centers.data() + static_cast<std::size_t>(k) * d, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const auto j = static_cast<std::size_t>(labels[i]);
        counts[j] += 1;
        double* row = centers.data() + j * d;
        const auto x = points.row(i);
        for (std::size_t t = 0; t < d; ++t) row[t] += x[t];
    }
    for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j) {
        if (counts[j] == 0) return false;
        const double inv = 1.0 / static_cast<double>(counts[j]);
        double* row = centers.data() + j * d;
        for (std::size_t t = 0; t < d; ++t) row[t] *= inv;
    }
    return true;
}

class PartitionCandidates final : public CandidateGenerator {
public:
    PartitionCandidates(const SampleSet& sample, std::int32_t k, std::uint64_t cap)
        : points_(sample.points),
          k_(k),
          count_(stirling2_capped(sample.size(), static_cast<std::size_t>(k), cap)),
          rgs_(sample.size(), static_cast<std::size_t>(k)) {
        if (count_ > cap) {
            throw CapacityError("exhaustive partition enumeration over cap: S(" +
                                    std::to_string(sample.size()) + "," +
                                    std::to_string(k) + ") > " + std::to_string(cap),
                                count_);
        }
    }

    void reset() override { rgs_.reset(); }

    bool next(Candidate& out) override {
        if (!rgs_.next(out.labels)) return false;
        if (out.centers.k() != static_cast<std::size_t>(k_) ||
            out.centers.dim() != points_.dim()) {
            out.centers = CentroidSet(static_cast<std::size_t>(k_), points_.dim());
        }
        block_centroids(points_, out.labels, k_, out.centers, counts_);
        return true;
    }

    std::optional<std::uint64_t> max_candidates() const override { return count_; }

private:
    const Dataset points_;
    std::int32_t k_;
    std::uint64_t count_;
    RgsEnumerator rgs_;
    std::vector<std::int64_t> counts_;
};

class CenterSubsetCandidates final : public CandidateGenerator {
public:
    CenterSubsetCandidates(const SampleSet& sample, std::int32_t k)
        : points_(sample.points), k_(k) {
        const std::size_t m = points_.size();
        const std::size_t d = points_.dim();
        for (std::size_t i = 0; i < m; ++i) {
            bool seen = false;
            for (std::size_t j : distinct_) {
                if (std::equal(points_.row(i).begin(), points_.row(i).end(),
                               points_.row(j).begin())) {
                    seen = true;
                    break;
                }
            }
            if (!seen) distinct_.push_back(i);
        }
        if (distinct_.size() < static_cast<std::size_t>(k)) {
            throw DegenerateSampleError(
                "sample has " + std::to_string(distinct_.size()) +
                " distinct points, need at least k = " + std::to_string(k));
        }
        (void)d;
        reset();
    }

    void reset() override {
        comb_.resize(static_cast<std::size_t>(k_));
        for (std::size_t j = 0; j < comb_.size(); ++j) comb_[j] = j;
        exhausted_ = false;
    }

    bool next(Candidate& out) override {
        const std::size_t m = points_.size();
        const std::size_t d = points_.dim();
        const std::size_t k = static_cast<std::size_t>(k_);
        if (sites_.k() != k || sites_.dim() != d) sites_ = CentroidSet(k, d);
        while (!exhausted_) {
            for (std::size_t j = 0; j < k; ++j) {
                sites_.set_center(j, points_.row(distinct_[comb_[j]]));
            }
            advance();
            out.labels.resize(m);
            detail::assign_nearest(points_.data(), m, d, sites_.data(), k,
                                   out.labels.data());
            if (out.centers.k() != k || out.centers.dim() != d) {
                out.centers = CentroidSet(k, d);
            }
            if (block_centroids(points_, out.labels, k_, out.centers, counts_)) {
                return true;  // all k cells nonempty
            }
        }
        return false;
    }

    std::optional<std::uint64_t> max_candidates() const override {
        return binomial_capped(distinct_.size(), static_cast<std::uint64_t>(k_),
                               UINT64_MAX);
    }

private:
    void advance() {
        // next k-combination of {0..distinct-1} in lexicographic order
        const std::size_t k = comb_.size();
        const std::size_t nd = distinct_.size();
        std::size_t j = k;
        while (j-- > 0) {
            if (comb_[j] != j + nd - k) {
                ++comb_[j];
                for (std::size_t t = j + 1; t < k; ++t) comb_[t] = comb_[t - 1] + 1;
                return;
            }
        }
        exhausted_ = true;
    }

    const Dataset points_;
    std::int32_t k_;
    std::vector<std::size_t> distinct_;
    std::vector<std::size_t> comb_;
    bool exhausted_ = false;
    CentroidSet sites_;
    std::vector<std::int64_t> counts_;
};

class RestartCandidates final : public CandidateGenerator {
public:
    RestartCandidates(const SampleSet& sample, std::int32_t k, std::size_t restarts,
                      RngStream rng)
        : points_(sample.points), k_(k), restarts_(restarts), root_(rng) {
        if (restarts_ < 1) throw InvalidParameterError("restart count must be >= 1");
        if (points_.size() < static_cast<std::size_t>(k)) {
            throw InvalidParameterError("sample smaller than k");
        }
    }

    void reset() override { r_ = 0; }

    bool next(Candidate& out) override {
        while (r_ < restarts_) {
            // candidate r is a pure function of (root seed, r)
            RngStream stream = root_.derive(r_);
            ++r_;
            Clustering cl = kmeans_plus_plus(points_, k_, LloydConfig{}, stream);
            const bool full = std::none_of(cl.sizes.begin(), cl.sizes.end(),
                                           [](auto s) { return s == 0; });
            if (!full) continue;  // degenerate sample, skip
            out.labels = std::move(cl.assignment);
            out.centers = std::move(cl.centroids);
            return true;
        }
        return false;
    }

    std::optional<std::uint64_t> max_candidates() const override { return restarts_; }

private:
    const Dataset points_;
    std::int32_t k_;
    std::size_t restarts_;
    RngStream root_;
    std::size_t r_ = 0;
};

}  // namespace

std::unique_ptr<CandidateGenerator> make_candidate_generator(
    const SampleSet& sample, std::int32_t k, const CandidateStrategy& strategy,
    RngStream rng) {
    if (k < 1) throw InvalidParameterError("k must be >= 1");
    if (sample.size() < static_cast<std::size_t>(k)) {
        throw InvalidParameterError("sample size m must be >= k");
    }
    switch (strategy.mode) {
        case CandidateStrategy::Mode::ExhaustivePartitions:
            return std::make_unique<PartitionCandidates>(sample, k, strategy.partition_cap);
        case CandidateStrategy::Mode::ExhaustiveCenterSubsets:
            return std::make_unique<CenterSubsetCandidates>(sample, k);
        case CandidateStrategy::Mode::RandomRestarts:
        default:
            return std::make_unique<RestartCandidates>(sample, k, strategy.restarts, rng);
    }
}

std::size_t count_distinct_rows(const Dataset& points) {
    std::vector<std::size_t> distinct;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool seen = false;
        for (std::size_t j : distinct) {
            if (std::equal(points.row(i).begin(), points.row(i).end(),
                           points.row(j).begin())) {
                seen = true;
                break;
            }
        }
        if (!seen) distinct.push_back(i);
    }
    return distinct.size();
}

CandidateStrategy auto_candidate_strategy(const SampleSet& sample, std::int32_t k,
                                          std::uint64_t subset_cap,
                                          std::size_t restarts) {
    CandidateStrategy strategy;
    const std::size_t distinct = count_distinct_rows(sample.points);
    if (distinct >= static_cast<std::size_t>(k) &&
        binomial_capped(distinct, static_cast<std::uint64_t>(k), subset_cap) <=
            subset_cap) {
        strategy.mode = CandidateStrategy::Mode::ExhaustiveCenterSubsets;
    } else {
        strategy.mode = CandidateStrategy::Mode::RandomRestarts;
        strategy.restarts = restarts;
    }
    return strategy;
}

}  // namespace rsclust
