#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "rsclust/balanced.hpp"
#include "rsclust/geometry.hpp"
#include "rsclust/rs.hpp"
#include "rsclust/synthetic.hpp"

using namespace rsclust;

namespace {

BalancedRsConfig balanced_cfg(std::int32_t k, std::size_t m, std::int64_t l,
                              std::int64_t u, std::uint64_t seed = 0) {
    BalancedRsConfig cfg;
    cfg.base.k = k;
    cfg.base.m = m;
    cfg.base.strategy.mode = CandidateStrategy::Mode::ExhaustivePartitions;
    cfg.base.seed = seed;
    cfg.bounds = {l, u};
    return cfg;
}

// brute-force balanced k-means oracle: every labeling obeying the bounds,
// objective about each group's own mean
double brute_force_balanced(const Dataset& X, std::size_t k, BalanceBounds b) {
    const std::size_t n = X.size();
    const std::size_t d = X.dim();
    std::vector<std::size_t> label(n, 0);
    double best = std::numeric_limits<double>::infinity();
    for (;;) {
        std::vector<std::int64_t> sizes(k, 0);
        for (std::size_t i = 0; i < n; ++i) sizes[label[i]] += 1;
        bool ok = true;
        for (std::size_t j = 0; j < k; ++j) {
            ok = ok && sizes[j] >= b.lower && sizes[j] <= b.upper;
        }
        if (ok) {
            std::vector<double> sums(k * d, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t t = 0; t < d; ++t) sums[label[i] * d + t] += X.row(i)[t];
            }
            double sse = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t t = 0; t < d; ++t) {
                    const double mean =
                        sums[label[i] * d + t] / static_cast<double>(sizes[label[i]]);
                    const double diff = X.row(i)[t] - mean;
                    sse += diff * diff;
                }
            }
            best = std::min(best, sse);
        }
        std::size_t pos = 0;
        while (pos < n && ++label[pos] == k) label[pos++] = 0;
        if (pos == n) break;
    }
    return best;
}

}  // namespace

TEST_CASE("verify_balanced") {
    Clustering cl;
    cl.k = 2;
    cl.sizes = {2, 2};
    CHECK(verify_balanced(cl, {2, 2}));
    cl.sizes = {1, 3};
    CHECK_FALSE(verify_balanced(cl, {2, 2}));
    cl.sizes = {0, 4};
    CHECK(verify_balanced(cl, {0, 4}));
}

TEST_CASE("balanced rs on the separated pairs") {
    const Dataset X = Dataset::from_rows({{0.0}, {1.0}, {9.0}, {10.0}});
    const RsResult res =
        run_balanced_rs_with_sample(X, identity_sample(X), balanced_cfg(2, 4, 2, 2));
    CHECK(res.clustering.objective == doctest::Approx(1.0));
    CHECK(res.clustering.assignment == std::vector<std::int32_t>{0, 0, 1, 1});
    CHECK(verify_balanced(res.clustering, {2, 2}));
}

TEST_CASE("balanced rs pays for the forced split") {
    // balanced 2-partitions of {0,1,2,10} with l=u=2:
    //   {0,1 | 2,10} = 0.5 + 32 = 32.5   <- optimal
    //   {0,2 | 1,10} = 2 + 40.5 = 42.5
    //   {0,10 | 1,2} = 50 + 0.5 = 50.5
    const Dataset X = Dataset::from_rows({{0.0}, {1.0}, {2.0}, {10.0}});
    const RsResult res =
        run_balanced_rs_with_sample(X, identity_sample(X), balanced_cfg(2, 4, 2, 2));
    CHECK(res.clustering.objective == doctest::Approx(32.5));
    CHECK(res.clustering.assignment == std::vector<std::int32_t>{0, 0, 1, 1});
    CHECK(brute_force_balanced(X, 2, {2, 2}) == doctest::Approx(32.5));
}

TEST_CASE("unconstrained bounds reduce to plain rs") {
    RngStream base(7);
    for (int rep = 0; rep < 10; ++rep) {
        RngStream data = base.derive(static_cast<std::uint64_t>(rep));
        const std::size_t n = 8 + data.uniform_below(12);
        const Dataset X = gen_synthetic({n, 2}, data);

        BalancedRsConfig cfg = balanced_cfg(2, 6, 0, static_cast<std::int64_t>(n),
                                            static_cast<std::uint64_t>(rep));
        cfg.base.strategy.mode = CandidateStrategy::Mode::ExhaustiveCenterSubsets;
        const RsResult balanced = run_balanced_rs(X, cfg);

        RsConfig plain = cfg.base;
        const RsResult unconstrained = run_rs(X, plain);
        CHECK(rel_close(balanced.clustering.objective,
                        unconstrained.clustering.objective));
    }
}

TEST_CASE("balanced output always satisfies the bounds") {
    RngStream base(13);
    for (int rep = 0; rep < 60; ++rep) {
        RngStream data = base.derive(static_cast<std::uint64_t>(rep));
        const std::size_t n = 6 + data.uniform_below(15);
        const std::size_t k = 2 + data.uniform_below(3);
        const Dataset X = gen_synthetic({n, 2}, data);
        const auto nn = static_cast<std::int64_t>(n);
        const auto kk = static_cast<std::int64_t>(k);
        const std::int64_t l = static_cast<std::int64_t>(data.uniform_below(
            static_cast<std::uint64_t>(nn / kk) + 1));
        const std::int64_t lo_u = std::max<std::int64_t>(1, (nn + kk - 1) / kk);
        const std::int64_t u =
            lo_u + static_cast<std::int64_t>(data.uniform_below(
                       static_cast<std::uint64_t>(nn - lo_u) + 1));

        BalancedRsConfig cfg =
            balanced_cfg(static_cast<std::int32_t>(k), std::max<std::size_t>(k, 6), l, u,
                         static_cast<std::uint64_t>(rep));
        cfg.base.strategy.mode = CandidateStrategy::Mode::RandomRestarts;
        cfg.base.strategy.restarts = 5;
        // tiny datasets can hand the sampler fewer distinct points than k;
        // that raises DegenerateSampleError by contract, so redraw
        for (std::uint64_t attempt = 0; attempt < 10; ++attempt) {
            cfg.base.seed = static_cast<std::uint64_t>(rep) + (attempt << 32);
            try {
                const RsResult res = run_balanced_rs(X, cfg);
                CHECK(verify_balanced(res.clustering, cfg.bounds));
                break;
            } catch (const DegenerateSampleError&) {
                CHECK(attempt < 9);
            }
        }
    }
}

TEST_CASE("balanced rs never beats the balanced optimum with S=X") {
    RngStream base(21);
    for (int rep = 0; rep < 8; ++rep) {
        RngStream data = base.derive(static_cast<std::uint64_t>(rep));
        const std::size_t n = 6 + data.uniform_below(3);  // 6..8
        const Dataset X = gen_synthetic({n, 2}, data);
        const std::int64_t l = 2;
        const auto u = static_cast<std::int64_t>(n - 2);
        const double oracle = brute_force_balanced(X, 2, {l, u});
        const RsResult res = run_balanced_rs_with_sample(
            X, identity_sample(X), balanced_cfg(2, n, l, u, 0));
        CHECK(res.clustering.objective >= oracle * (1.0 - 1e-9));
        CHECK(verify_balanced(res.clustering, {l, u}));
    }
}

TEST_CASE("infeasible bounds surface immediately") {
    RngStream rng(1);
    const Dataset X = gen_synthetic({5, 2}, rng);
    CHECK_THROWS_AS(
        run_balanced_rs_with_sample(X, identity_sample(X), balanced_cfg(2, 5, 3, 3)),
        InfeasibleBoundsError);
}
