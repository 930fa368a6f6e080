#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rsclust/candidates.hpp"
#include "rsclust/geometry.hpp"
#include "rsclust/partitions.hpp"

using namespace rsclust;

namespace {

SampleSet sample_of(const std::vector<Point>& rows) {
    return identity_sample(Dataset::from_rows(rows));
}

std::vector<Candidate> drain(CandidateGenerator& gen) {
    std::vector<Candidate> all;
    Candidate c;
    while (gen.next(c)) all.push_back(c);
    return all;
}

// SSE of a sample clustering about its own block centroids
double candidate_sse(const Dataset& points, const Candidate& cand) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        total += squared_distance(
            points.row(i), cand.centers.center(static_cast<std::size_t>(cand.labels[i])));
    }
    return total;
}

bool is_partition_into_k(const Candidate& cand, std::int32_t k) {
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
    for (auto l : cand.labels) {
        if (l < 0 || l >= k) return false;
        sizes[static_cast<std::size_t>(l)] += 1;
    }
    for (auto s : sizes) {
        if (s == 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("exhaustive partition candidates") {
    const SampleSet S = sample_of({{0.0}, {1.0}, {9.0}});
    CandidateStrategy strategy;
    strategy.mode = CandidateStrategy::Mode::ExhaustivePartitions;
    auto gen = make_candidate_generator(S, 2, strategy, RngStream(0));
    const auto all = drain(*gen);
    CHECK(all.size() == 3);  // S(3,2)
    for (const auto& cand : all) CHECK(is_partition_into_k(cand, 2));

    // cap exceeded names the estimated count
    std::vector<Point> rows(20, Point(1));
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i][0] = static_cast<double>(i);
    const SampleSet big = sample_of(rows);
    CandidateStrategy capped = strategy;
    capped.partition_cap = 1000;
    try {
        make_candidate_generator(big, 3, capped, RngStream(0));
        FAIL("expected CapacityError");
    } catch (const CapacityError& e) {
        CHECK(e.estimated_count > 1000);
    }
}

TEST_CASE("center subset candidates") {
    SUBCASE("count bound and best candidate on the 1-d example") {
        const SampleSet S = sample_of({{0.0}, {1.0}, {9.0}, {10.0}});
        CandidateStrategy strategy;
        strategy.mode = CandidateStrategy::Mode::ExhaustiveCenterSubsets;
        auto gen = make_candidate_generator(S, 2, strategy, RngStream(0));
        const auto all = drain(*gen);
        CHECK(all.size() <= 6);  // C(4,2)
        CHECK(!all.empty());

        double best = 1e300;
        std::vector<std::int32_t> best_labels;
        for (const auto& cand : all) {
            CHECK(is_partition_into_k(cand, 2));
            const double v = candidate_sse(S.points, cand);
            if (v < best) {
                best = v;
                best_labels = cand.labels;
            }
        }
        CHECK(best_labels == std::vector<std::int32_t>{0, 0, 1, 1});
        CHECK(best == doctest::Approx(1.0));
    }
    SUBCASE("k equal to distinct count leaves one candidate") {
        const SampleSet S = sample_of({{0.0}, {5.0}, {9.0}});
        CandidateStrategy strategy;
        strategy.mode = CandidateStrategy::Mode::ExhaustiveCenterSubsets;
        auto gen = make_candidate_generator(S, 3, strategy, RngStream(0));
        CHECK(drain(*gen).size() == 1);
    }
    SUBCASE("duplicates collapse; fewer distinct than k is degenerate") {
        const SampleSet S = sample_of({{1.0}, {1.0}, {2.0}});
        CandidateStrategy strategy;
        strategy.mode = CandidateStrategy::Mode::ExhaustiveCenterSubsets;
        CHECK_THROWS_AS(make_candidate_generator(S, 3, strategy, RngStream(0)),
                        DegenerateSampleError);
    }
}

TEST_CASE("restart candidates") {
    RngStream data_rng(31);
    std::vector<Point> rows;
    for (const double c : {0.0, 30.0, 60.0}) {
        for (int i = 0; i < 3; ++i) {
            rows.push_back({c + data_rng.normal(), data_rng.normal()});
        }
    }
    const SampleSet S = sample_of(rows);

    CandidateStrategy restarts;
    restarts.mode = CandidateStrategy::Mode::RandomRestarts;
    restarts.restarts = 50;

    SUBCASE("deterministic given the seed") {
        auto g1 = make_candidate_generator(S, 3, restarts, RngStream(5));
        auto g2 = make_candidate_generator(S, 3, restarts, RngStream(5));
        Candidate a, b;
        while (true) {
            const bool more1 = g1->next(a);
            const bool more2 = g2->next(b);
            CHECK(more1 == more2);
            if (!more1) break;
            CHECK(a.labels == b.labels);
        }
    }
    SUBCASE("R=1 emits a single candidate") {
        CandidateStrategy one = restarts;
        one.restarts = 1;
        auto gen = make_candidate_generator(S, 3, one, RngStream(5));
        CHECK(drain(*gen).size() == 1);
    }
    SUBCASE("best of 50 restarts reaches the exhaustive optimum of the sample") {
        auto rgen = make_candidate_generator(S, 3, restarts, RngStream(5));
        double best_restart = 1e300;
        Candidate c;
        while (rgen->next(c)) {
            best_restart = std::min(best_restart, candidate_sse(S.points, c));
        }

        CandidateStrategy exhaustive;
        exhaustive.mode = CandidateStrategy::Mode::ExhaustivePartitions;
        auto egen = make_candidate_generator(S, 3, exhaustive, RngStream(5));
        double best_exact = 1e300;
        while (egen->next(c)) best_exact = std::min(best_exact, candidate_sse(S.points, c));

        CHECK(best_restart == doctest::Approx(best_exact).epsilon(1e-9));
    }
    SUBCASE("prefix property: candidate r depends only on (seed, r)") {
        CandidateStrategy small = restarts;
        small.restarts = 5;
        auto gs = make_candidate_generator(S, 3, small, RngStream(5));
        auto gl = make_candidate_generator(S, 3, restarts, RngStream(5));
        Candidate cs, cl;
        while (gs->next(cs)) {
            CHECK(gl->next(cl));
            CHECK(cs.labels == cl.labels);
        }
    }
}

TEST_CASE("auto strategy switches on the subset cap") {
    const SampleSet tiny = sample_of({{0.0}, {1.0}, {2.0}, {3.0}});
    CHECK(auto_candidate_strategy(tiny, 2, 100, 7).mode ==
          CandidateStrategy::Mode::ExhaustiveCenterSubsets);
    const CandidateStrategy over = auto_candidate_strategy(tiny, 2, 5, 7);
    CHECK(over.mode == CandidateStrategy::Mode::RandomRestarts);
    CHECK(over.restarts == 7);
}

TEST_CASE("candidate order is deterministic per strategy") {
    const SampleSet S = sample_of({{0.0}, {2.0}, {4.0}, {9.0}, {11.0}});
    for (const auto mode : {CandidateStrategy::Mode::ExhaustivePartitions,
                            CandidateStrategy::Mode::ExhaustiveCenterSubsets}) {
        CandidateStrategy strategy;
        strategy.mode = mode;
        auto g1 = make_candidate_generator(S, 2, strategy, RngStream(1));
        auto g2 = make_candidate_generator(S, 2, strategy, RngStream(1));
        Candidate a, b;
        while (g1->next(a)) {
            CHECK(g2->next(b));
            CHECK(a.labels == b.labels);
        }
        CHECK_FALSE(g2->next(b));
    }
}

TEST_CASE("m below k is rejected") {
    const SampleSet S = sample_of({{0.0}, {1.0}});
    CandidateStrategy strategy;
    strategy.mode = CandidateStrategy::Mode::ExhaustivePartitions;
    CHECK_THROWS_AS(make_candidate_generator(S, 3, strategy, RngStream(0)),
                    InvalidParameterError);
}
