#include "rsclust/balanced.hpp"

#include <cassert>

#include "rsclust/geometry.hpp"

namespace rsclust {

bool verify_balanced(const Clustering& clustering, BalanceBounds b) {
    for (std::int64_t size : clustering.sizes) {
        if (size < b.lower || size > b.upper) return false;
    }
    return true;
}

RsResult run_balanced_rs_with_sample(const Dataset& X, SampleSet sample,
                                     const BalancedRsConfig& cfg) {
    const std::size_t n = X.size();
    const std::int32_t k = cfg.base.k;
    if (k < 1) throw InvalidParameterError("k must be >= 1");
    if (n < static_cast<std::size_t>(k)) throw InvalidParameterError("need n >= k points");
    if (sample.size() < static_cast<std::size_t>(k)) {
        throw InvalidParameterError("sample size m must be >= k");
    }

    // network feasibility depends only on (n, k, l, u); build_network throws
    // InfeasibleBoundsError up front, so no per-candidate feasibility branch
    CentroidSet placeholder(static_cast<std::size_t>(k), X.dim());
    FlowNetwork net = build_network(X, placeholder, cfg.bounds);

    auto generator = make_candidate_generator(sample, k, cfg.base.strategy,
                                              RngStream(cfg.base.seed).derive(1));

    detail::ArgminTracker tracker;
    Candidate cand;
    std::uint64_t emitted = 0;
    for (; generator->next(cand); ++emitted) {
        set_assignment_costs(net, X, cand.centers);
        const Flow flow = solve_min_cost_flow(net);
        const Assignment sigma = flow_to_assignment(net, flow);
        const Clustering cl = clustering_from_assignment(X, sigma, k, &cand.centers);
        tracker.offer(emitted, cl.objective, cand);
    }
    if (emitted == 0) throw DegenerateSampleError("all candidate clusterings degenerate");

    std::uint64_t best_index = 0;
    double best_value = 0.0;
    const Candidate& best = tracker.winner(best_index, best_value);

    set_assignment_costs(net, X, best.centers);
    const Flow flow = solve_min_cost_flow(net);
    Assignment sigma = flow_to_assignment(net, flow);
    Clustering clustering = clustering_from_assignment(X, std::move(sigma), k, &best.centers);
    assert(verify_balanced(clustering, cfg.bounds));

    return RsResult{std::move(clustering), best_index, emitted, std::move(sample),
                    best.centers};
}

RsResult run_balanced_rs(const Dataset& X, const BalancedRsConfig& cfg) {
    if (cfg.base.m < static_cast<std::size_t>(cfg.base.k) || cfg.base.m == 0) {
        throw InvalidParameterError("sample size m must be >= k");
    }
    RngStream sampler = RngStream(cfg.base.seed).derive(0);
    SampleSet sample = sample_with_replacement(X, cfg.base.m, sampler);
    return run_balanced_rs_with_sample(X, std::move(sample), cfg);
}

}  // namespace rsclust
