#ifndef RSCLUST_BENCH_HPP
#define RSCLUST_BENCH_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rsclust/rng.hpp"
#include "rsclust/types.hpp"

namespace rsclust {

// Knobs shared by the three win-rate experiments. rounds = 30 is a desk
// scale that keeps full sweeps in the minutes range. candidate_cap bounds
// the exhaustive center-subset search: C(distinct, k) above the cap switches
// the RS candidate strategy to seeded restarts.
struct BenchSettings {
    std::uint64_t seed = 0;
    std::size_t rounds = 30;
    std::size_t dim = 2;  // synthetic dimension for effect-n / effect-k
    std::uint64_t candidate_cap = 2'000'000;
    std::size_t restarts = 200;
};

// Win-rate table for one parameter sweep. An algorithm scores a hit in a
// round when its objective lies within 1e-9 relative of the round's minimum;
// ties award a hit to every tied algorithm, so hit counts may sum past the
// round count.
struct ExperimentReport {
    std::string sweep_name;
    std::vector<std::int64_t> sweep_values;
    std::vector<std::string> algorithms;
    std::size_t rounds = 0;
    std::uint64_t seed = 0;
    std::string settings_echo;
    std::vector<std::vector<std::vector<double>>> objectives;      // [value][round][alg]
    std::vector<std::vector<std::vector<std::uint8_t>>> hits;      // [value][round][alg]
    std::vector<std::vector<std::uint64_t>> hit_counts;            // [value][alg]
};

// Sweep the dataset size: for each n generate fresh standard-normal
// instances and run KM, KM++ and RS with m = n/10, k = 3.
ExperimentReport run_effect_of_n(const BenchSettings& settings);
ExperimentReport run_effect_of_n(const BenchSettings& settings,
                                 const std::vector<std::size_t>& n_values);

// Sweep k on fixed n = 100, m = 50; the per-round instance is shared across
// the k values so only the task changes.
ExperimentReport run_effect_of_k(const BenchSettings& settings);
ExperimentReport run_effect_of_k(const BenchSettings& settings,
                                 const std::vector<std::int32_t>& k_values);

// Sweep the sample size m on one fixed dataset (typically the UCI cloud data),
// k = 3.
ExperimentReport run_effect_of_m(const Dataset& X, const BenchSettings& settings);
ExperimentReport run_effect_of_m(const Dataset& X, const BenchSettings& settings,
                                 const std::vector<std::size_t>& m_values);

// ---- statistical checks of the sampling estimates -------------------------

// Test-time knobs of the estimates: confidence slack delta, Chernoff slack
// eta, balancedness mu, and the optimal-cluster size distribution p(i).
struct TheoryParams {
    double delta = 0.5;
    double eta = 0.5;
    double mu = 1.0 / 3.0;
    std::vector<double> p = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
};

struct LemmaSuiteConfig {
    TheoryParams params;
    std::vector<double> markov_deltas = {0.25, 0.5};
    // unbiasedness and variance of c(S): fixed X, repeated draws of S
    std::size_t mean_n = 1000, mean_d = 2, mean_m = 10, mean_trials = 20000;
    // Markov-style objective bound
    std::size_t markov_n = 500, markov_d = 2, markov_m = 20, markov_trials = 10000;
    // Chernoff bound on per-cluster sample counts
    std::size_t chernoff_m = 50, chernoff_cluster_size = 100, chernoff_trials = 5000;
    // end-to-end approximation factor of the sampling search
    std::size_t approx_n = 12, approx_m = 8, approx_trials = 1000;
    std::int32_t approx_k = 2;
};

struct LemmaCheck {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
    std::string detail;
};

struct LemmaReport {
    std::vector<LemmaCheck> checks;
    bool all_pass = true;
};

// E(c(S)) = c(X) and E||c(S) - c(X)||^2 = var(X)/m, checked by Monte Carlo.
std::vector<LemmaCheck> sample_mean_checks(const LemmaSuiteConfig& cfg, RngStream& rng);
// frequency of sum ||x - c(S)||^2 <= (1 + 1/(m*delta)) * optimum >= 1 - delta
LemmaCheck markov_bound_check(double delta, const LemmaSuiteConfig& cfg, RngStream& rng);
// frequency of |S_i| >= (1 - eta) * m * p(i) for all i >= 1 - m^(-eta^2/2)
LemmaCheck chernoff_size_check(const LemmaSuiteConfig& cfg, RngStream& rng);
// frequency of RS objective <= (1 + 1/((1-eta) delta ln m)) * OPT
//   >= 1 - delta - m^(-eta^2/2), on balanced instances with brute-forced OPT
LemmaCheck approximation_check(const LemmaSuiteConfig& cfg, RngStream& rng);

LemmaReport run_lemma_suite(const LemmaSuiteConfig& cfg, RngStream& rng);

}  // namespace rsclust

#endif  // RSCLUST_BENCH_HPP
