#include "rsclust/bench.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsclust/geometry.hpp"
#include "rsclust/lloyd.hpp"
#include "rsclust/rs.hpp"
#include "rsclust/sampling.hpp"
#include "rsclust/synthetic.hpp"

namespace rsclust {

namespace {

// per-cell rng channels
constexpr std::uint64_t kChanData = 0;
constexpr std::uint64_t kChanKm = 1;
constexpr std::uint64_t kChanKmpp = 2;
constexpr std::uint64_t kChanRs = 3;

std::vector<double> run_three(const Dataset& X, std::int32_t k, std::size_t m,
                              const RngStream& cell, const BenchSettings& settings) {
    RngStream km_rng = cell.derive(kChanKm);
    const double km = lloyd(X, k, LloydConfig{}, km_rng).objective;

    RngStream kmpp_rng = cell.derive(kChanKmpp);
    const double kmpp = kmeans_plus_plus(X, k, LloydConfig{}, kmpp_rng).objective;

    const std::uint64_t rs_seed = cell.derive(kChanRs).seed();
    RngStream sampler = RngStream(rs_seed).derive(0);
    SampleSet sample = sample_with_replacement(X, m, sampler);
    RsConfig cfg;
    cfg.k = k;
    cfg.m = m;
    cfg.strategy =
        auto_candidate_strategy(sample, k, settings.candidate_cap, settings.restarts);
    cfg.seed = rs_seed;
    const double rs = run_rs_with_sample(X, std::move(sample), cfg).clustering.objective;

    return {km, kmpp, rs};
}

ExperimentReport make_report(const std::string& sweep_name,
                             std::vector<std::int64_t> values,
                             const BenchSettings& settings) {
    ExperimentReport report;
    report.sweep_name = sweep_name;
    report.sweep_values = std::move(values);
    report.algorithms = {"KM", "KM++", "RS"};
    report.rounds = settings.rounds;
    report.seed = settings.seed;
    std::ostringstream echo;
    echo << "sweep=" << sweep_name << ";seed=" << settings.seed
         << ";rounds=" << settings.rounds << ";dim=" << settings.dim
         << ";candidate_cap=" << settings.candidate_cap
         << ";restarts=" << settings.restarts;
    report.settings_echo = echo.str();
    const std::size_t V = report.sweep_values.size();
    report.objectives.assign(
        V, std::vector<std::vector<double>>(settings.rounds, std::vector<double>(3, 0.0)));
    report.hits.assign(V, std::vector<std::vector<std::uint8_t>>(
                              settings.rounds, std::vector<std::uint8_t>(3, 0)));
    report.hit_counts.assign(V, std::vector<std::uint64_t>(3, 0));
    return report;
}

// hit = within 1e-9 relative of the round minimum; every tied algorithm
// counts once
void finalize_hits(ExperimentReport& report) {
    for (std::size_t v = 0; v < report.sweep_values.size(); ++v) {
        for (std::size_t r = 0; r < report.rounds; ++r) {
            const auto& obj = report.objectives[v][r];
            const double mn = *std::min_element(obj.begin(), obj.end());
            for (std::size_t a = 0; a < obj.size(); ++a) {
                const bool hit = rel_close(obj[a], mn);
                report.hits[v][r][a] = hit ? 1 : 0;
                if (hit) report.hit_counts[v][a] += 1;
            }
        }
    }
}

}  // namespace

ExperimentReport run_effect_of_n(const BenchSettings& settings) {
    return run_effect_of_n(settings,
                           {100, 200, 300, 400, 500, 600, 700, 800, 900, 1000});
}

ExperimentReport run_effect_of_n(const BenchSettings& settings,
                                 const std::vector<std::size_t>& n_values) {
    std::vector<std::int64_t> values(n_values.begin(), n_values.end());
    ExperimentReport report = make_report("n", std::move(values), settings);
    const RngStream base(settings.seed);
    const std::size_t V = n_values.size();
    const std::size_t R = settings.rounds;
    const std::int64_t cells = static_cast<std::int64_t>(V * R);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < cells; ++c) {
        const std::size_t vi = static_cast<std::size_t>(c) / R;
        const std::size_t r = static_cast<std::size_t>(c) % R;
        const std::size_t n = n_values[vi];
        const std::size_t m = n / 10;
        const RngStream cell = base.derive(1 + vi).derive(r);
        RngStream data = cell.derive(kChanData);
        const Dataset X = gen_synthetic({n, settings.dim}, data);
        report.objectives[vi][r] = run_three(X, 3, m, cell, settings);
    }
    finalize_hits(report);
    return report;
}

ExperimentReport run_effect_of_k(const BenchSettings& settings) {
    return run_effect_of_k(settings, {2, 3, 4, 5, 6, 7, 8});
}

ExperimentReport run_effect_of_k(const BenchSettings& settings,
                                 const std::vector<std::int32_t>& k_values) {
    std::vector<std::int64_t> values(k_values.begin(), k_values.end());
    ExperimentReport report = make_report("k", std::move(values), settings);
    const RngStream base(settings.seed);
    const std::size_t V = k_values.size();
    const std::size_t R = settings.rounds;
    const std::int64_t cells = static_cast<std::int64_t>(V * R);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < cells; ++c) {
        const std::size_t vi = static_cast<std::size_t>(c) / R;
        const std::size_t r = static_cast<std::size_t>(c) % R;
        // the round's instance is shared by every k value
        RngStream data = base.derive(0).derive(r);
        const Dataset X = gen_synthetic({100, settings.dim}, data);
        const RngStream cell = base.derive(1 + vi).derive(r);
        report.objectives[vi][r] = run_three(X, k_values[vi], 50, cell, settings);
    }
    finalize_hits(report);
    return report;
}

ExperimentReport run_effect_of_m(const Dataset& X, const BenchSettings& settings) {
    return run_effect_of_m(X, settings, {25, 50, 75, 100, 125, 150, 175, 200});
}

ExperimentReport run_effect_of_m(const Dataset& X, const BenchSettings& settings,
                                 const std::vector<std::size_t>& m_values) {
    std::vector<std::int64_t> values(m_values.begin(), m_values.end());
    ExperimentReport report = make_report("m", std::move(values), settings);
    const RngStream base(settings.seed);
    const std::size_t V = m_values.size();
    const std::size_t R = settings.rounds;
    const std::int64_t cells = static_cast<std::int64_t>(V * R);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < cells; ++c) {
        const std::size_t vi = static_cast<std::size_t>(c) / R;
        const std::size_t r = static_cast<std::size_t>(c) % R;
        const RngStream cell = base.derive(1 + vi).derive(r);
        report.objectives[vi][r] = run_three(X, 3, m_values[vi], cell, settings);
    }
    finalize_hits(report);
    return report;
}

// ---- lemma drivers ---------------------------------------------------------

namespace {

Point dataset_mean(const Dataset& X) {
    Point mean(X.dim(), 0.0);
    for (std::size_t i = 0; i < X.size(); ++i) {
        const auto r = X.row(i);
        for (std::size_t t = 0; t < X.dim(); ++t) mean[t] += r[t];
    }
    for (double& v : mean) v /= static_cast<double>(X.size());
    return mean;
}

// brute-force optimal 2-clustering; also reports the smaller cluster size of
// the optimum (point 0 pinned to block 0, every split visited once)
std::pair<double, std::size_t> brute_force_two_clustering(const Dataset& X) {
    const std::size_t n = X.size();
    const std::size_t d = X.dim();
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_min_size = 0;
    std::vector<double> sum0(d), sum1(d);
    for (std::uint64_t mask = 0; mask < (1ULL << (n - 1)); ++mask) {
        std::fill(sum0.begin(), sum0.end(), 0.0);
        std::fill(sum1.begin(), sum1.end(), 0.0);
        std::size_t n1 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool in1 = i > 0 && ((mask >> (i - 1)) & 1ULL);
            double* sum = in1 ? sum1.data() : sum0.data();
            const auto row = X.row(i);
            for (std::size_t t = 0; t < d; ++t) sum[t] += row[t];
            n1 += in1 ? 1 : 0;
        }
        if (n1 == 0 || n1 == n) continue;
        const std::size_t n0 = n - n1;
        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool in1 = i > 0 && ((mask >> (i - 1)) & 1ULL);
            const double* sum = in1 ? sum1.data() : sum0.data();
            const double inv = 1.0 / static_cast<double>(in1 ? n1 : n0);
            const auto row = X.row(i);
            for (std::size_t t = 0; t < d; ++t) {
                const double diff = row[t] - sum[t] * inv;
                sse += diff * diff;
            }
        }
        if (sse < best) {
            best = sse;
            best_min_size = std::min(n0, n1);
        }
    }
    return {best, best_min_size};
}

}  // namespace

std::vector<LemmaCheck> sample_mean_checks(const LemmaSuiteConfig& cfg, RngStream& rng) {
    RngStream data = rng.derive(0);
    const Dataset X = gen_synthetic({cfg.mean_n, cfg.mean_d}, data);
    const Point cx = dataset_mean(X);
    const double var = total_variance(X);
    const std::size_t d = X.dim();

    std::vector<double> mean_cs(d, 0.0);
    double mean_dist2 = 0.0;
    const RngStream trials = rng.derive(1);
    for (std::size_t t = 0; t < cfg.mean_trials; ++t) {
        RngStream draw = trials.derive(t);
        Point cs(d, 0.0);
        for (std::size_t i = 0; i < cfg.mean_m; ++i) {
            const auto row = X.row(draw.uniform_below(X.size()));
            for (std::size_t c = 0; c < d; ++c) cs[c] += row[c];
        }
        double dist2 = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            cs[c] /= static_cast<double>(cfg.mean_m);
            mean_cs[c] += cs[c];
            const double diff = cs[c] - cx[c];
            dist2 += diff * diff;
        }
        mean_dist2 += dist2;
    }
    for (double& v : mean_cs) v /= static_cast<double>(cfg.mean_trials);
    mean_dist2 /= static_cast<double>(cfg.mean_trials);

    // per-coordinate sd of c(S) is sqrt(var_c / m); the Monte-Carlo mean
    // shrinks it by another sqrt(trials)
    std::vector<double> var_coord(d, 0.0);
    for (std::size_t i = 0; i < X.size(); ++i) {
        const auto row = X.row(i);
        for (std::size_t c = 0; c < d; ++c) {
            const double diff = row[c] - cx[c];
            var_coord[c] += diff * diff;
        }
    }
    for (double& v : var_coord) v /= static_cast<double>(X.size());

    double worst_se = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
        const double se = std::sqrt(var_coord[c] /
                                    (static_cast<double>(cfg.mean_m) *
                                     static_cast<double>(cfg.mean_trials)));
        worst_se = std::max(worst_se, std::fabs(mean_cs[c] - cx[c]) / se);
    }

    const double expected = var / static_cast<double>(cfg.mean_m);
    const double rel_err = std::fabs(mean_dist2 - expected) / expected;

    std::vector<LemmaCheck> checks(2);
    checks[0].name = "sample_mean_unbiased";
    checks[0].measured = worst_se;
    checks[0].bound = 3.0;
    checks[0].pass = worst_se <= 3.0;
    checks[0].detail = "max |mean c(S) - c(X)| in standard errors";
    checks[1].name = "sample_mean_variance";
    checks[1].measured = rel_err;
    checks[1].bound = 0.05;
    checks[1].pass = rel_err <= 0.05;
    checks[1].detail = "relative error of mean ||c(S)-c(X)||^2 against var(X)/m";
    return checks;
}

LemmaCheck markov_bound_check(double delta, const LemmaSuiteConfig& cfg, RngStream& rng) {
    RngStream data = rng.derive(2);
    const Dataset X = gen_synthetic({cfg.markov_n, cfg.markov_d}, data);
    const Point cx = dataset_mean(X);
    const std::size_t n = X.size();
    const std::size_t d = X.dim();

    double base = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = X.row(i);
        for (std::size_t t = 0; t < d; ++t) {
            const double diff = row[t] - cx[t];
            base += diff * diff;
        }
    }
    const double factor = 1.0 + 1.0 / (static_cast<double>(cfg.markov_m) * delta);

    const RngStream trials = rng.derive(3);
    std::size_t ok = 0;
    Point cs(d);
    for (std::size_t t = 0; t < cfg.markov_trials; ++t) {
        RngStream draw = trials.derive(t);
        std::fill(cs.begin(), cs.end(), 0.0);
        for (std::size_t i = 0; i < cfg.markov_m; ++i) {
            const auto row = X.row(draw.uniform_below(n));
            for (std::size_t c = 0; c < d; ++c) cs[c] += row[c];
        }
        for (double& v : cs) v /= static_cast<double>(cfg.markov_m);
        double lhs = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = X.row(i);
            for (std::size_t c = 0; c < d; ++c) {
                const double diff = row[c] - cs[c];
                lhs += diff * diff;
            }
        }
        if (lhs <= factor * base) ++ok;
    }
    LemmaCheck check;
    check.name = "markov_bound_delta_" + std::to_string(delta);
    check.measured = static_cast<double>(ok) / static_cast<double>(cfg.markov_trials);
    check.bound = 1.0 - delta;
    check.pass = check.measured >= check.bound;
    check.detail = "frequency of the (1 + 1/(m delta)) objective bound";
    return check;
}

LemmaCheck chernoff_size_check(const LemmaSuiteConfig& cfg, RngStream& rng) {
    const TheoryParams& params = cfg.params;
    const std::size_t k = params.p.size();
    const std::size_t m = cfg.chernoff_m;
    const double eta = params.eta;

    // mu-balanced instance by construction: k well-separated equal blobs,
    // ground-truth membership = index block
    const std::size_t per = cfg.chernoff_cluster_size;
    const std::size_t n = per * k;

    const RngStream trials = rng.derive(4);
    std::size_t ok = 0;
    std::vector<std::size_t> counts(k);
    for (std::size_t t = 0; t < cfg.chernoff_trials; ++t) {
        RngStream draw = trials.derive(t);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            counts[draw.uniform_below(n) / per] += 1;
        }
        bool all = true;
        for (std::size_t j = 0; j < k; ++j) {
            if (static_cast<double>(counts[j]) <
                (1.0 - eta) * static_cast<double>(m) * params.p[j]) {
                all = false;
                break;
            }
        }
        if (all) ++ok;
    }
    LemmaCheck check;
    check.name = "chernoff_cluster_sizes";
    check.measured = static_cast<double>(ok) / static_cast<double>(cfg.chernoff_trials);
    check.bound = 1.0 - std::pow(static_cast<double>(m), -eta * eta / 2.0);
    check.pass = check.measured >= check.bound;
    check.detail = "frequency of |S_i| >= (1-eta) m p(i) for all i";
    return check;
}

LemmaCheck approximation_check(const LemmaSuiteConfig& cfg, RngStream& rng) {
    const double delta = cfg.params.delta;
    const double eta = cfg.params.eta;
    const std::size_t m = cfg.approx_m;
    const double mu = std::log(static_cast<double>(m)) / static_cast<double>(m);
    const double factor =
        1.0 + 1.0 / ((1.0 - eta) * delta * std::log(static_cast<double>(m)));

    const RngStream trials = rng.derive(5);
    std::size_t ok = 0;
    const std::size_t half = cfg.approx_n / 2;
    for (std::size_t t = 0; t < cfg.approx_trials; ++t) {
        RngStream stream = trials.derive(t);
        const Dataset X = gen_blobs({{-25.0, 0.0}, {25.0, 0.0}},
                                    {half, cfg.approx_n - half}, 1.0, stream);
        const auto [opt, min_size] = brute_force_two_clustering(X);
        if (static_cast<double>(min_size) < mu * static_cast<double>(X.size())) {
            throw InvalidParameterError(
                "constructed instance is not (ln m / m)-balanced");
        }
        RsConfig rs_cfg;
        rs_cfg.k = cfg.approx_k;
        rs_cfg.m = m;
        rs_cfg.strategy.mode = CandidateStrategy::Mode::ExhaustivePartitions;
        rs_cfg.seed = stream.derive(1).seed();
        const RsResult result = run_rs(X, rs_cfg);
        if (result.clustering.objective <= factor * opt) ++ok;
    }
    LemmaCheck check;
    check.name = "rs_approximation";
    check.measured = static_cast<double>(ok) / static_cast<double>(cfg.approx_trials);
    check.bound =
        1.0 - delta - std::pow(static_cast<double>(m), -eta * eta / 2.0);
    check.pass = check.measured >= check.bound;
    check.detail = "frequency of RS <= (1 + 1/((1-eta) delta ln m)) OPT";
    return check;
}

LemmaReport run_lemma_suite(const LemmaSuiteConfig& cfg, RngStream& rng) {
    LemmaReport report;
    for (LemmaCheck& check : sample_mean_checks(cfg, rng)) {
        report.checks.push_back(std::move(check));
    }
    for (double delta : cfg.markov_deltas) {
        report.checks.push_back(markov_bound_check(delta, cfg, rng));
    }
    report.checks.push_back(chernoff_size_check(cfg, rng));
    report.checks.push_back(approximation_check(cfg, rng));
    for (const LemmaCheck& check : report.checks) {
        report.all_pass = report.all_pass && check.pass;
    }
    return report;
}

}  // namespace rsclust
