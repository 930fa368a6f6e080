// rscluster: clustering runs, balanced runs, win-rate benchmarks and the
// statistical check suite behind one command-line entry point.
//
// exit codes: 0 success, 1 usage error, 2 data/format error

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rsclust/balanced.hpp"
#include "rsclust/bench.hpp"
#include "rsclust/geometry.hpp"
#include "rsclust/io.hpp"
#include "rsclust/lloyd.hpp"
#include "rsclust/mcf.hpp"
#include "rsclust/parallel.hpp"
#include "rsclust/report.hpp"
#include "rsclust/rs.hpp"
#include "rsclust/synthetic.hpp"

namespace {

using namespace rsclust;

struct InputSpec {
    std::string input_path;
    std::string synthetic;  // "n,d"
    std::uint64_t seed = 0;
};

Dataset resolve_input(const InputSpec& in) {
    const bool has_file = !in.input_path.empty();
    const bool has_synth = !in.synthetic.empty();
    if (has_file == has_synth) {
        throw InvalidParameterError("exactly one of --input or --synthetic is required");
    }
    if (has_file) return load_points(in.input_path);

    const auto comma = in.synthetic.find(',');
    std::size_t n = 0, d = 0;
    try {
        n = std::stoull(in.synthetic.substr(0, comma));
        d = comma == std::string::npos ? 2 : std::stoull(in.synthetic.substr(comma + 1));
    } catch (const std::exception&) {
        throw InvalidParameterError("--synthetic expects n,d (got '" + in.synthetic + "')");
    }
    RngStream rng = RngStream(in.seed).derive(0xDA7A);
    return gen_synthetic({n, d}, rng);
}

void add_input_flags(CLI::App* cmd, InputSpec& in) {
    cmd->add_option("--input", in.input_path, "point file, one point per line");
    cmd->add_option("--synthetic", in.synthetic,
                    "generate a standard-normal dataset, format n,d");
}

CandidateStrategy parse_strategy(const std::string& text, std::uint64_t cap_flag) {
    CandidateStrategy strategy;
    if (text == "exhaustive") {
        strategy.mode = CandidateStrategy::Mode::ExhaustivePartitions;
        if (cap_flag > 0) strategy.partition_cap = cap_flag;
    } else if (text == "ksubset") {
        strategy.mode = CandidateStrategy::Mode::ExhaustiveCenterSubsets;
    } else if (text.rfind("restarts:", 0) == 0) {
        strategy.mode = CandidateStrategy::Mode::RandomRestarts;
        try {
            strategy.restarts = std::stoull(text.substr(9));
        } catch (const std::exception&) {
            throw InvalidParameterError("bad restart count in '" + text + "'");
        }
    } else {
        throw InvalidParameterError(
            "--candidates must be exhaustive, ksubset, restarts:R or auto");
    }
    return strategy;
}

void print_result_line(const std::string& algo, double objective, std::int64_t k,
                       std::size_t n, std::size_t m, std::uint64_t seed) {
    std::cout << algo << ',' << format_double(objective) << ',' << k << ',' << n << ','
              << m << ',' << seed << "\n";
}

void print_report_summary(const ExperimentReport& report) {
    for (std::size_t v = 0; v < report.sweep_values.size(); ++v) {
        std::cout << report.sweep_name << '=' << report.sweep_values[v];
        for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
            std::cout << ' ' << report.algorithms[a] << '=' << report.hit_counts[v][a];
        }
        std::cout << "\n";
    }
}

struct ClusterArgs {
    std::string algo;
    std::int32_t k = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    std::string candidates = "auto";
    std::uint64_t candidate_cap = 0;
    std::size_t restarts = 200;
    std::int64_t lower = 0;
    std::int64_t upper = -1;  // -1: default to n
    std::int64_t max_iters = 300;
    bool polish = false;
    int jobs = 0;
    std::string dump_path;
    InputSpec in;
};

int run_cluster(const ClusterArgs& args) {
    par::set_threads(args.jobs);
    InputSpec in = args.in;
    in.seed = args.seed;
    const Dataset X = resolve_input(in);
    const std::size_t n = X.size();

    if (args.algo == "km" || args.algo == "kmpp") {
        LloydConfig cfg;
        cfg.max_iters = args.max_iters;
        RngStream rng(args.seed);
        const Clustering cl = args.algo == "km"
                                  ? lloyd(X, args.k, cfg, rng)
                                  : kmeans_plus_plus(X, args.k, cfg, rng);
        print_result_line(args.algo, cl.objective, args.k, n, 0, args.seed);
        return 0;
    }

    // rs family: draw the sample first so "auto" can pick a strategy
    RngStream sampler = RngStream(args.seed).derive(0);
    SampleSet sample = sample_with_replacement(X, args.m, sampler);
    CandidateStrategy strategy;
    if (args.candidates == "auto") {
        strategy = auto_candidate_strategy(
            sample, args.k, args.candidate_cap > 0 ? args.candidate_cap : 2'000'000,
            args.restarts);
    } else {
        strategy = parse_strategy(args.candidates, args.candidate_cap);
    }
    RsConfig cfg;
    cfg.k = args.k;
    cfg.m = args.m;
    cfg.strategy = strategy;
    cfg.seed = args.seed;

    if (args.algo == "rs") {
        RsResult result = run_rs_with_sample(X, std::move(sample), cfg);
        double objective = result.clustering.objective;
        if (args.polish) {
            LloydConfig polish_cfg;
            polish_cfg.init = LloydConfig::Init::Provided;
            polish_cfg.provided_centers = result.clustering.centroids;
            RngStream rng(args.seed);
            objective = lloyd(X, args.k, polish_cfg, rng).objective;
        }
        print_result_line("rs", objective, args.k, n, args.m, args.seed);
        return 0;
    }
    if (args.algo == "rs-balanced") {
        if (args.polish) {
            throw InvalidParameterError("--polish would break the balance constraints");
        }
        BalancedRsConfig bcfg;
        bcfg.base = cfg;
        bcfg.bounds.lower = args.lower;
        bcfg.bounds.upper = args.upper < 0 ? static_cast<std::int64_t>(n) : args.upper;
        RsResult result = run_balanced_rs_with_sample(X, std::move(sample), bcfg);
        if (!args.dump_path.empty()) {
            FlowNetwork net = build_network(X, result.best_candidate_centers, bcfg.bounds);
            std::ofstream out(args.dump_path);
            if (!out) throw IoError("cannot open '" + args.dump_path + "' for writing");
            dump_network(net, out);
        }
        print_result_line("rs-balanced", result.clustering.objective, args.k, n, args.m,
                          args.seed);
        return 0;
    }
    throw InvalidParameterError("--algo must be rs, km, kmpp or rs-balanced");
}

struct BenchArgs {
    std::uint64_t seed = 0;
    std::size_t rounds = 30;
    std::size_t dim = 2;
    std::uint64_t candidate_cap = 2'000'000;
    std::size_t restarts = 200;
    int jobs = 0;
    std::string out_dir;
    InputSpec in;
};

BenchSettings to_settings(const BenchArgs& args) {
    par::set_threads(args.jobs);
    BenchSettings settings;
    settings.seed = args.seed;
    settings.rounds = args.rounds;
    settings.dim = args.dim;
    settings.candidate_cap = args.candidate_cap;
    settings.restarts = args.restarts;
    return settings;
}

void add_bench_flags(CLI::App* cmd, BenchArgs& args, bool needs_out) {
    cmd->add_option("--seed", args.seed, "rng seed")->default_val(0);
    cmd->add_option("--rounds", args.rounds, "instances/rounds per sweep value")
        ->default_val(30);
    cmd->add_option("--dim", args.dim, "synthetic dimension")->default_val(2);
    cmd->add_option("--candidate-cap", args.candidate_cap,
                    "exhaustive center-subset cap before switching to restarts")
        ->default_val(2000000);
    cmd->add_option("--restarts", args.restarts, "restart count past the cap")
        ->default_val(200);
    cmd->add_option("--jobs", args.jobs, "worker threads (results identical for any value)")
        ->default_val(0);
    auto* out = cmd->add_option("--out", args.out_dir, "output directory");
    if (needs_out) out->required();
}

int run_lemmas(std::uint64_t seed, const std::string& out_dir) {
    LemmaSuiteConfig cfg;
    RngStream rng(seed);
    const LemmaReport report = run_lemma_suite(cfg, rng);
    for (const LemmaCheck& check : report.checks) {
        std::cout << (check.pass ? "PASS" : "FAIL") << ' ' << check.name
                  << " measured=" << format_double(check.measured)
                  << " bound=" << format_double(check.bound) << " (" << check.detail
                  << ")\n";
    }
    if (!out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw IoError("cannot create directory '" + out_dir + "'");
        std::ofstream out(std::filesystem::path(out_dir) / "lemmas.csv");
        if (!out) throw IoError("cannot write lemmas.csv");
        out << lemmas_csv(report);
    }
    // 3 = the run completed but a statistical check missed its bound
    return report.all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"variance-based k-clustering by random sampling, with k-means and "
                 "k-means++ baselines, balanced assignment and benchmark harness"};
    app.require_subcommand(1);

    ClusterArgs cluster_args;
    CLI::App* cluster = app.add_subcommand("cluster", "run one clustering task");
    cluster->add_option("--algo", cluster_args.algo, "rs | km | kmpp | rs-balanced")
        ->required();
    cluster->add_option("--k", cluster_args.k, "number of clusters")->required();
    cluster->add_option("--m", cluster_args.m, "sample size (rs family)");
    cluster->add_option("--seed", cluster_args.seed, "rng seed")->default_val(0);
    cluster->add_option("--candidates", cluster_args.candidates,
                        "exhaustive | ksubset | restarts:R | auto");
    cluster->add_option("--candidate-cap", cluster_args.candidate_cap,
                        "cap for the active candidate mode (0 = mode default)");
    cluster->add_option("--restarts", cluster_args.restarts,
                        "restart count used by auto past the cap");
    cluster->add_option("--lower", cluster_args.lower, "minimum cluster size (rs-balanced)");
    cluster->add_option("--upper", cluster_args.upper, "maximum cluster size (rs-balanced)");
    cluster->add_option("--max-iters", cluster_args.max_iters, "Lloyd iteration cap");
    cluster->add_flag("--polish", cluster_args.polish,
                      "refine the rs result with Lloyd steps");
    cluster->add_option("--jobs", cluster_args.jobs, "worker threads");
    cluster->add_option("--dump-network", cluster_args.dump_path,
                        "write the winning candidate's flow network edge list");
    add_input_flags(cluster, cluster_args.in);

    CLI::App* bench = app.add_subcommand("bench", "win-rate experiments and lemma checks");
    bench->require_subcommand(1);
    BenchArgs en_args, ek_args, em_args;
    CLI::App* effect_n = bench->add_subcommand("effect-n", "sweep the dataset size");
    add_bench_flags(effect_n, en_args, true);
    CLI::App* effect_k = bench->add_subcommand("effect-k", "sweep the cluster count");
    add_bench_flags(effect_k, ek_args, true);
    CLI::App* effect_m = bench->add_subcommand("effect-m", "sweep the sample size");
    add_bench_flags(effect_m, em_args, true);
    add_input_flags(effect_m, em_args.in);

    std::uint64_t lemma_seed = 0;
    std::string lemma_out;
    CLI::App* bench_lemmas = bench->add_subcommand("lemmas", "run the statistical checks");
    bench_lemmas->add_option("--seed", lemma_seed, "rng seed")->default_val(0);
    bench_lemmas->add_option("--out", lemma_out, "directory for lemmas.csv");

    CLI::App* lemmas = app.add_subcommand("lemmas", "alias of bench lemmas");
    lemmas->add_option("--seed", lemma_seed, "rng seed")->default_val(0);
    lemmas->add_option("--out", lemma_out, "directory for lemmas.csv");

    struct DumpArgs {
        std::int32_t k = 0;
        std::int64_t lower = 0;
        std::int64_t upper = -1;
        std::uint64_t seed = 0;
        std::string out_path;
        InputSpec in;
    } dump_args;
    CLI::App* dump = app.add_subcommand(
        "dump-network", "build the balanced-assignment network for seeded k-means++ "
                        "centers and write its edge list");
    dump->add_option("--k", dump_args.k, "number of centers")->required();
    dump->add_option("--lower", dump_args.lower, "minimum cluster size");
    dump->add_option("--upper", dump_args.upper, "maximum cluster size");
    dump->add_option("--seed", dump_args.seed, "rng seed")->default_val(0);
    dump->add_option("--out", dump_args.out_path, "output file")->required();
    add_input_flags(dump, dump_args.in);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (cluster->parsed()) return run_cluster(cluster_args);
        if (effect_n->parsed()) {
            const ExperimentReport report = run_effect_of_n(to_settings(en_args));
            emit_report(report, en_args.out_dir);
            print_report_summary(report);
            return 0;
        }
        if (effect_k->parsed()) {
            const ExperimentReport report = run_effect_of_k(to_settings(ek_args));
            emit_report(report, ek_args.out_dir);
            print_report_summary(report);
            return 0;
        }
        if (effect_m->parsed()) {
            BenchArgs args = em_args;
            args.in.seed = args.seed;
            const Dataset X = resolve_input(args.in);
            std::cout << "dataset: n=" << X.size() << " d=" << X.dim() << "\n";
            const ExperimentReport report = run_effect_of_m(X, to_settings(args));
            emit_report(report, args.out_dir);
            print_report_summary(report);
            return 0;
        }
        if (bench_lemmas->parsed() || lemmas->parsed()) {
            return run_lemmas(lemma_seed, lemma_out);
        }
        if (dump->parsed()) {
            dump_args.in.seed = dump_args.seed;
            const Dataset X = resolve_input(dump_args.in);
            RngStream rng(dump_args.seed);
            const CentroidSet centers = kmpp_seed(X, dump_args.k, rng);
            BalanceBounds bounds{dump_args.lower,
                                 dump_args.upper < 0
                                     ? static_cast<std::int64_t>(X.size())
                                     : dump_args.upper};
            const FlowNetwork net = build_network(X, centers, bounds);
            std::ofstream out(dump_args.out_path);
            if (!out) throw IoError("cannot open '" + dump_args.out_path + "'");
            dump_network(net, out);
            return 0;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
