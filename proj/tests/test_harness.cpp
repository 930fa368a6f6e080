#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "rsclust/bench.hpp"
#include "rsclust/geometry.hpp"
#include "rsclust/io.hpp"
#include "rsclust/report.hpp"
#include "rsclust/sampling.hpp"
#include "rsclust/synthetic.hpp"

using namespace rsclust;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        path = (std::filesystem::temp_directory_path() /
                ("rsclust_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++)))
                   .string();
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
    static int counter;
};
int TempFile::counter = 0;

}  // namespace

TEST_CASE("load_points basics") {
    TempFile f("0 0\n1 0\n");
    const Dataset X = load_points(f.path);
    CHECK(X.size() == 2);
    CHECK(X.dim() == 2);
    CHECK(X.row(1)[0] == 1.0);
}

TEST_CASE("load_points skips headers, blanks and handles commas") {
    TempFile f("# x y\n\n1.5, 2.5\n 3,4 \n");
    const Dataset X = load_points(f.path);
    CHECK(X.size() == 2);
    CHECK(X.dim() == 2);
    CHECK(X.row(0)[1] == 2.5);
    CHECK(X.row(1)[0] == 3.0);
}

TEST_CASE("load_points error paths") {
    {
        TempFile f("1 2\n3\n");
        try {
            load_points(f.path);
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            CHECK(e.line == 2);
        }
    }
    {
        TempFile f("1 2\n3 oops\n");
        CHECK_THROWS_AS(load_points(f.path), FormatError);
    }
    {
        TempFile f("# only a header\n");
        CHECK_THROWS_AS(load_points(f.path), FormatError);
    }
    CHECK_THROWS_AS(load_points("/nonexistent/rsclust.txt"), IoError);
}

namespace {

ExperimentReport tiny_report() {
    BenchSettings settings;
    settings.seed = 11;
    settings.rounds = 4;
    return run_effect_of_k(settings, {2, 3});
}

}  // namespace

TEST_CASE("experiment report invariants") {
    const ExperimentReport report = tiny_report();
    REQUIRE(report.sweep_values.size() == 2);
    for (std::size_t v = 0; v < report.sweep_values.size(); ++v) {
        std::uint64_t total = 0;
        for (std::size_t a = 0; a < 3; ++a) {
            CHECK(report.hit_counts[v][a] <= report.rounds);
            total += report.hit_counts[v][a];
        }
        CHECK(total >= report.rounds);  // at least one hit per round
        for (std::size_t r = 0; r < report.rounds; ++r) {
            const auto& obj = report.objectives[v][r];
            const double mn = std::min({obj[0], obj[1], obj[2]});
            int hits = 0;
            for (std::size_t a = 0; a < 3; ++a) {
                CHECK(report.hits[v][r][a] == (rel_close(obj[a], mn) ? 1 : 0));
                hits += report.hits[v][r][a];
            }
            CHECK(hits >= 1);
        }
    }
}

TEST_CASE("reports are deterministic") {
    const ExperimentReport a = tiny_report();
    const ExperimentReport b = tiny_report();
    CHECK(results_csv(a) == results_csv(b));
    CHECK(summary_csv(a) == summary_csv(b));
    CHECK(chart_svg(a) == chart_svg(b));
}

TEST_CASE("csv round trip reproduces the hit counts") {
    const ExperimentReport report = tiny_report();
    std::istringstream in(results_csv(report));
    std::string line;
    std::getline(in, line);
    CHECK(line == "sweep_value,round,algorithm,objective,is_hit");
    std::map<std::pair<std::string, std::string>, std::uint64_t> sums;
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string value, round, alg, objective, hit;
        std::getline(row, value, ',');
        std::getline(row, round, ',');
        std::getline(row, alg, ',');
        std::getline(row, objective, ',');
        std::getline(row, hit, ',');
        sums[{value, alg}] += hit == "1" ? 1 : 0;
    }
    for (std::size_t v = 0; v < report.sweep_values.size(); ++v) {
        for (std::size_t a = 0; a < 3; ++a) {
            const auto key = std::make_pair(std::to_string(report.sweep_values[v]),
                                            report.algorithms[a]);
            CHECK(sums[key] == report.hit_counts[v][a]);
        }
    }
}

TEST_CASE("empty sweep emits headers and an empty chart") {
    BenchSettings settings;
    settings.rounds = 0;
    const ExperimentReport report = run_effect_of_k(settings, {});
    CHECK(results_csv(report) == "sweep_value,round,algorithm,objective,is_hit\n");
    CHECK(summary_csv(report) == "sweep_value,algorithm,hits,rounds\n");
    const std::string svg = chart_svg(report);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("emit_report writes the three files") {
    const ExperimentReport report = tiny_report();
    const auto dir = std::filesystem::temp_directory_path() /
                     ("rsclust_report_" + std::to_string(::getpid()));
    emit_report(report, dir.string());
    CHECK(std::filesystem::exists(dir / "results.csv"));
    CHECK(std::filesystem::exists(dir / "summary.csv"));
    CHECK(std::filesystem::exists(dir / "chart.svg"));
    std::ifstream svg(dir / "chart.svg");
    std::string first;
    std::getline(svg, first);
    CHECK(first.rfind("<svg", 0) == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("effect-m runs on any loaded dataset") {
    RngStream rng(3);
    const Dataset X = gen_synthetic({40, 2}, rng);
    BenchSettings settings;
    settings.seed = 5;
    settings.rounds = 2;
    const ExperimentReport report = run_effect_of_m(X, settings, {4, 8});
    CHECK(report.sweep_name == "m");
    CHECK(report.sweep_values == std::vector<std::int64_t>{4, 8});
    CHECK(report.objectives[0][0].size() == 3);
}

TEST_CASE("lemma suite desk run passes") {
    // scaled-down trial counts; the acceptance suite runs the full sizes
    LemmaSuiteConfig cfg;
    cfg.mean_trials = 4000;
    cfg.markov_trials = 2000;
    cfg.chernoff_trials = 1000;
    cfg.approx_trials = 100;
    RngStream rng(2);
    const LemmaReport report = run_lemma_suite(cfg, rng);
    CHECK(report.checks.size() == 6);
    for (const LemmaCheck& check : report.checks) {
        INFO(check.name, " measured=", check.measured, " bound=", check.bound);
        CHECK(check.pass);
    }
    CHECK(report.all_pass);
}

TEST_CASE("degenerate zero-variance instance passes the estimates trivially") {
    // all sample draws coincide, so c(S) = c(X) exactly in every trial
    const Dataset X = Dataset::from_rows(std::vector<Point>(12, Point{2.0, 2.0}));
    RngStream base(4);
    for (int t = 0; t < 50; ++t) {
        RngStream rng = base.derive(static_cast<std::uint64_t>(t));
        SampleSet S = sample_with_replacement(X, 5, rng);
        Point mean(2, 0.0);
        for (std::size_t i = 0; i < S.size(); ++i) {
            mean[0] += S.points.row(i)[0] / 5.0;
            mean[1] += S.points.row(i)[1] / 5.0;
        }
        CHECK(mean[0] == doctest::Approx(2.0));
        CHECK(mean[1] == doctest::Approx(2.0));
    }
    CHECK(total_variance(X) == 0.0);
}

TEST_CASE("lemmas csv format") {
    LemmaReport report;
    report.checks.push_back({"sample_check", 0.9, 0.5, true, ""});
    CHECK(lemmas_csv(report) == "check,measured,bound,pass\nsample_check,0.9,0.5,1\n");
}
