// Drives the rscluster binary (path in argv[1]) and checks the exit-code and
// output contracts.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

int run(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    if (status < 0) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-rscluster>\n";
        return 1;
    }
    const std::string bin = argv[1];
    const auto tmp = std::filesystem::temp_directory_path() /
                     ("rsclust_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(tmp);
    const std::string quiet = " > " + (tmp / "stdout.txt").string() + " 2> " +
                              (tmp / "stderr.txt").string();

    // --help exits 0 at every level
    expect(run(bin + " --help" + quiet) == 0, "--help exit 0");
    expect(run(bin + " cluster --help" + quiet) == 0, "cluster --help exit 0");
    expect(run(bin + " bench effect-m --help" + quiet) == 0, "bench effect-m --help exit 0");

    // unknown flag is a usage error
    expect(run(bin + " cluster --bogus 1" + quiet) == 1, "unknown flag exit 1");
    expect(run(bin + " definitely-not-a-subcommand" + quiet) == 1, "unknown subcommand exit 1");

    // single-run smoke: one CSV line algorithm,objective,k,n,m,seed
    expect(run(bin + " cluster --algo rs --k 2 --m 4 --seed 1 --synthetic 10,2" + quiet) == 0,
           "rs smoke exit 0");
    {
        std::string line = slurp(tmp / "stdout.txt");
        expect(line.rfind("rs,", 0) == 0, "rs line starts with algorithm");
        int commas = 0;
        for (char c : line) commas += c == ',' ? 1 : 0;
        expect(commas == 5, "rs line has 6 fields");
        expect(line.find(",2,10,4,1") != std::string::npos, "rs line echoes k,n,m,seed");
    }
    expect(run(bin + " cluster --algo km --k 3 --seed 2 --synthetic 30,2" + quiet) == 0,
           "km smoke exit 0");
    expect(run(bin + " cluster --algo kmpp --k 3 --seed 2 --synthetic 30,2" + quiet) == 0,
           "kmpp smoke exit 0");
    expect(run(bin + " cluster --algo rs --k 2 --m 6 --seed 1 --synthetic 12,2 --polish" +
               quiet) == 0,
           "rs --polish exit 0");
    expect(run(bin + " cluster --algo rs --k 2 --m 6 --seed 1 --synthetic 12,2 "
                     "--candidates restarts:5" + quiet) == 0,
           "rs restarts exit 0");

    // infeasible bounds: usage error naming the constraint
    expect(run(bin + " cluster --algo rs-balanced --k 2 --m 5 --lower 3 --upper 3 "
                     "--synthetic 5,2" + quiet) == 1,
           "infeasible bounds exit 1");
    {
        const std::string err = slurp(tmp / "stderr.txt");
        expect(err.find("k*l <= n <= k*u") != std::string::npos,
               "infeasibility message names k*l <= n <= k*u");
    }

    // balanced run with a network dump
    const auto dump = tmp / "net.txt";
    expect(run(bin + " cluster --algo rs-balanced --k 2 --m 8 --lower 4 --upper 4 "
                     "--seed 3 --synthetic 8,2 --dump-network " + dump.string() + quiet) == 0,
           "rs-balanced exit 0");
    {
        std::ifstream in(dump);
        std::string line;
        int arcs = 0;
        bool shape_ok = true;
        while (std::getline(in, line)) {
            ++arcs;
            std::istringstream row(line);
            long from, to, lower, upper;
            double cost;
            shape_ok = shape_ok && static_cast<bool>(row >> from >> to >> lower >> upper >> cost);
        }
        expect(arcs == 8 + 16 + 2, "dump has n + n*k + k arcs");
        expect(shape_ok, "dump rows parse as origin dest lower upper cost");
    }

    // mutually exclusive input sources
    expect(run(bin + " cluster --algo km --k 2" + quiet) == 1, "missing input exit 1");
    expect(run(bin + " cluster --algo km --k 2 --synthetic 9,2 --input /tmp/x.txt" +
               quiet) == 1,
           "both inputs exit 1");

    // bad data file: exit 2
    const auto bad = tmp / "bad.txt";
    std::ofstream(bad) << "1 2\n3\n";
    expect(run(bin + " cluster --algo km --k 2 --input " + bad.string() + quiet) == 2,
           "ragged file exit 2");
    expect(run(bin + " cluster --algo km --k 2 --input /nonexistent.txt" + quiet) == 2,
           "missing file exit 2");

    // bench smoke: writes the three files with the expected schema
    const auto out1 = tmp / "bench1";
    expect(run(bin + " bench effect-m --synthetic 64,2 --seed 7 --rounds 2 --out " +
               out1.string() + quiet) == 0,
           "bench effect-m exit 0");
    expect(std::filesystem::exists(out1 / "results.csv"), "results.csv written");
    expect(std::filesystem::exists(out1 / "summary.csv"), "summary.csv written");
    expect(std::filesystem::exists(out1 / "chart.svg"), "chart.svg written");
    {
        std::ifstream in(out1 / "results.csv");
        std::string header;
        std::getline(in, header);
        expect(header == "sweep_value,round,algorithm,objective,is_hit",
               "results.csv schema");
    }

    // determinism contract including --jobs
    const auto out2 = tmp / "bench2", out3 = tmp / "bench3";
    expect(run(bin + " bench effect-k --seed 7 --rounds 2 --jobs 1 --out " + out2.string() +
               quiet) == 0,
           "bench effect-k jobs=1 exit 0");
    expect(run(bin + " bench effect-k --seed 7 --rounds 2 --jobs 8 --out " + out3.string() +
               quiet) == 0,
           "bench effect-k jobs=8 exit 0");
    expect(slurp(out2 / "results.csv") == slurp(out3 / "results.csv"),
           "results.csv identical for jobs 1 vs 8");
    expect(slurp(out2 / "summary.csv") == slurp(out3 / "summary.csv"),
           "summary.csv identical for jobs 1 vs 8");

    expect(run(bin + " dump-network --k 2 --synthetic 6,2 --lower 1 --upper 5 --out " +
               (tmp / "net2.txt").string() + quiet) == 0,
           "dump-network subcommand exit 0");

    // lemma checks exist at both spellings and write their csv
    const auto lem = tmp / "lemmas";
    expect(run(bin + " lemmas --seed 3 --out " + lem.string() + quiet) == 0,
           "lemmas subcommand exit 0");
    expect(std::filesystem::exists(lem / "lemmas.csv"), "lemmas.csv written");
    {
        std::ifstream in(lem / "lemmas.csv");
        std::string header;
        std::getline(in, header);
        expect(header == "check,measured,bound,pass", "lemmas.csv schema");
    }
    expect(run(bin + " bench lemmas --seed 3" + quiet) == 0, "bench lemmas exit 0");

    std::filesystem::remove_all(tmp);
    if (failures == 0) {
        std::cout << "test_cli: all checks passed\n";
        return 0;
    }
    std::cout << "test_cli: " << failures << " check(s) failed\n";
    return 1;
}
