#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "muzeta/cli.hpp"

using namespace muzeta;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> data_rows(const std::string& csv) {
    std::vector<std::string> rows;
    std::istringstream in(csv);
    std::string line;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            seen_header = true;
            continue;
        }
        rows.push_back(line);
    }
    return rows;
}

}  // namespace

TEST_CASE("coeffs emits the reference table") {
    const auto r = run({"coeffs", "--count", "10"});
    REQUIRE(r.exit_code == 0);
    const auto rows = data_rows(r.out);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0].find("2.9255") != std::string::npos);
    CHECK(rows[1].find("8.2702") != std::string::npos);
    CHECK(r.out.find("# command=coeffs") != std::string::npos);
    CHECK(r.out.find("n,gamma,abs_a") != std::string::npos);

    const auto single = run({"coeffs", "--count", "1"});
    CHECK(data_rows(single.out).size() == 1);
}

TEST_CASE("radii reports C, c, classification, A") {
    const auto r = run({"radii", "--count", "10"});
    REQUIRE(r.exit_code == 0);
    const auto rows = data_rows(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].find("2.9341377") != std::string::npos);
    CHECK(rows[0].find("2.9170158") != std::string::npos);
    CHECK(rows[0].find("annulus") != std::string::npos);

    // a single coefficient: C = c = |a(gamma_1)|
    const auto one = run({"radii", "--count", "1"});
    REQUIRE(one.exit_code == 0);
    const auto row = data_rows(one.out).at(0);
    double C, c;
    REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,", &C, &c) == 2);
    CHECK(C == c);
    CHECK(C == doctest::Approx(2.92557682e-5).epsilon(1e-7));
}

TEST_CASE("figure output is deterministic and bounded") {
    const std::vector<std::string> args = {"figure", "--bmin", "1", "--bmax", "10",
                                           "--samples", "40", "--zeros", "50"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);  // byte identity
    const auto rows = data_rows(a.out);
    REQUIRE(rows.size() == 40);
    for (const auto& row : rows) {
        double bb, zs, fd, res;
        REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf", &bb, &zs, &fd, &res) == 4);
        CHECK(std::abs(zs - fd) < 1e-7);
        CHECK(res < 1e-7);
    }
}

TEST_CASE("figure presets cover the published ranges") {
    const auto r2 = run({"figure", "--range", "2", "--samples", "12"});
    REQUIRE(r2.exit_code == 0);
    CHECK(r2.out.find("# b_min=100") != std::string::npos);
    CHECK(r2.out.find("# b_max=1000") != std::string::npos);
    const auto rows = data_rows(r2.out);
    REQUIRE(rows.size() == 12);
    double b0 = 0;
    std::sscanf(rows.front().c_str(), "%lf,", &b0);
    CHECK(b0 == doctest::Approx(100.0));
}

TEST_CASE("zeros subcommand round-trips through the file format") {
    const auto r = run({"zeros", "--count", "5"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("# digits=12") != std::string::npos);
    std::istringstream in(r.out);
    const auto parsed = parse_zero_table(in, "cli");
    REQUIRE(parsed.ordinates.size() == 5);
    CHECK(parsed.precision_digits == 12);

    // write to a file and reload through --zeros
    const std::string path = "muzeta_test_zeros.tmp";
    {
        std::ofstream f(path);
        f << r.out;
    }
    const auto reloaded = run({"coeffs", "--count", "3", "--zeros", path});
    CHECK(reloaded.exit_code == 0);
    CHECK(data_rows(reloaded.out).size() == 3);
    std::remove(path.c_str());
}

TEST_CASE("zeros --find recomputes the table") {
    const auto r = run({"zeros", "--count", "3", "--find"});
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    const auto t = parse_zero_table(in, "cli");
    REQUIRE(t.ordinates.size() == 3);
    CHECK(t.ordinates[2] == doctest::Approx(25.010857580).epsilon(1e-8));
}

TEST_CASE("wmh subcommand reports bounded ratios") {
    const auto r = run({"wmh", "--X", "100000"});
    REQUIRE(r.exit_code == 0);
    const auto rows = data_rows(r.out);
    REQUIRE(rows.size() == 4);  // 1e2..1e5
    double prev_ratio = 1e9;
    for (const auto& row : rows) {
        double X, I, ratio;
        REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%lf", &X, &I, &ratio) == 3);
        CHECK(ratio <= prev_ratio + 1e-12);
        prev_ratio = ratio;
    }
}

TEST_CASE("riesz subcommand compares the two routes") {
    const auto r = run({"riesz", "--k", "2", "--xmin", "50", "--xmax", "200",
                        "--samples", "3", "--sieve-limit", "2000000"});
    REQUIRE(r.exit_code == 0);
    for (const auto& row : data_rows(r.out)) {
        double x, direct, expansion, diff;
        REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf", &x, &direct, &expansion, &diff) == 4);
        CHECK(std::abs(diff) < 1e-5);
    }
}

TEST_CASE("density model curve and compare mode") {
    const auto r = run({"density", "--points", "21", "--zeros", "10"});
    REQUIRE(r.exit_code == 0);
    const auto rows = data_rows(r.out);
    REQUIRE(rows.size() == 21);
    CHECK(r.out.find("classification=annulus") != std::string::npos);

    const auto cmp = run({"density", "--compare", "--samples", "200", "--bmin", "10",
                          "--bmax", "1000", "--zeros", "20", "--sieve-limit", "1000000"});
    REQUIRE(cmp.exit_code == 0);
    CHECK(cmp.out.find("KS=") != std::string::npos);
    CHECK(data_rows(cmp.out).size() == 200);
}

TEST_CASE("exit codes: configuration errors yield 2") {
    CHECK(run({"nonsense"}).exit_code == 2);
    CHECK(run({"coeffs", "--count", "700"}).exit_code == 2);  // beyond embedded capacity
    const std::string bad = "muzeta_bad_zeros.tmp";
    {
        std::ofstream f(bad);
        f << "21.0\n14.1\n";
    }
    const auto r = run({"coeffs", "--count", "1", "--zeros", bad});
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
    const auto chk = run({"check", "--zeros", bad});
    CHECK(chk.exit_code == 2);
    std::remove(bad.c_str());
    CHECK(run({}).exit_code == 2);
}

TEST_CASE("help exits zero") {
    const auto r = run({"--help"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("coeffs") != std::string::npos);
    CHECK(r.out.find("check") != std::string::npos);
}
