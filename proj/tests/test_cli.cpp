#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dirspec/cli.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& tmp_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "dirspec-cli-tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path_of(const std::string& name) { return (tmp_dir() / name).string(); }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    REQUIRE(f.good());
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "dirspec");
    return dirspec::parse_and_dispatch(args);
}

std::size_t line_count(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::string line_at(const std::string& text, std::size_t row) {
    std::istringstream in(text);
    std::string line;
    for (std::size_t i = 0; i <= row; ++i) {
        REQUIRE(static_cast<bool>(std::getline(in, line)));
    }
    return line;
}

double cell(const std::string& csv, std::size_t row, std::size_t col) {
    std::istringstream ls(line_at(csv, row));
    std::string tok;
    for (std::size_t i = 0; i <= col; ++i) {
        REQUIRE(static_cast<bool>(std::getline(ls, tok, ',')));
    }
    return std::stod(tok);
}

const std::string& zero_pot() {
    static const std::string path = [] {
        const std::string p = path_of("zero.pot");
        write_file(p, "type = zero\n");
        return p;
    }();
    return path;
}

const std::string& cos2_pot() {
    static const std::string path = [] {
        const std::string p = path_of("cos2.pot");
        write_file(p, "type = trig\nterm = cos:2:1\n");
        return p;
    }();
    return path;
}

const std::string& cos1_pot() {
    static const std::string path = [] {
        const std::string p = path_of("cos1.pot");
        write_file(p, "type = trig\nterm = cos:1:1\n");
        return p;
    }();
    return path;
}

const std::string& const5_pot() {
    static const std::string path = [] {
        const std::string p = path_of("const5.pot");
        write_file(p, "type = constant\nvalue = 5\n");
        return p;
    }();
    return path;
}

// half a sine arch sampled on a 65-node lattice: slowly decaying coefficients
const std::string& grid_sin_pot() {
    static const std::string path = [] {
        std::string text = "type = grid\n";
        const double h = 1.0 / 64.0;
        for (int i = 0; i <= 64; ++i) {
            const double x = static_cast<double>(i) * h;
            text += "sample = " + dirspec::detail::format_shortest(x) + "," +
                    dirspec::detail::format_shortest(std::sin(dirspec::kPi * x)) + "\n";
        }
        const std::string p = path_of("grid_sin.pot");
        write_file(p, text);
        return p;
    }();
    return path;
}

}  // namespace

TEST_CASE("spectrum command") {
    const std::string out = path_of("spectrum.csv");
    SECTION("galerkin csv") {
        REQUIRE(run({"spectrum", "--potential", zero_pot(), "--modes", "3", "--out", out}) == 0);
        const std::string csv = read_file(out);
        CHECK(line_at(csv, 0) == "m,lambda,est_error");
        CHECK(line_count(csv) == 4);
        const double pi2 = dirspec::kPi * dirspec::kPi;
        CHECK(cell(csv, 1, 1) == Catch::Approx(pi2).margin(1e-10));
        CHECK(cell(csv, 2, 1) == Catch::Approx(4.0 * pi2).margin(1e-10));
        CHECK(cell(csv, 3, 1) == Catch::Approx(9.0 * pi2).margin(1e-10));
        CHECK(cell(csv, 1, 2) < 1e-10);  // basis-doubling error estimate
    }
    SECTION("shooting csv has no error column") {
        REQUIRE(run({"spectrum", "--potential", zero_pot(), "--modes", "2", "--method",
                     "shooting", "--out", out}) == 0);
        const std::string csv = read_file(out);
        CHECK(line_at(csv, 0) == "m,lambda");
        CHECK(cell(csv, 1, 1) ==
              Catch::Approx(dirspec::kPi * dirspec::kPi).margin(1e-6));
    }
    SECTION("summary format") {
        REQUIRE(run({"spectrum", "--potential", cos2_pot(), "--modes", "2", "--format",
                     "summary", "--out", out}) == 0);
        const std::string text = read_file(out);
        CHECK(text.rfind("spectrum: trig(cos:2:1)\n", 0) == 0);
        CHECK(text.find("method galerkin") != std::string::npos);
    }
}

TEST_CASE("coeffs command") {
    const std::string out = path_of("coeffs.csv");
    REQUIRE(run({"coeffs", "--potential", cos2_pot(), "--max-m", "6", "--out", out}) == 0);
    const std::string csv = read_file(out);
    CHECK(line_at(csv, 0) == "m,c_m");
    CHECK(line_count(csv) == 8);  // header + c_0..c_6
    CHECK(cell(csv, 1, 1) == 0.0);
    CHECK(cell(csv, 3, 1) == 0.5);
    CHECK(cell(csv, 5, 1) == 0.0);

    REQUIRE(run({"coeffs", "--potential", const5_pot(), "--max-m", "2", "--out", out}) == 0);
    CHECK(cell(read_file(out), 1, 1) == 5.0);
}

TEST_CASE("dump spec round trip") {
    const std::string out = path_of("dump.pot");
    REQUIRE(run({"coeffs", "--potential", cos2_pot(), "--dump-spec", "--out", out}) == 0);
    CHECK(read_file(out) == "type = trig\nterm = cos:2:1\n");

    REQUIRE(run({"spectrum", "--potential", const5_pot(), "--dump-spec", "--out", out}) == 0);
    CHECK(read_file(out) == "type = constant\nvalue = 5\n");

    // a dumped grid re-parses to the same samples
    REQUIRE(run({"coeffs", "--potential", grid_sin_pot(), "--dump-spec", "--out", out}) == 0);
    const dirspec::PotentialSpec a = dirspec::parse_potential_file(grid_sin_pot());
    const dirspec::PotentialSpec b = dirspec::parse_potential_file(out);
    REQUIRE(b.grid_samples.size() == a.grid_samples.size());
    for (std::size_t i = 0; i < a.grid_samples.size(); ++i) {
        CHECK(b.grid_samples[i].x == a.grid_samples[i].x);
        CHECK(b.grid_samples[i].value == a.grid_samples[i].value);
    }
}

TEST_CASE("expand command") {
    const std::string out = path_of("expand.csv");
    REQUIRE(run({"expand", "--potential", cos2_pot(), "--modes", "4", "--cutoff", "64", "--out",
                 out}) == 0);
    const std::string csv = read_file(out);
    CHECK(line_at(csv, 0) == "m,base,c0,minus_c2m,a1,b1,a2,b2,lambda_seed,total,tail_bound");
    CHECK(line_count(csv) == 5);
    CHECK(cell(csv, 1, 2) == 0.0);   // c0
    CHECK(cell(csv, 1, 3) == -0.5);  // -c_2 at m=1
    CHECK(cell(csv, 2, 3) == 0.0);   // -c_4 at m=2
    for (std::size_t m = 1; m <= 4; ++m) {
        const double md = static_cast<double>(m);
        const double base = md * md * dirspec::kPi * dirspec::kPi;
        CHECK(cell(csv, m, 9) == Catch::Approx(base).margin(0.6));
    }
}

TEST_CASE("expand refuses slowly decaying coefficients near a resonance") {
    // the second-order slot at m2 = -2m picks up a nonvanishing coefficient,
    // so the guarded denominator trips and the command reports an input error
    const std::string out = path_of("expand_grid.csv");
    CHECK(run({"expand", "--potential", grid_sin_pot(), "--modes", "1", "--out", out}) == 2);
}

TEST_CASE("exit codes") {
    CHECK(run({"spectrum", "--potential", path_of("missing.pot")}) == 2);
    CHECK(run({"spectrum", "--potential", zero_pot(), "--bogus"}) == 2);
    CHECK(run({"spectrum", "--potential", zero_pot(), "--modes", "0"}) == 2);
    CHECK(run({"spectrum", "--potential", zero_pot(), "--format", "yaml"}) == 2);
    CHECK(run({}) == 2);  // a subcommand is required
    CHECK(run({"--help"}) == 0);

    const std::string bad = path_of("bad.pot");
    write_file(bad, "type = trig\nterm = cos:2:one\n");
    CHECK(run({"coeffs", "--potential", bad}) == 2);
}

TEST_CASE("expectation gate") {
    const std::string out = path_of("ambar.txt");
    CHECK(run({"ambarzumyan", "--potential", zero_pot(), "--m-max", "4", "--expect", "zero",
               "--out", out}) == 0);
    CHECK(run({"ambarzumyan", "--potential", zero_pot(), "--m-max", "4", "--expect", "nonzero",
               "--out", out}) == 1);
    CHECK(run({"ambarzumyan", "--potential", cos2_pot(), "--m-max", "4", "--expect", "nonzero",
               "--out", out}) == 0);
    CHECK(run({"ambarzumyan", "--potential", cos2_pot(), "--m-max", "4", "--expect", "zero",
               "--out", out}) == 1);
    // the report is still written when the expectation fails
    CHECK(read_file(out).rfind("deviation test: trig(cos:2:1)\n", 0) == 0);
    CHECK(read_file(out).find("verdict: nonzero_potential") != std::string::npos);
}

TEST_CASE("compare command") {
    const std::string out_a = path_of("compare_a.csv");
    const std::string out_b = path_of("compare_b.csv");
    SECTION("byte-identical reruns") {
        REQUIRE(run({"compare", "--potential", cos2_pot(), "--modes", "12", "--out", out_a}) ==
                0);
        REQUIRE(run({"compare", "--potential", cos2_pot(), "--modes", "12", "--out", out_b}) ==
                0);
        const std::string csv = read_file(out_a);
        CHECK(csv == read_file(out_b));
        CHECK(line_at(csv, 0) ==
              "m,lambda_solver,lambda_first_order,lambda_lemma1_total,residual_first,"
              "residual_lemma1");
        CHECK(line_count(csv) == 6);  // header + modes 8..12
    }
    SECTION("default window runs modes 8..32") {
        REQUIRE(run({"compare", "--potential", cos2_pot(), "--out", out_a}) == 0);
        CHECK(line_count(read_file(out_a)) == 26);
    }
    SECTION("admissibility gate and override") {
        CHECK(run({"compare", "--potential", cos1_pot(), "--m-min", "4", "--modes", "4", "--out",
                   out_a}) == 2);
        REQUIRE(run({"compare", "--potential", cos1_pot(), "--m-min", "4", "--modes", "4",
                     "--allow-inadmissible", "--format", "summary", "--out", out_a}) == 0);
        CHECK(read_file(out_a).find("admissible: no") != std::string::npos);
    }
}

TEST_CASE("lemmas command") {
    const std::string out = path_of("lemmas.txt");
    REQUIRE(run({"lemmas", "--potential", cos2_pot(), "--m-min", "4", "--modes", "12", "--out",
                 out}) == 0);
    const std::string text = read_file(out);
    CHECK(text.rfind("estimate checks: trig(cos:2:1)\n", 0) == 0);
    CHECK(text.find("  overall: pass\n") != std::string::npos);

    REQUIRE(run({"lemmas", "--potential", cos2_pot(), "--m-min", "4", "--modes", "12", "--format",
                 "csv", "--out", out}) == 0);
    const std::string csv = read_file(out);
    CHECK(line_at(csv, 0) == "m,lambda,a1,b1,a2,b2,a1_ratio");
    CHECK(line_count(csv) == 10);
}
