#include "doctest.h"
#include "commands.hpp"
#include "figure_presets.hpp"
#include "kempner/errors.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace kempner;
using namespace kempner::cli;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(KEMPNER_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        out.append(buf.data(), n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

long count_lines(const std::string& s) {
    long n = 0;
    for (char c : s)
        if (c == '\n')
            ++n;
    return n;
}

} // namespace

TEST_CASE("figure presets match the published captions") {
    struct Expect {
        int id;
        long base;
        std::vector<int> digits;
        double s;
        long m_min, m_max;
        Scaling scaling;
    };
    const std::vector<Expect> want = {
        {1, 2, {1}, 1.0, 20, 12800, Scaling::kappa_linear},
        {2, 3, {2}, 1.0, 20, 50000, Scaling::kappa_linear},
        {3, 10, {9}, 1.0, 20, 100000, Scaling::kappa_linear},
        {4, 3, {0, 2}, 1.0, 21, 27000, Scaling::kappa_linear},
        {5, 3, {1, 2}, 1.0, 21, 9000, Scaling::kappa_linear},
        {6, 2, {0, 1}, 2.0, 16, 10000, Scaling::kappa_pochhammer},
        {7, 10, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 3.0, 1, 10000, Scaling::kappa_pochhammer},
        {8, 8, {0, 1, 3, 5}, 1.0, 1, 10000, Scaling::kappa_linear},
        {9, 8, {0, 1, 3, 5}, 3.0, 1, 10000, Scaling::kappa_pochhammer},
    };
    REQUIRE(figure_presets().size() == 9);
    for (const auto& e : want) {
        const auto& p = figure_preset(e.id);
        CHECK(p.base == e.base);
        CHECK(p.digits == e.digits);
        CHECK(p.s == e.s);
        CHECK(p.m_min == e.m_min);
        CHECK(p.m_max == e.m_max);
        CHECK(p.scaling == e.scaling);
    }
    CHECK_THROWS_AS(figure_preset(0), validation_error);
    CHECK_THROWS_AS(figure_preset(10), validation_error);
}

TEST_CASE("moments command: header, known values, exit codes") {
    auto r = run("moments --base 10 --digits 0,1,2,3,4,5,6,7,8 --s 1 --m-max 3 --scale linear");
    CHECK(r.exit_code == 0);
    std::istringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "m,logb_m,scaled_moment,profile,fourier_profile,residual");
    std::getline(ss, line);
    CHECK(line.substr(0, 2) == "0,");
    CHECK(line.find("1.0000000000000000e+01") != std::string::npos);  // u_0 = 10

    auto r2 = run("moments --base 2 --digits 0,1 --s 2 --m-max 1");
    CHECK(r2.exit_code == 0);
    CHECK(r2.out.find("3.3333333333333333e-01") != std::string::npos);  // u_1 = 1/3

    CHECK(run("moments --base 2 --s 2 --m-max 1").exit_code == 2);  // missing --digits
    CHECK(run("moments --base 2 --digits 0,1 --s 1 --m-max 1").exit_code == 2);  // s = s0
}

TEST_CASE("moments command is deterministic") {
    const char* args = "moments --base 3 --digits 0,2 --s 1 --m-max 400 --scale linear "
                       "--precision-bits 128";
    auto a = run(args);
    auto b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(count_lines(a.out) == 402);  // header + m = 0..400
}

TEST_CASE("figure command writes CSV and plot script; bad ids exit 2") {
    std::string dir = "/tmp/kempner_fig_test";
    std::string cleanup = "rm -rf " + dir + " && mkdir -p " + dir;
    REQUIRE(std::system(cleanup.c_str()) == 0);
    auto r = run("figure --id 1 --out " + dir);
    CHECK(r.exit_code == 0);
    std::ifstream csv(dir + "/fig1.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "m,logb_m,scaled_moment,profile,fourier_profile,residual");
    long rows = 0;
    std::string line;
    while (std::getline(csv, line))
        ++rows;
    CHECK(rows == 12800 - 20 + 1);
    std::ifstream plot(dir + "/fig1.gnuplot");
    REQUIRE(plot.good());
    std::stringstream pbuf;
    pbuf << plot.rdbuf();
    CHECK(pbuf.str().find("fig1.csv") != std::string::npos);

    CHECK(run("figure --id 0").exit_code == 2);
    CHECK(run("figure --id 10").exit_code == 2);
}

TEST_CASE("figure 2 covers the full published range") {
    std::string dir = "/tmp/kempner_fig2_test";
    REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);
    auto r = run("figure --id 2 --out " + dir);
    CHECK(r.exit_code == 0);
    std::ifstream csv(dir + "/fig2.csv");
    REQUIRE(csv.good());
    long rows = -1;  // discount header
    std::string line;
    while (std::getline(csv, line))
        ++rows;
    CHECK(rows == 49981);
}

TEST_CASE("average command prints the estimate and target") {
    auto r = run("average --base 8 --digits 0,1,3,5 --s 1 --scale linear --window 128 "
                 "--weighting left --extrapolate --constants " KEMPNER_DATA_DIR
                 "/kempner_constants.txt");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("average over m in (128, 1024]") != std::string::npos);
    CHECK(r.out.find("extrapolated:") != std::string::npos);
    CHECK(r.out.find("asymptotic average target: 1.02581877152") != std::string::npos);

    CHECK(run("average --base 8 --digits 0,1,3,5 --s 1 --window 125 --period 2")
              .exit_code == 2);
    // window start not divisible by the base: no previous period available
    CHECK(run("average --base 8 --digits 0,1,3,5 --s 1 --window 100 --extrapolate")
              .exit_code == 2);
    CHECK(run("average --base 8 --digits 0,1,3,5 --s 1").exit_code == 2);
}

TEST_CASE("check subcommand suites") {
    CHECK(run("check periodicity").exit_code == 0);
    CHECK(run("check oracle").exit_code == 0);
    CHECK(run("check prop1").exit_code == 0);
    CHECK(run("check fourier").exit_code == 0);
    CHECK(run("check nosuch").exit_code == 2);
}
