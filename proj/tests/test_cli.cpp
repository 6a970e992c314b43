#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "g1m/io.hpp"
#include "g1m/moduli.hpp"

using namespace g1m;

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string tmp = "cli_out.tmp";
    std::string cmd = std::string(G1M_CLI_BIN) + " " + args + " > " + tmp + " 2> cli_err.tmp";
    int rc = std::system(cmd.c_str());
    std::ifstream in(tmp, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

}  // namespace

TEST_CASE("ideal text and JSON formats round-trip") {
    auto I = moduli::u_n_reduced(6).ideal;
    std::string txt = io::ideal_to_text(I);
    auto J = io::ideal_from_text(txt);
    REQUIRE(J.gens.size() == I.gens.size());
    for (size_t k = 0; k < I.gens.size(); ++k) {
        CHECK(J.gens[k].first == I.gens[k].first);
        CHECK(J.gens[k].second == I.gens[k].second);
    }
    auto K = io::ideal_from_json(io::ideal_to_json(I));
    for (size_t k = 0; k < I.gens.size(); ++k) CHECK(K.gens[k].second == I.gens[k].second);

    // over a prime field too
    auto Ip = moduli::u_n_reduced(5, Field::prime(101)).ideal;
    auto Jp = io::ideal_from_text(io::ideal_to_text(Ip));
    for (size_t k = 0; k < Ip.gens.size(); ++k) CHECK(Jp.gens[k].second == Ip.gens[k].second);
}

TEST_CASE("emit: deterministic byte-identical output") {
    auto a = run_cli("emit un-reduced --n 6 --format cas-text");
    auto b = run_cli("emit un-reduced --n 6 --format cas-text");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    // 7 generators for n = 6
    int commas = 0;
    for (char c : a.out)
        if (c == ',') ++commas;
    CHECK(commas == 6);

    auto p = run_cli("emit plucker --format cas-text");
    CHECK(p.code == 0);
    int lines = 0;
    for (char c : p.out)
        if (c == '\n') ++lines;
    CHECK(lines == 5);

    auto c3 = run_cli("emit curve --n 3 --format cas-text");
    CHECK(c3.code == 0);
    CHECK(c3.out.find("x2*x3^2") != std::string::npos);

    auto ch = run_cli("emit curve-homog --n 3 --format cas-text");
    CHECK(ch.out.find("T^3") != std::string::npos);

    auto ea = run_cli("emit e-algebra --n 2");
    CHECK(ea.code == 0);
    CHECK(ea.out.find("rel A1*B1*A1 = 0") != std::string::npos);

    // parsing what emit wrote
    auto txt = run_cli("emit un-full --n 5 --format ideal-text");
    auto I = io::ideal_from_text(txt.out);
    CHECK(I.gens.size() == moduli::u_n_full(5).ideal.gens.size());

    // golden bytes for the printed format
    auto g5 = run_cli("emit un-reduced --n 5 --format ideal-text");
    CHECK(g5.out ==
          "ring Q vars a:1,c:2,cb:2,c_4:1,cb_4:1,c_5:1,cb_5:1,c_4_5:1 order wdegrevlex prec 0,1,2,3,4,5,6,7\n"
          "gen pair_c_4_5 = c_5*c_4_5 - c_5*cb_5 - c_5^2 - cb_4*c_5 - c_4*c_4_5 + c - a*c_5\n"
          "gen pair_cb_4_5 = -cb_5*c_4_5 + cb_4*c_4_5 - cb_4*c_5 - cb_4^2 - c_4*cb_4 + cb - a*cb_4\n");
}

TEST_CASE("verify: exit codes and reports") {
    auto ok = run_cli("verify wheel --n 5 --no-millis --quiet");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("\"status\": \"pass\"") != std::string::npos);
    CHECK(ok.out.find("millis") == std::string::npos);

    auto usage = run_cli("verify no-such-check --n 5 --quiet");
    CHECK(usage.code == 2);

    auto multi = run_cli("verify wheel charp-fields --n 4..5 --no-millis --quiet");
    CHECK(multi.code == 0);

    // reproducible reports
    auto r1 = run_cli("verify gr-sections --seed 7 --trials 2 --no-millis --quiet");
    auto r2 = run_cli("verify gr-sections --seed 7 --trials 2 --no-millis --quiet");
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
}

TEST_CASE("verify: every CLI check path runs end-to-end on n = 5") {
    // small-n smoke of each named check (blowup and components need n >= 6)
    for (std::string name :
         {"diamond-symbolic", "diamond-numeric", "hilbert-series", "fiber-hilbert", "substitution-iso",
          "tangent-weights", "sn-action", "wheel", "charp-fields", "c1n-membership", "gr-intersection",
          "gr-sections", "ealgebra-dim", "hochschild-table", "hh1-vanishing", "ainf-trivial", "rescale-law",
          "stabilization"}) {
        auto r = run_cli("verify " + name + " --n 5 --D 4 --trials 2 --quiet --no-millis");
        CAPTURE(name);
        CHECK(r.code == 0);
    }
    auto r6 = run_cli("verify blowup-points component-ideals --n 6 --quiet --no-millis");
    CHECK(r6.code == 0);
}

TEST_CASE("bench and suite subcommand paths run") {
    CHECK(run_cli("bench --n 5").code == 0);
    auto suite = run_cli("verify --suite paper --quiet --no-millis");
    CHECK(suite.code == 0);
    auto report = nlohmann::json::parse(suite.out);
    CHECK(report.size() > 100);
    for (const auto& v : report) CHECK(v.at("status") == "pass");
}

TEST_CASE("hochschild subcommand prints the table") {
    auto r = run_cli("hochschild --n 3 --j 2 --r-max 3");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"1\": 1") != std::string::npos);
    CHECK(r.out.find("\"2\": 2") != std::string::npos);
    CHECK(r.out.find("\"3\": 1") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("emit no-such-target").code == 2);
    CHECK(run_cli("nonsense").code == 2);
    CHECK(run_cli("verify").code == 2);
}
