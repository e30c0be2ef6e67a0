#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "perispec/cli.hpp"
#include "perispec/forward.hpp"
#include "perispec/io.hpp"

using namespace perispec;
using nlohmann::json;

namespace {

std::string fixture(const char* name) { return std::string(PERISPEC_FIXTURES) + "/" + name; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / (std::string("perispec_test_") + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("forward writes spectral data") {
    const auto r = run({"forward", "--input", fixture("single_mode_m1.json")});
    REQUIRE(r.code == cli::kOk);
    const auto S = io::to_spectral(io::parse_problem(r.out));
    CHECK(std::abs(S(1, 1) - cplx(0, -0.1)) <= 1e-15);

    // the same run twice gives identical bytes
    CHECK(run({"forward", "--input", fixture("single_mode_m1.json")}).out == r.out);
}

TEST_CASE("forward can emit the transformation table") {
    const auto vpath = temp_path("v.json");
    const auto opath = temp_path("s.json");
    const auto r = run({"forward", "--input", fixture("small_m2.json"), "--output", opath, "--emit-v", vpath});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.empty());
    const auto v = json::parse(slurp(vpath));
    CHECK(v["kind"] == "vtable");
    CHECK(v["m"] == 2);
    CHECK(io::parse_problem(slurp(opath)).mode == io::ProblemMode::spectral);
    std::filesystem::remove(vpath);
    std::filesystem::remove(opath);
}

TEST_CASE("inverse writes a potential and a report") {
    const auto rpath = temp_path("inv_report.json");
    const auto r = run({"inverse", "--input", fixture("rank_one_m1.json"), "--report", rpath});
    REQUIRE(r.code == cli::kOk);
    const auto p = io::to_potential(io::parse_problem(r.out));
    CHECK(std::abs(p(0, 1) - cplx(0, 0.8)) <= 1e-15);
    const auto rep = json::parse(slurp(rpath));
    CHECK(rep.contains("summability"));
    CHECK(rep["contraction"]["contraction"] == true);
    std::filesystem::remove(rpath);
}

TEST_CASE("determinant scan") {
    const auto r = run({"det", "--input", fixture("planted_zero_m1.json"), "--re-steps", "16", "--im-steps", "4",
                        "--im-max", "3", "--threads", "1"});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.rfind("re(z),im(z),re(D),im(D),|D|\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 17 * 5);
    const auto verdict = json::parse(r.err);
    CHECK(verdict["winding"] == 1);
    CHECK(verdict["zero_free"] == false);

    const auto slow = run({"det", "--input", fixture("slow_spectral_m1.json"), "--re-steps", "4", "--im-steps", "2",
                           "--max-blocks", "8", "--tol", "1e-14"});
    CHECK(slow.code == cli::kNonConvergence);
}

TEST_CASE("verify scorecard") {
    const auto rpath = temp_path("verify.json");
    const auto r = run({"verify", "--input", fixture("small_m2.json"), "--report", rpath});
    CHECK(r.code == cli::kOk);
    const auto card = json::parse(slurp(rpath));
    CHECK(card["all_pass"] == true);
    CHECK(card["checks"].size() >= 7);
    std::filesystem::remove(rpath);

    const auto strict = run({"verify", "--input", fixture("small_m2.json"), "--ode-ratio", "1e-9"});
    CHECK(strict.code == cli::kVerificationFailed);
}

TEST_CASE("error exit codes") {
    CHECK(run({"forward", "--input", fixture("malformed.json")}).code == cli::kInputError);
    CHECK(run({"forward", "--input", fixture("duplicate_entry.json")}).code == cli::kInputError);
    CHECK(run({"forward", "--input", fixture("out_of_range.json")}).code == cli::kInputError);
    CHECK(run({"forward", "--input", fixture("rank_one_m1.json")}).code == cli::kInputError);
    CHECK(run({"forward"}).code == cli::kInputError);
    CHECK(run({"bogus"}).code == cli::kInputError);
    CHECK(run({"forward", "--input", fixture("single_mode_m1.json"), "--tol", "1e30"}).code == cli::kDegenerate);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("verification battery in process") {
    PotentialCoefficients p(Order(1), 4);
    p.at(0, 1) = 0.1;
    p.at(0, 2) = {0.02, -0.01};
    const auto checks = cli::verify_potential(p, {});
    for (const auto& c : checks) {
        INFO(c.name, ": ", c.value, " vs ", c.threshold, " ", c.detail);
        CHECK(c.pass);
    }
}
