#include <doctest.h>

#include <random>
#include <sstream>

#include "perispec/errors.hpp"
#include "perispec/io.hpp"
#include "support.hpp"

using namespace perispec;

namespace {

std::string potential_doc(const std::string& entries, int m = 1, int N = 3) {
    return R"({"schema_version": "1", "mode": "potential", "m": )" + std::to_string(m) +
           R"(, "N": )" + std::to_string(N) + R"(, "entries": [)" + entries + "]}";
}

}  // namespace

TEST_CASE("problem files round-trip bit for bit") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int m = 1; m <= 3; ++m) {
        PotentialCoefficients p(Order(m), 4);
        for (int g = 0; g < p.gamma_count(); ++g)
            for (int n = 1; n <= 4; ++n) p.at(g, n) = {u(rng) * 1e-7, u(rng) * 3e5};
        const auto text = io::serialize_problem(io::from_potential(p));
        CHECK(io::to_potential(io::parse_problem(text)) == p);
        CHECK(io::serialize_problem(io::parse_problem(text)) == text);

        const auto S = testsupport::random_spectral(m, 3, 1.0, rng);
        CHECK(io::to_spectral(io::parse_problem(io::serialize_problem(io::from_spectral(S)))) == S);
    }
}

TEST_CASE("sparse entries default to zero") {
    const auto f = io::parse_problem(potential_doc(R"({"gamma": 0, "n": 2, "re": 0.5, "im": -1})"));
    const auto p = io::to_potential(f);
    CHECK(p(0, 2) == cplx(0.5, -1));
    CHECK(p(0, 1) == cplx{});
    CHECK(p.depth() == 3);
    CHECK_THROWS_AS(io::to_spectral(f), InputError);
}

TEST_CASE("invalid problem files") {
    const char* bad[] = {
        "{",
        "[]",
        R"({"schema_version": "2", "mode": "potential", "m": 1, "N": 1, "entries": []})",
        R"({"schema_version": "1", "mode": "kernel", "m": 1, "N": 1, "entries": []})",
        R"({"schema_version": "1", "mode": "potential", "m": 0, "N": 1, "entries": []})",
        R"({"schema_version": "1", "mode": "potential", "m": 1, "N": 0, "entries": []})",
        R"({"schema_version": "1", "mode": "potential", "m": 1, "N": 1})",
        R"({"schema_version": "1", "mode": "potential", "m": 1.5, "N": 1, "entries": []})",
    };
    for (const char* text : bad) CHECK_THROWS_AS(io::parse_problem(text), InputError);

    CHECK_THROWS_AS(io::parse_problem(potential_doc(R"({"gamma": 1, "n": 1, "re": 0, "im": 0})")), InputError);
    CHECK_THROWS_AS(io::parse_problem(potential_doc(R"({"gamma": 0, "n": 4, "re": 0, "im": 0})")), InputError);
    CHECK_THROWS_AS(io::parse_problem(potential_doc(R"({"j": 1, "n": 1, "re": 0, "im": 0})")), InputError);
    CHECK_THROWS_AS(io::parse_problem(potential_doc(R"({"gamma": 0, "n": 1, "re": "x", "im": 0})")), InputError);
    CHECK_THROWS_AS(io::parse_problem(potential_doc(R"({"gamma": 0, "n": 1, "re": 0})")), InputError);
    CHECK_THROWS_AS(io::parse_problem(potential_doc(
                        R"({"gamma": 0, "n": 1, "re": 0, "im": 0}, {"gamma": 0, "n": 1, "re": 1, "im": 0})")),
                    InputError);
    CHECK_NOTHROW(io::parse_problem(potential_doc(R"({"gamma": 2, "n": 1, "re": 0, "im": 0})", 2)));
    CHECK_THROWS_AS(io::read_problem_file("/nonexistent/problem.json"), InputError);
}

TEST_CASE("csv quoting") {
    std::ostringstream os;
    io::CsvWriter w(os);
    w.row({"a", "b,c", "say \"hi\"", "x\ny"});
    w.row({"1", ""});
    CHECK(os.str() == "a,\"b,c\",\"say \"\"hi\"\"\",\"x\ny\"\n1,\n");
}

TEST_CASE("shortest round-trip formatting") {
    for (double v : {0.1, -1e-300, 1.0 / 3.0, 6.02214076e23, 0.0}) CHECK(std::stod(io::format_double(v)) == v);
    CHECK(io::format_double(0.5) == "0.5");
}

TEST_CASE("transformation table output") {
    VTable V(Order(1), 2);
    V.at(1, 1, 2) = {0.25, -1};
    const auto text = io::serialize_vtable(V);
    CHECK(text.find("\"alpha\": 2") != std::string::npos);
    CHECK(text.find("-1.0") != std::string::npos);
}
