#include <doctest.h>

#include <random>

#include "perispec/analytic.hpp"
#include "perispec/errors.hpp"
#include "perispec/forward.hpp"
#include "perispec/inverse.hpp"
#include "support.hpp"

using namespace perispec;
using testsupport::close;
using testsupport::max_diff;

TEST_CASE("zero data") {
    const SpectralData S(Order(2), 4);
    CHECK(v_from_s(S).max_abs() == 0.0);
    CHECK(inverse_map(S).max_abs() == 0.0);
    CHECK(p_from_v(VTable(Order(3), 3)).max_abs() == 0.0);
}

TEST_CASE("single datum, m = 1") {
    const cplx s{0.3, -0.1};
    SpectralData S(Order(1), 3);
    S.at(1, 1) = s;
    const auto V = v_from_s(S);
    // -i (1 - w_1) s * s / (1 * 2 - 1 * 2 * (-1))
    CHECK(close(V(1, 1, 2), -I * s * s / 2.0, 1e-16));
    CHECK(close(V(1, 1, 3), -I * s * V(1, 1, 2) / 2.0, 1e-16));

    // first column of the potential inverts the first diagonal solve
    CHECK(close(p_from_v(V)(0, 1), I * s, 1e-16));
}

TEST_CASE("diagonal is copied exactly") {
    std::mt19937_64 rng(12);
    const auto S = testsupport::random_spectral(3, 5, 0.01, rng);
    const auto V = v_from_s(S);
    for (int n = 1; n <= 5; ++n)
        for (int j = 1; j <= 5; ++j) CHECK(V(j, n, n) == S(n, j));
}

TEST_CASE("round trips close") {
    std::mt19937_64 rng(33);
    for (int m = 1; m <= 3; ++m)
        for (int N : {4, 6, 8}) {
            const auto p = testsupport::random_potential(m, N, 0.05, rng);
            const auto fr = forward_map(p);
            CHECK(max_diff(v_from_s(fr.spectral), fr.vtable) <= 1e-12);
            CHECK(max_diff(inverse_map(fr.spectral), p) <= 1e-12);

            const auto S = testsupport::random_spectral(m, N, 0.01, rng);
            CHECK(max_diff(forward_map(inverse_map(S)).spectral, S) <= 1e-12);
        }
}

TEST_CASE("translation equivariance") {
    std::mt19937_64 rng(2);
    const auto S = testsupport::random_spectral(2, 6, 0.01, rng);
    const auto p = inverse_map(S);
    for (cplx a : {cplx(0.3, 0), cplx(0, 1), cplx(0.5, 0.5)})
        CHECK(max_diff(inverse_map(shift_spectral(S, a)), shift_potential(p, a)) <= 1e-9);
}

TEST_CASE("first column is linear in the data") {
    std::mt19937_64 rng(14);
    const auto S = testsupport::random_spectral(2, 4, 0.01, rng);
    SpectralData S3(S.order(), 4);
    for (int n = 1; n <= 4; ++n)
        for (int j = 1; j <= 3; ++j) S3.at(n, j) = 3.0 * S(n, j);
    const auto p = inverse_map(S), p3 = inverse_map(S3);
    for (int g = 0; g < 3; ++g) CHECK(std::abs(p3(g, 1) - 3.0 * p(g, 1)) <= 1e-16);
}

TEST_CASE("single step preconditions") {
    SpectralData S(Order(1), 2);
    S.at(1, 1) = 1.0;
    const VTable V(Order(1), 2);
    CHECK_THROWS_AS(inverse_step(S, V, 1, 2, 1), ContractViolation);
    try {
        (void)inverse_step(S, V, 1, 5, 1);
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        CHECK(e.needed_depth() == 5);
    }
    CHECK_THROWS_AS(v_from_s(S, 2, 1e3), DegenerateError);
    CHECK(v_from_s(S, 6).depth() == 6);
}

TEST_CASE("condition 16 partial sums") {
    CHECK(summability(SpectralData(Order(1), 5)).sum == 0.0);

    SpectralData one(Order(1), 4);
    one.at(3, 1) = 0.5;
    CHECK(summability(one).sum == doctest::Approx(1.5));

    double prev = 0.0;
    for (int N : {4, 8, 16, 32, 48}) {
        SpectralData S(Order(1), N);
        for (int n = 1; n <= N; ++n) S.at(n, 1) = std::ldexp(1.0, -n);
        const auto rep = summability(S);
        CHECK(rep.sum > prev);
        CHECK(rep.sum < 2.0);
        prev = rep.sum;
        // n 2^-n: log slope tends to -ln 2
        REQUIRE(rep.tail_rate.has_value());
        if (N >= 32) CHECK(*rep.tail_rate == doctest::Approx(-std::log(2.0)).epsilon(0.1));
    }
    CHECK(prev == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("sufficient conditions") {
    const auto z = contraction_conditions(SpectralData(Order(1), 3), 1.0);
    CHECK(z.condition_II_p == 0.0);
    CHECK(z.contraction);

    for (double s : {1.0, 1.99, 2.0, 3.0}) {
        SpectralData S(Order(1), 1);
        S.at(1, 1) = s;
        const auto r = contraction_conditions(S, a_m_constant(Order(1), 10).value);
        CHECK(r.condition_I == s);
        CHECK(r.condition_II_p == s / 2.0);
        CHECK(r.contraction == (s < 2.0));
    }

    SpectralData S2(Order(2), 2);
    S2.at(2, 3) = {0.3, 0.4};
    const auto r2 = contraction_conditions(S2, std::sqrt(2.0));
    // S~_2 = 2^2 * 0.5 = 2
    CHECK(r2.condition_I == doctest::Approx(4.0));
    CHECK(r2.condition_II_p == doctest::Approx(4.0 * std::sqrt(2.0) * 2.0 / 3.0));
    CHECK_FALSE(r2.contraction);
}
