#include <doctest.h>

#include <numbers>
#include <random>

#include "perispec/analytic.hpp"
#include "perispec/errors.hpp"
#include "perispec/fredholm.hpp"
#include "support.hpp"

using namespace perispec;
using testsupport::close;

namespace {

SpectralData rank_one(cplx s) {
    SpectralData S(Order(1), 1);
    S.at(1, 1) = s;
    return S;
}

}  // namespace

TEST_CASE("block entries, m = 1") {
    SpectralData S(Order(1), 3);
    S.at(1, 1) = 0.2;
    S.at(3, 1) = {0.1, 0.3};
    const cplx z{0.5, 0.7};
    const auto F = f_matrix(S, z, Plane::z, 4);
    REQUIRE(F.rows() == 4);
    for (int r = 1; r <= 4; ++r)
        for (int n = 1; n <= 4; ++n) {
            const cplx ref = -I * S.value_or_zero(n, 1) * std::exp(I * double(n) * z) / double(n + r);
            CHECK(close(F(r - 1, n - 1), ref, 1e-16));
        }
}

TEST_CASE("determinant basics") {
    CHECK(det_at(SpectralData(Order(2), 3), {1.0, 2.0}, 5) == cplx(1.0));

    std::mt19937_64 rng(41);
    const auto S = testsupport::random_spectral(2, 5, 0.5, rng);
    CHECK(std::abs(det_at(S, {0.3, 30.0}, 5) - 1.0) <= 1e-12);

    const cplx z{0.8, 0.4};
    CHECK(close(det_at(S, z, 5), det_at(S, z + 2 * std::numbers::pi, 5), 1e-12));
    CHECK_THROWS_AS(det_at(S, {0.0, -0.1}, 5), InputError);
    CHECK_THROWS_AS(det_adaptive(S, {0.0, -0.1}, 1e-8), InputError);
}

TEST_CASE("rank-one closed form") {
    for (cplx s : {cplx(0.8), cplx(0, 1.5), cplx(-3, 1)})
        for (cplx z : {cplx(0, 0), cplx(1.2, 0.3), cplx(4.0, 2.0)}) {
            const cplx ref = 1.0 + I * s * std::exp(I * z) / 2.0;
            CHECK(close(det_at(rank_one(s), z, 6), ref, 1e-12));
            const auto rep = det_adaptive(rank_one(s), z, 1e-10);
            CHECK(rep.converged);
            CHECK(close(rep.final, ref, 1e-12));
            CHECK(rep.convention == "det(E−F)");
        }
}

TEST_CASE("both planes give the same determinant") {
    std::mt19937_64 rng(43);
    for (int m = 1; m <= 3; ++m) {
        const auto S = testsupport::random_spectral(m, 4, 0.3, rng);
        for (double t : {0.0, 0.6, 2.0}) {
            const auto F = f_matrix(S, t, Plane::t, 4);
            const cplx Dt = linalg::lu_det(linalg::ComplexMatrix::identity(F.rows()) - F);
            CHECK(close(Dt, det_at(S, {0.0, t}, 4), 1e-12));
        }
    }
}

TEST_CASE("truncations settle geometrically") {
    SpectralData S(Order(1), 40);
    for (int n = 1; n <= 40; ++n) S.at(n, 1) = 0.5 * std::ldexp(1.0, -n);
    const auto rep = det_truncated(S, {0.3, 0.0}, 1, 32, 1e-12);
    REQUIRE(rep.values.size() == 32);
    CHECK(rep.converged);
    for (std::size_t k = 2; k + 1 < rep.values.size(); ++k) {
        const double d1 = std::abs(rep.values[k] - rep.values[k - 1]);
        const double d0 = std::abs(rep.values[k - 1] - rep.values[k - 2]);
        if (d0 > 1e-14) CHECK(d1 <= 0.75 * d0);
    }
    CHECK(std::abs(rep.values[31] - rep.values[30]) <= 1e-10);

    const auto ad = det_adaptive(S, {0.3, 0.0}, 1e-12);
    CHECK(ad.converged);
    CHECK(close(ad.final, rep.final, 1e-11));
}

TEST_CASE("linear system at z = 0 matches the resolvent vector") {
    std::mt19937_64 rng(47);
    for (int m = 1; m <= 2; ++m) {
        const auto S = testsupport::random_spectral(m, 5, 0.3, rng);
        const int N = 5;
        const auto F = f_matrix(S, 0.0, Plane::t, N);
        std::vector<cplx> rhs(F.rows());
        for (std::size_t r = 0; r < F.rows(); ++r)
            for (std::size_t c = 0; c < F.cols(); ++c) rhs[r] += F(r, c);
        const auto g = solve_at_zero(S, rhs, N);
        const auto k = k_vector(S, 0.0, N);
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(close(g[i], k[i], 1e-12));
        CHECK_THROWS_AS(solve_at_zero(S, std::vector<cplx>(3), N), InputError);
    }
    // D(0) = 1 + i s / 2 vanishes at s = 2i
    CHECK_THROWS_AS(solve_at_zero(rank_one({0, 2}), {1.0}, 1), DegenerateError);
}

TEST_CASE("zero scan") {
    ScanOptions opt;
    opt.re_steps = 32;
    opt.im_steps = 10;
    opt.im_max = 5;
    opt.threads = 2;

    const auto free = scan_halfplane(rank_one(1.0), opt);
    CHECK(free.zero_free);
    CHECK(free.winding == 0);
    CHECK(free.min_modulus >= 0.5 - 1e-12);
    CHECK(free.grid.size() == 33u * 11u);
    CHECK(free.unconverged.empty());

    // zero of 1 + i s e^{iz}/2 at z = pi + i
    const cplx s = -2.0 * I * std::numbers::e;
    const auto planted = scan_halfplane(rank_one(s), opt);
    CHECK_FALSE(planted.zero_free);
    CHECK(planted.winding == 1);
    CHECK(std::abs(det_at(rank_one(s), {std::numbers::pi, 1.0}, 1)) <= 1e-12);

    opt.threads = 1;
    const auto serial = scan_halfplane(rank_one(1.0), opt);
    for (std::size_t i = 0; i < serial.grid.size(); ++i) CHECK(serial.grid[i].D == free.grid[i].D);

    opt.max_blocks = 0;
    CHECK_THROWS_AS(scan_halfplane(rank_one(1.0), opt), InputError);
}
