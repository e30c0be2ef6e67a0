#include "perispec/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "perispec/errors.hpp"

namespace perispec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_upper(cplx z) {
    if (z.imag() < 0.0)
        throw InputError("determinant is defined on Im z >= 0; got Im z = " +
                         std::to_string(z.imag()));
}

cplx det_of(const SpectralData& S, cplx z, int N) {
    const auto F = f_matrix(S, z, Plane::z, N);
    return linalg::lu_det(linalg::ComplexMatrix::identity(F.rows()) - F);
}

}  // namespace

linalg::ComplexMatrix f_matrix(const SpectralData& S, cplx arg, Plane plane, int N, double tol) {
    const Order& order = S.order();
    const int J = order.J();
    if (N < 0) throw InputError("truncation must be >= 0");
    linalg::ComplexMatrix F(static_cast<std::size_t>(N) * J, static_cast<std::size_t>(N) * J);
    for (int n = 1; n <= std::min(N, S.depth()); ++n)
        for (int j = 1; j <= J; ++j) {
            const cplx s = S(n, j);
            if (s == cplx{}) continue;
            const cplx owj = order.one_minus_omega(j);
            const cplx anj = pole_rate(order, n, j);
            const cplx col_factor =
                plane == Plane::z ? std::exp(I * static_cast<double>(n) * arg) : std::exp(-anj * arg);
            for (int r = 1; r <= N; ++r)
                for (int l = 1; l <= J; ++l) {
                    const cplx wl = order.omega(l);
                    const cplx owl = order.one_minus_omega(l);
                    const cplx den =
                        static_cast<double>(r) * wl * owj - static_cast<double>(n) * owl;
                    if (std::abs(den) < tol)
                        throw DegenerateError("f_matrix: degenerate denominator at (r=" +
                                              std::to_string(r) + ", l=" + std::to_string(l) +
                                              ", n=" + std::to_string(n) + ", j=" +
                                              std::to_string(j) + ")");
                    cplx e = col_factor;
                    if (plane == Plane::t) e *= std::exp(pole_rate(order, r, l) * wl * arg);
                    F((r - 1) * J + (l - 1), (n - 1) * J + (j - 1)) = I * owl * s / den * e;
                }
        }
    return F;
}

cplx det_at(const SpectralData& S, cplx z, int N) {
    check_upper(z);
    return det_of(S, z, N);
}

DeterminantReport det_truncated(const SpectralData& S, cplx z, int n_min, int n_max, double tol) {
    check_upper(z);
    if (n_min < 1 || n_max < n_min) throw InputError("need 1 <= n_min <= n_max");
    DeterminantReport rep;
    rep.z = z;
    for (int N = n_min; N <= n_max; ++N) {
        rep.truncations.push_back(N);
        rep.values.push_back(det_of(S, z, N));
    }
    rep.final = rep.values.back();
    if (rep.values.size() >= 2) {
        const cplx prev = rep.values[rep.values.size() - 2];
        rep.converged = std::abs(rep.final - prev) < tol * (1.0 + std::abs(rep.final));
    } else {
        rep.converged = n_max >= S.depth();
    }
    return rep;
}

DeterminantReport det_adaptive(const SpectralData& S, cplx z, double tol, int n_min, int cap) {
    check_upper(z);
    if (n_min < 1 || cap < n_min) throw InputError("need 1 <= n_min <= cap");
    DeterminantReport rep;
    rep.z = z;
    for (int N = n_min;; N = std::min(2 * N, cap)) {
        const int eff = std::min(N, std::max(S.depth(), 1));
        rep.truncations.push_back(eff);
        rep.values.push_back(det_of(S, z, eff));
        const std::size_t k = rep.values.size();
        if (eff >= S.depth()) {
            rep.converged = true;
            break;
        }
        if (k >= 2 && std::abs(rep.values[k - 1] - rep.values[k - 2]) <
                          tol * (1.0 + std::abs(rep.values[k - 1]))) {
            rep.converged = true;
            break;
        }
        if (N == cap) break;
    }
    rep.final = rep.values.back();
    return rep;
}

namespace {

struct BoundaryTracker {
    const SpectralData& S;
    double tol;
    int max_blocks;
    double min_mod = std::numeric_limits<double>::infinity();

    cplx eval(cplx z) {
        const cplx d = det_adaptive(S, z, tol, std::min(4, max_blocks), max_blocks).final;
        min_mod = std::min(min_mod, std::abs(d));
        return d;
    }

    // Accumulated change of arg D along the segment [za, zb].
    double sweep(cplx za, cplx da, cplx zb, cplx db, int depth) {
        const double step = std::arg(db / da);
        if (std::abs(step) <= std::numbers::pi / 4 || depth >= 24 || da == cplx{} || db == cplx{})
            return step;
        const cplx zm = 0.5 * (za + zb);
        const cplx dm = eval(zm);
        return sweep(za, da, zm, dm, depth + 1) + sweep(zm, dm, zb, db, depth + 1);
    }
};

}  // namespace

int winding_number(const SpectralData& S, double im_max, double tol, double* boundary_min,
                   int max_blocks) {
    if (im_max <= 0.0) throw InputError("im_max must be positive");
    BoundaryTracker tr{S, tol, max_blocks};
    const cplx corners[5] = {{0, 0}, {kTwoPi, 0}, {kTwoPi, im_max}, {0, im_max}, {0, 0}};
    constexpr int kSegments = 64;
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
        cplx za = corners[e];
        cplx da = tr.eval(za);
        for (int s = 1; s <= kSegments; ++s) {
            const cplx zb = corners[e] + (corners[e + 1] - corners[e]) * (double(s) / kSegments);
            const cplx db = tr.eval(zb);
            total += tr.sweep(za, da, zb, db, 0);
            za = zb;
            da = db;
        }
    }
    if (boundary_min) *boundary_min = tr.min_mod;
    return static_cast<int>(std::lround(total / kTwoPi));
}

ScanReport scan_halfplane(const SpectralData& S, const ScanOptions& opt) {
    if (opt.re_steps < 1 || opt.im_steps < 1) throw InputError("grid steps must be >= 1");
    if (opt.im_max <= 0.0) throw InputError("im_max must be positive");
    if (opt.max_blocks < 1) throw InputError("max_blocks must be >= 1");
    ScanReport rep;
    const int nre = opt.re_steps + 1, nim = opt.im_steps + 1;
    rep.grid.resize(static_cast<std::size_t>(nre) * nim);
    for (int b = 0; b < nim; ++b)
        for (int a = 0; a < nre; ++a)
            rep.grid[static_cast<std::size_t>(b) * nre + a].z = {kTwoPi * a / opt.re_steps,
                                                                 opt.im_max * b / opt.im_steps};

    unsigned threads = opt.threads > 0 ? static_cast<unsigned>(opt.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(rep.grid.size()));
    auto work = [&](unsigned worker) {
        for (std::size_t i = worker; i < rep.grid.size(); i += threads) {
            const auto d = det_adaptive(S, rep.grid[i].z, opt.tol, std::min(4, opt.max_blocks),
                                        opt.max_blocks);
            rep.grid[i].D = d.final;
            rep.grid[i].converged = d.converged;
        }
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    rep.min_modulus = std::numeric_limits<double>::infinity();
    for (const auto& g : rep.grid) {
        if (std::abs(g.D) < rep.min_modulus) {
            rep.min_modulus = std::abs(g.D);
            rep.argmin = g.z;
        }
        if (!g.converged) rep.unconverged.push_back(g.z);
    }
    rep.winding = winding_number(S, opt.im_max, opt.tol, &rep.boundary_min, opt.max_blocks);
    rep.zero_free = rep.min_modulus > opt.tol && rep.winding == 0 && rep.boundary_min > opt.tol;
    return rep;
}

std::vector<cplx> solve_at_zero(const SpectralData& S, const std::vector<cplx>& rhs, int N,
                                  double tol) {
    const auto F = f_matrix(S, 0.0, Plane::z, N);
    if (rhs.size() != F.rows())
        throw InputError("rhs length " + std::to_string(rhs.size()) + " does not match N(2m-1) = " +
                         std::to_string(F.rows()));
    const linalg::LuDecomposition lu(linalg::ComplexMatrix::identity(F.rows()) - F);
    const cplx D = lu.determinant();
    if (std::abs(D) <= tol)
        throw DegenerateError("system (E - F(0)) g = rhs is singular: |D(0)| = " +
                              std::to_string(std::abs(D)));
    return lu.solve(rhs);
}

}  // namespace perispec
