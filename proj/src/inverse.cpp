#include "perispec/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "perispec/errors.hpp"
#include "perispec/polyalg.hpp"

namespace perispec {

cplx inverse_step(const SpectralData& S, const VTable& V, int n, int alpha, int j, double tol) {
    const Order& order = V.order();
    if (!(order == S.order())) throw ContractViolation("spectral data and table orders differ");
    if (n < 1 || alpha <= n) throw ContractViolation("inverse_step: need 1 <= n < alpha");
    if (alpha > V.depth())
        throw TruncationError("inverse_step: column " + std::to_string(alpha) +
                                  " beyond table depth " + std::to_string(V.depth()),
                              alpha);
    const int beta = alpha - n;
    if (V.completed_columns() < beta)
        throw ContractViolation("inverse_step: column " + std::to_string(beta) +
                                " is not complete");

    const cplx s = S.value_or_zero(n, j);
    if (s == cplx{}) return {};
    const cplx wj = order.omega(j);
    const cplx owj = order.one_minus_omega(j);
    cplx acc{};
    for (int l = 1; l <= order.J(); ++l) {
        const cplx owl = order.one_minus_omega(l);
        for (int r = 1; r <= beta; ++r) {
            const cplx den = static_cast<double>(r) * owj - static_cast<double>(n) * owl * wj;
            if (std::abs(den) < tol)
                throw DegenerateError("degenerate denominator at (n=" + std::to_string(n) +
                                      ", j=" + std::to_string(j) + ", r=" + std::to_string(r) +
                                      ", l=" + std::to_string(l) + ")");
            acc += V(l, r, beta) / den;
        }
    }
    return -I * owj * s * acc;
}

VTable v_from_s(const SpectralData& S, double tol) { return v_from_s(S, S.depth(), tol); }

VTable v_from_s(const SpectralData& S, int depth, double tol) {
    const Order& order = S.order();
    VTable V(order, depth);
    for (int alpha = 1; alpha <= depth; ++alpha) {
        for (int j = 1; j <= order.J(); ++j) {
            V.at(j, alpha, alpha) = S.value_or_zero(alpha, j);
            for (int n = 1; n < alpha; ++n) V.at(j, n, alpha) = inverse_step(S, V, n, alpha, j, tol);
        }
        V.mark_complete(alpha);
    }
    return V;
}

PotentialCoefficients p_from_v(const VTable& V) {
    const Order& order = V.order();
    const int N = V.depth();
    const double sg = order.m() % 2 == 0 ? 1.0 : -1.0;
    const polyalg::DCoeffs d(order, N);
    PotentialCoefficients p(order, N);
    for (int alpha = 1; alpha <= N; ++alpha)
        for (int g = order.J() - 1; g >= 0; --g) {
            cplx direct{};
            for (int j = 1; j <= order.J(); ++j)
                for (int n = 1; n <= alpha; ++n) direct += d.a(n, alpha, j)[g] * V(j, n, alpha);
            cplx conv{};
            for (int nu = g + 1; nu <= order.degree() - 2; ++nu)
                for (int s = 1; s < alpha; ++s) {
                    const cplx pv = p(nu, alpha - s);
                    if (pv == cplx{}) continue;
                    for (int j = 1; j <= order.J(); ++j)
                        for (int n = 1; n <= s; ++n) conv += d.b(n, s, nu, j)[g] * pv * V(j, n, s);
                }
            p.at(g, alpha) = -sg * direct - conv;
        }
    return p;
}

PotentialCoefficients inverse_map(const SpectralData& S, double tol) {
    return p_from_v(v_from_s(S, tol));
}

SummabilityReport summability(const SpectralData& S) {
    SummabilityReport rep;
    rep.terms.reserve(S.depth());
    for (int n = 1; n <= S.depth(); ++n) {
        const double t = n * S.tilde(n);
        rep.terms.push_back(t);
        rep.sum += t;
    }

    std::vector<std::pair<double, double>> pts;
    const int start = S.depth() - std::max(2, S.depth() / 4);
    for (int n = std::max(1, start + 1); n <= S.depth(); ++n)
        if (rep.terms[n - 1] > 0.0) pts.emplace_back(n, std::log(rep.terms[n - 1]));
    if (pts.size() >= 2) {
        double mx = 0, my = 0;
        for (auto [x, y] : pts) mx += x, my += y;
        mx /= pts.size();
        my /= pts.size();
        double sxy = 0, sxx = 0;
        for (auto [x, y] : pts) sxy += (x - mx) * (y - my), sxx += (x - mx) * (x - mx);
        rep.tail_rate = sxy / sxx;
    }
    return rep;
}

ContractionReport contraction_conditions(const SpectralData& S, double a_m) {
    ContractionReport rep;
    rep.a_m = a_m;
    double harmonic = 0.0;
    for (int n = 1; n <= S.depth(); ++n) {
        const double t = S.tilde(n);
        rep.condition_I += n * t;
        harmonic += t / (n + 1);
    }
    rep.condition_II_p = std::pow(4.0, S.order().m() - 1) * a_m * harmonic;
    rep.contraction = rep.condition_II_p < 1.0;
    return rep;
}

}  // namespace perispec
