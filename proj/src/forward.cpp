#include "perispec/forward.hpp"

#include <cmath>
#include <string>

#include "perispec/errors.hpp"
#include "perispec/linalg.hpp"

namespace perispec {

namespace {

double sign_m(const Order& order) { return order.m() % 2 == 0 ? 1.0 : -1.0; }

void require_same_order(const PotentialCoefficients& p, const VTable& V) {
    if (!(p.order() == V.order()))
        throw ContractViolation("potential and table carry different orders");
}

// Convolution of the potentials against completed columns 1..alpha-1,
// projected on k^gamma; shared by the diagonal solve and its inverse.
cplx convolution_term(const PotentialCoefficients& p, const VTable& V,
                      const polyalg::DCoeffs& d, int alpha, int gamma) {
    const Order& order = V.order();
    cplx acc{};
    for (int nu = gamma + 1; nu <= order.degree() - 2; ++nu)
        for (int s = 1; s < alpha; ++s) {
            const cplx pv = p.value_or_zero(nu, alpha - s);
            if (pv == cplx{}) continue;
            for (int j = 1; j <= order.J(); ++j)
                for (int n = 1; n <= s; ++n) acc += d.b(n, s, nu, j)[gamma] * pv * V(j, n, s);
        }
    return acc;
}

}  // namespace

cplx offdiag_step(const PotentialCoefficients& p, const VTable& V, int n, int alpha, int j,
                  double tol) {
    require_same_order(p, V);
    const Order& order = V.order();
    if (n < 1 || n >= alpha || alpha > V.depth())
        throw ContractViolation("offdiag_step: need 1 <= n < alpha <= depth, got n=" +
                                std::to_string(n) + ", alpha=" + std::to_string(alpha));
    if (V.completed_columns() < alpha - 1)
        throw ContractViolation("offdiag_step: columns below " + std::to_string(alpha) +
                                " are not complete");

    const cplx a = pole_rate(order, n, j);
    const int d = order.degree();
    const cplx left = std::pow(static_cast<double>(alpha) - a, d) - std::pow(a, d);
    const double scale = std::pow(alpha / std::abs(order.one_minus_omega(j)), d);
    if (std::abs(left) <= tol * scale)
        throw DegenerateError("resonant index (n=" + std::to_string(n) + ", alpha=" +
                              std::to_string(alpha) + ", j=" + std::to_string(j) + ")");

    cplx acc{};
    for (int s = n; s < alpha; ++s) {
        const cplx v = V(j, n, s);
        if (v == cplx{}) continue;
        const cplx base = I * (static_cast<double>(s) - a);
        cplx pw = 1.0;
        for (int g = 0; g < order.J(); ++g) {
            acc += pw * p.value_or_zero(g, alpha - s) * v;
            pw *= base;
        }
    }
    return -acc / left;
}

std::vector<cplx> diag_solve(const PotentialCoefficients& p, const VTable& V, int alpha,
                             const polyalg::DCoeffs& d, double cond_limit) {
    require_same_order(p, V);
    const Order& order = V.order();
    if (alpha < 1 || alpha > V.depth() || alpha > d.depth())
        throw ContractViolation("diag_solve: column " + std::to_string(alpha) + " out of range");
    if (V.completed_columns() < alpha - 1)
        throw ContractViolation("diag_solve: columns below " + std::to_string(alpha) +
                                " are not complete");

    const int J = order.J();
    const double sg = sign_m(order);
    linalg::ComplexMatrix A(J, J);
    std::vector<cplx> b(J);
    for (int g = 0; g < J; ++g) {
        cplx rhs = -sg * p.value_or_zero(g, alpha);
        for (int j = 1; j <= J; ++j) {
            A(g, j - 1) = d.a(alpha, alpha, j)[g];
            for (int n = 1; n < alpha; ++n) rhs -= d.a(n, alpha, j)[g] * V(j, n, alpha);
        }
        rhs -= sg * convolution_term(p, V, d, alpha, g);
        b[g] = rhs;
    }

    const linalg::LuDecomposition lu(A);
    const double cond = lu.condition_estimate(A.norm1());
    if (!(cond <= cond_limit))
        throw DegenerateError("diagonal system singular at alpha=" + std::to_string(alpha) +
                              " (condition estimate " + std::to_string(cond) + ")");
    return lu.solve(b);
}

std::vector<cplx> diag_solve(const PotentialCoefficients& p, const VTable& V, int alpha,
                             double cond_limit) {
    return diag_solve(p, V, alpha, polyalg::DCoeffs(V.order(), alpha), cond_limit);
}

ForwardResult forward_map(const PotentialCoefficients& p, double tol) {
    const Order& order = p.order();
    const int N = p.depth();
    VTable V(order, N);
    const polyalg::DCoeffs d(order, N);
    for (int alpha = 1; alpha <= N; ++alpha) {
        for (int j = 1; j <= order.J(); ++j)
            for (int n = 1; n < alpha; ++n) V.at(j, n, alpha) = offdiag_step(p, V, n, alpha, j, tol);
        const auto diag = diag_solve(p, V, alpha, d);
        for (int j = 1; j <= order.J(); ++j) V.at(j, alpha, alpha) = diag[j - 1];
        V.mark_complete(alpha);
    }
    SpectralData S(order, N);
    for (int n = 1; n <= N; ++n)
        for (int j = 1; j <= order.J(); ++j) S.at(n, j) = V(j, n, n);
    return {std::move(V), std::move(S)};
}

PotentialCoefficients q_from_p(const PotentialCoefficients& p) {
    PotentialCoefficients q(p.order(), p.depth());
    cplx factor = sign_m(p.order());
    for (int g = 0; g < p.gamma_count(); ++g) {
        for (int n = 1; n <= p.depth(); ++n) q.at(g, n) = factor * p(g, n);
        factor *= -I;
    }
    return q;
}

PotentialCoefficients p_from_q(const PotentialCoefficients& q) {
    PotentialCoefficients p(q.order(), q.depth());
    cplx factor = sign_m(q.order());  // inverse of (-1)^m (-i)^gamma is (-1)^m i^gamma
    for (int g = 0; g < q.gamma_count(); ++g) {
        for (int n = 1; n <= q.depth(); ++n) p.at(g, n) = factor * q(g, n);
        factor *= I;
    }
    return p;
}

}  // namespace perispec
