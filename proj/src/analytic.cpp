#include "perispec/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "perispec/errors.hpp"
#include "perispec/fredholm.hpp"
#include "perispec/linalg.hpp"

namespace perispec {

namespace {

cplx ipow(cplx base, int e) {
    cplx r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

void check_pole(cplx den, int n, int j, double tol) {
    if (std::abs(den) < tol)
        throw DegenerateError("evaluation point within " + std::to_string(tol) +
                              " of the pole (n=" + std::to_string(n) + ", j=" + std::to_string(j) +
                              ")");
}

void check_shift(cplx a) {
    if (a.imag() < 0.0) throw InputError("shift requires Im a >= 0");
}

}  // namespace

// ---------------------------------------------------------------------------

cplx ExpSum::operator()(cplx t) const {
    cplx acc{};
    for (const auto& e : terms_) acc += e.coef * std::exp(e.rate * t);
    return acc;
}

ExpSum ExpSum::derivative(int order) const {
    ExpSum out;
    for (const auto& e : terms_) out.add(e.coef * ipow(e.rate, order), e.rate, e.grade);
    return out;
}

ExpSum ExpSum::scaled(cplx c) const {
    ExpSum out;
    for (const auto& e : terms_) out.add(e.coef * c, e.rate, e.grade);
    return out;
}

ExpSum ExpSum::operator+(const ExpSum& rhs) const {
    ExpSum out = *this;
    out.terms_.insert(out.terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
    return out;
}

ExpSum ExpSum::operator*(const ExpSum& rhs) const {
    ExpSum out;
    for (const auto& a : terms_)
        for (const auto& b : rhs.terms_) out.add(a.coef * b.coef, a.rate + b.rate, a.grade + b.grade);
    return out;
}

ExpSum ExpSum::truncated(int max_grade) const {
    ExpSum out;
    for (const auto& e : terms_)
        if (e.grade <= max_grade) out.terms_.push_back(e);
    return out;
}

cplx ExpSum::integrate_tail(cplx t) const {
    cplx acc{};
    for (const auto& e : terms_) {
        if (e.coef == cplx{}) continue;
        if (!(e.rate.real() < 0.0))
            throw DegenerateError("tail integral diverges: rate with Re = " +
                                  std::to_string(e.rate.real()));
        acc -= e.coef * std::exp(e.rate * t) / e.rate;
    }
    return acc;
}

std::vector<cplx> ExpSum::grade_modes(int max_grade) const {
    std::vector<cplx> out(static_cast<std::size_t>(std::max(max_grade, 0)) + 1);
    for (const auto& e : terms_)
        if (e.grade >= 0 && e.grade <= max_grade) out[e.grade] += e.coef;
    return out;
}

cplx BiExpSum::operator()(cplx t, cplx u) const {
    cplx acc{};
    for (const auto& e : terms_) acc += e.coef * std::exp(e.rate_t * t + e.rate_u * u);
    return acc;
}

BiExpSum BiExpSum::partial(int dt, int du) const {
    BiExpSum out;
    for (auto e : terms_) {
        e.coef *= ipow(e.rate_t, dt) * ipow(e.rate_u, du);
        out.add(e);
    }
    return out;
}

ExpSum BiExpSum::diagonal() const {
    ExpSum out;
    for (const auto& e : terms_) out.add(e.coef, e.rate_t + e.rate_u, e.grade);
    return out;
}

BiExpSum BiExpSum::truncated(int max_grade) const {
    BiExpSum out;
    for (const auto& e : terms_)
        if (e.grade <= max_grade) out.add(e);
    return out;
}

BiExpSum compose_tail(const BiExpSum& A, const BiExpSum& B, int max_grade) {
    BiExpSum out;
    for (const auto& a : A.terms())
        for (const auto& b : B.terms()) {
            const int g = a.grade + b.grade;
            if (g > max_grade) continue;
            const cplx c = a.coef * b.coef;
            if (c == cplx{}) continue;
            const cplx r = a.rate_u + b.rate_t;
            if (!(r.real() < 0.0))
                throw DegenerateError("composition integrand does not decay (Re rate = " +
                                      std::to_string(r.real()) + ")");
            out.add({-c / r, a.rate_t + r, b.rate_u, g});
        }
    return out;
}

// ---------------------------------------------------------------------------

cplx eval_f(const VTable& V, cplx t, cplx k, int deriv, int max_column, double tol) {
    const Order& order = V.order();
    const int top = max_column < 0 ? V.depth() : std::min(max_column, V.depth());
    const cplx ik = I * k;
    cplx acc = ipow(ik, deriv) * std::exp(ik * t);
    for (int j = 1; j <= order.J(); ++j) {
        const cplx owj = order.one_minus_omega(j);
        for (int n = 1; n <= top; ++n) {
            const cplx den = I * static_cast<double>(n) + k * owj;
            check_pole(den, n, j, tol);
            for (int alpha = n; alpha <= top; ++alpha) {
                const cplx rate = ik - static_cast<double>(alpha);
                acc += V(j, n, alpha) / den * ipow(rate, deriv) * std::exp(rate * t);
            }
        }
    }
    return acc;
}

std::vector<cplx> phi_modes(const VTable& V, cplx rho, double tol) {
    const Order& order = V.order();
    std::vector<cplx> c(static_cast<std::size_t>(V.depth()) + 1);
    c[0] = 1.0;
    for (int j = 1; j <= order.J(); ++j) {
        const cplx owj = order.one_minus_omega(j);
        for (int n = 1; n <= V.depth(); ++n) {
            const cplx den = static_cast<double>(n) + rho * owj;
            check_pole(den, n, j, tol);
            for (int alpha = n; alpha <= V.depth(); ++alpha) c[alpha] += -I * V(j, n, alpha) / den;
        }
    }
    return c;
}

cplx eval_phi(const VTable& V, cplx x, cplx lambda, int tau, int deriv, double tol) {
    const cplx rho = lambda * V.order().omega(tau);
    const auto c = phi_modes(V, rho, tol);
    cplx acc{};
    for (std::size_t alpha = 0; alpha < c.size(); ++alpha) {
        const cplx w = I * (rho + static_cast<double>(alpha));
        acc += c[alpha] * ipow(w, deriv) * std::exp(w * x);
    }
    return acc;
}

// ---------------------------------------------------------------------------

BiExpSum kernel_sum(const VTable& V) {
    const Order& order = V.order();
    BiExpSum K;
    for (int j = 1; j <= order.J(); ++j) {
        const cplx scale = 1.0 / (I * order.one_minus_omega(j));
        for (int alpha = 1; alpha <= V.depth(); ++alpha)
            for (int n = 1; n <= alpha; ++n) {
                const cplx a = pole_rate(order, n, j);
                K.add({V(j, n, alpha) * scale, a - static_cast<double>(alpha), -a, alpha});
            }
    }
    return K;
}

cplx kernel_K(const VTable& V, double t, double u, int dt, int du) {
    return kernel_sum(V).partial(dt, du)(t, u);
}

BiExpSum f_tilde_sum(const SpectralData& S) {
    const Order& order = S.order();
    BiExpSum F;
    for (int n = 1; n <= S.depth(); ++n)
        for (int j = 1; j <= order.J(); ++j) {
            const cplx a = pole_rate(order, n, j);
            F.add({S(n, j) / (I * order.one_minus_omega(j)), a * order.omega(j), -a, n});
        }
    return F;
}

cplx f_tilde(const SpectralData& S, double t, double u) { return f_tilde_sum(S)(t, u); }

cplx f_tilde_m1(const SpectralData& S, double v) {
    if (S.order().m() != 1) throw InputError("one-argument transition function needs m = 1");
    cplx acc{};
    for (int n = 1; n <= S.depth(); ++n) acc += S(n, 1) / (2.0 * I) * std::exp(-0.5 * n * v);
    return acc;
}

cplx marchenko_residual(const VTable& V, const SpectralData& S, double t, double u) {
    if (!(V.order() == S.order())) throw InputError("table and spectral data orders differ");
    if (t < 0.0 || u < t) throw InputError("marchenko_residual needs 0 <= t <= u");
    const int depth = std::min(V.depth(), S.depth());
    const BiExpSum K = kernel_sum(V).truncated(depth);
    const BiExpSum F = f_tilde_sum(S).truncated(depth);
    return K(t, u) - F(t, u) - compose_tail(K, F, depth)(t, u);
}

JumpCheck jump_relation_check(const VTable& V, const SpectralData& S, double t, int n, int j) {
    const Order& order = V.order();
    if (!(order == S.order())) throw InputError("table and spectral data orders differ");
    if (n < 1 || n > V.depth()) throw InputError("pole index n outside the table depth");
    const cplx a = pole_rate(order, n, j);

    JumpCheck out;
    for (int alpha = n; alpha <= V.depth(); ++alpha) {
        const cplx term = V(j, n, alpha) * std::exp((a - static_cast<double>(alpha)) * t);
        out.lhs += term;
        out.scale += std::abs(term);
    }

    // f(t, k) at k = k_nj w_j, cut to grades <= N.
    const cplx k = k_pole(order, n, j) * order.omega(j);
    const cplx s = S.value_or_zero(n, j);
    const cplx ik = I * k;
    cplx f = std::exp(ik * t);
    double fscale = std::abs(f);
    const int top = V.depth() - n;
    for (int l = 1; l <= order.J(); ++l) {
        const cplx owl = order.one_minus_omega(l);
        for (int r = 1; r <= top; ++r) {
            const cplx den = I * static_cast<double>(r) + k * owl;
            check_pole(den, r, l, kDefaultDegenerateTol);
            for (int alpha = r; alpha <= top; ++alpha) {
                const cplx term =
                    V(l, r, alpha) / den * std::exp((ik - static_cast<double>(alpha)) * t);
                f += term;
                fscale += std::abs(term);
            }
        }
    }
    out.rhs = s * f;
    out.scale += std::abs(s) * fscale;
    out.gap = std::abs(out.lhs - out.rhs);
    return out;
}

double transform_identity_gap(const VTable& V, double t, cplx k) {
    const cplx ik = I * k;
    cplx integral{};
    const BiExpSum K = kernel_sum(V);
    for (const auto& e : K.terms()) {
        ExpSum in_u;
        in_u.add(e.coef * std::exp(e.rate_t * t), e.rate_u + ik);
        integral += in_u.integrate_tail(t);
    }
    return std::abs(eval_f(V, t, k) - std::exp(ik * t) - integral);
}

// ---------------------------------------------------------------------------

SpectralData shift_spectral(const SpectralData& S, cplx a) {
    check_shift(a);
    SpectralData out(S.order(), S.depth());
    for (int n = 1; n <= S.depth(); ++n) {
        const cplx f = std::exp(I * static_cast<double>(n) * a);
        for (int j = 1; j <= S.order().J(); ++j) out.at(n, j) = f * S(n, j);
    }
    return out;
}

PotentialCoefficients shift_potential(const PotentialCoefficients& p, cplx a) {
    check_shift(a);
    PotentialCoefficients out(p.order(), p.depth());
    for (int n = 1; n <= p.depth(); ++n) {
        const cplx f = std::exp(I * static_cast<double>(n) * a);
        for (int g = 0; g < p.gamma_count(); ++g) out.at(g, n) = f * p(g, n);
    }
    return out;
}

// ---------------------------------------------------------------------------

ExpSum q0_from_kernel(const VTable& V) {
    const Order& order = V.order();
    const double sg = order.m() % 2 == 0 ? 1.0 : -1.0;
    return kernel_sum(V).diagonal().derivative().scaled(sg * order.degree());
}

std::vector<cplx> q0_modes(const VTable& V) { return q0_from_kernel(V).grade_modes(V.depth()); }

// ---------------------------------------------------------------------------

std::vector<cplx> k_vector(const SpectralData& S, double t, int N) {
    const Order& order = S.order();
    const int J = order.J();
    const auto F = f_matrix(S, t, Plane::t, N);
    std::vector<cplx> e(F.rows());
    for (int n = 1; n <= N; ++n)
        for (int j = 1; j <= J; ++j)
            e[(n - 1) * J + (j - 1)] = std::exp(pole_rate(order, n, j) * order.omega(j) * t);
    const auto rhs = F * std::span<const cplx>(e);
    return linalg::lu_solve(linalg::ComplexMatrix::identity(F.rows()) - F, rhs);
}

cplx k_from_kernel(const VTable& V, double t, int r, int l) {
    const Order& order = V.order();
    const cplx b = pole_rate(order, r, l) * order.omega(l);
    cplx acc{};
    const BiExpSum K = kernel_sum(V);
    for (const auto& e : K.terms()) {
        ExpSum in_u;
        in_u.add(e.coef * std::exp(e.rate_t * t), e.rate_u + b);
        acc += in_u.integrate_tail(t);
    }
    return acc;
}

// ---------------------------------------------------------------------------

double ode_residual(const PotentialCoefficients& p, const VTable& V, cplx x, cplx lambda, int tau) {
    const Order& order = V.order();
    if (!(order == p.order())) throw InputError("potential and table orders differ");
    const cplx rho = lambda * order.omega(tau);
    const auto c = phi_modes(V, rho);
    const int M = V.depth(), Np = p.depth(), d = order.degree();
    const cplx rho_d = ipow(rho, d);
    cplx total{};
    for (int alpha = 1; alpha <= M + Np; ++alpha) {
        cplx R{};
        if (alpha <= M) R += (ipow(rho + static_cast<double>(alpha), d) - rho_d) * c[alpha];
        for (int s = std::max(0, alpha - Np); s <= std::min(alpha - 1, M); ++s) {
            const cplx base = I * (rho + static_cast<double>(s));
            cplx pw = 1.0;
            for (int g = 0; g < order.J(); ++g) {
                R += pw * p(g, alpha - s) * c[s];
                pw *= base;
            }
        }
        total += R * std::exp(I * static_cast<double>(alpha) * x);
    }
    return std::abs(total);
}

double ode_residual_direct(const PotentialCoefficients& p, const VTable& V, cplx x, cplx lambda,
                           int tau) {
    const Order& order = V.order();
    if (!(order == p.order())) throw InputError("potential and table orders differ");
    const int d = order.degree();
    const cplx rho = lambda * order.omega(tau);
    const double sg = order.m() % 2 == 0 ? 1.0 : -1.0;
    cplx res = sg * eval_phi(V, x, lambda, tau, d) - ipow(rho, d) * eval_phi(V, x, lambda, tau, 0);
    for (int g = 0; g < order.J(); ++g) {
        cplx pg{};
        for (int n = 1; n <= p.depth(); ++n) pg += p(g, n) * std::exp(I * static_cast<double>(n) * x);
        res += pg * eval_phi(V, x, lambda, tau, g);
    }
    return std::abs(res / std::exp(I * rho * x));
}

}  // namespace perispec
