#pragma once

// Closed-form evaluation of the series solutions, the transformation kernel,
// the transition function and the identities tying them together. Every
// object is a finite exponential sum, so all integrals over [t, inf) are
// done term by term.
//
// Each term carries an integer grade: the total decay order it contributes
// on the diagonal t = u. A table of depth N is exact through grade N, so
// products are truncated at that grade before comparing both sides of an
// identity.

#include <vector>

#include "perispec/core.hpp"

namespace perispec {

struct ExpTerm {
    cplx coef;
    cplx rate;
    int grade = 0;
};

/// t -> sum_i c_i exp(a_i t).
class ExpSum {
public:
    ExpSum() = default;
    explicit ExpSum(std::vector<ExpTerm> terms) : terms_(std::move(terms)) {}

    const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
    void add(cplx coef, cplx rate, int grade = 0) { terms_.push_back({coef, rate, grade}); }

    cplx operator()(cplx t) const;
    ExpSum derivative(int order = 1) const;
    ExpSum scaled(cplx c) const;
    ExpSum operator+(const ExpSum& rhs) const;
    /// Pointwise product; grades add.
    ExpSum operator*(const ExpSum& rhs) const;
    ExpSum truncated(int max_grade) const;

    /// Integral over [t, inf) along the real direction. Every term with a
    /// nonzero coefficient must have Re(rate) < 0, else DegenerateError.
    cplx integrate_tail(cplx t) const;

    /// Coefficients summed by grade, index 0..max_grade.
    std::vector<cplx> grade_modes(int max_grade) const;

private:
    std::vector<ExpTerm> terms_;
};

struct BiExpTerm {
    cplx coef;
    cplx rate_t;
    cplx rate_u;
    int grade = 0;
};

/// (t, u) -> sum_i c_i exp(a_i t + b_i u).
class BiExpSum {
public:
    BiExpSum() = default;
    explicit BiExpSum(std::vector<BiExpTerm> terms) : terms_(std::move(terms)) {}

    const std::vector<BiExpTerm>& terms() const noexcept { return terms_; }
    void add(const BiExpTerm& t) { terms_.push_back(t); }

    cplx operator()(cplx t, cplx u) const;
    BiExpSum partial(int dt, int du) const;
    /// Restriction to t = u = x.
    ExpSum diagonal() const;
    BiExpSum truncated(int max_grade) const;

private:
    std::vector<BiExpTerm> terms_;
};

/// (t, u) -> int_t^inf A(t, s) B(s, u) ds, keeping products of grade <= max_grade.
BiExpSum compose_tail(const BiExpSum& A, const BiExpSum& B, int max_grade);

// ---------------------------------------------------------------------------
// Series solutions

/// Half-line solution f(t, k) = e^{ikt} + sum V/(in + k(1-w_j)) e^{(ik - alpha)t},
/// or its deriv-th t-derivative. Columns above max_column are dropped
/// (max_column < 0 keeps all). A pole closer than tol raises DegenerateError.
cplx eval_f(const VTable& V, cplx t, cplx k, int deriv = 0, int max_column = -1,
            double tol = kDefaultDegenerateTol);

/// Periodic-line solution phi(x, rho) with rho = lambda * w_tau:
///   e^{i rho x} (1 + sum_alpha c_alpha(rho) e^{i alpha x}),
///   c_alpha(rho) = sum_{j, n <= alpha} -i V_{n alpha}^{(j)} / (n + rho(1-w_j)).
/// Equal to eval_f at t = -ix, k = i rho.
cplx eval_phi(const VTable& V, cplx x, cplx lambda, int tau = 0, int deriv = 0,
              double tol = kDefaultDegenerateTol);

/// The coefficients c_0 = 1, c_1 .. c_N above.
std::vector<cplx> phi_modes(const VTable& V, cplx rho, double tol = kDefaultDegenerateTol);

// ---------------------------------------------------------------------------
// Kernel and transition function

/// K(t, u) = sum V_{n alpha}^{(j)} / (i(1-w_j)) e^{(a - alpha)t - a u}, a = n/(1-w_j).
BiExpSum kernel_sum(const VTable& V);
cplx kernel_K(const VTable& V, double t, double u, int dt = 0, int du = 0);

/// F~(t, u) = sum S_{nj} / (i(1-w_j)) e^{a(w_j t - u)}, a = n/(1-w_j).
BiExpSum f_tilde_sum(const SpectralData& S);
cplx f_tilde(const SpectralData& S, double t, double u);
/// One-argument form F~(v), v = t + u, available for m = 1 only.
cplx f_tilde_m1(const SpectralData& S, double v);

/// K(t,u) - F~(t,u) - int_t^inf K(t,s) F~(s,u) ds, graded to the common depth.
cplx marchenko_residual(const VTable& V, const SpectralData& S, double t, double u);

struct JumpCheck {
    cplx lhs;
    cplx rhs;
    double gap = 0.0;
    double scale = 0.0;  ///< sum of the moduli of all terms on both sides
};

/// Residue of f(t, k) at k_{nj} against S_{nj} f(t, k_{nj} w_j). The right
/// side is cut at column N - n so both sides carry grades <= N.
JumpCheck jump_relation_check(const VTable& V, const SpectralData& S, double t, int n, int j);

/// |f(t,k) - e^{ikt} - int_t^inf K(t,u) e^{iku} du|. Converges for Im k > -1/2.
double transform_identity_gap(const VTable& V, double t, cplx k);

// ---------------------------------------------------------------------------
// Translation

/// S_{nj} -> e^{ina} S_{nj}; Im a < 0 is rejected.
SpectralData shift_spectral(const SpectralData& S, cplx a);
/// p_{gamma n} -> e^{ina} p_{gamma n}; Im a < 0 is rejected.
PotentialCoefficients shift_potential(const PotentialCoefficients& p, cplx a);

// ---------------------------------------------------------------------------
// Trace identity

/// (-1)^m 2m d/dt K(t, t) as an exponential sum with rates -alpha.
ExpSum q0_from_kernel(const VTable& V);
/// Its coefficients by mode alpha = 0..N (entry 0 is zero); compare against
/// q_from_p(p)(2m-2, alpha).
std::vector<cplx> q0_modes(const VTable& V);

// ---------------------------------------------------------------------------
// Resolvent vector

/// k(t) = (E - F(t))^{-1} F(t) e(t) at truncation N, t-plane matrix;
/// entries ordered (r, l) as in f_matrix.
std::vector<cplx> k_vector(const SpectralData& S, double t, int N);
/// k_{rl}(t) = int_t^inf K(t,u) e^{a_{rl} w_l u} du from a kernel table.
cplx k_from_kernel(const VTable& V, double t, int r, int l);

// ---------------------------------------------------------------------------
// ODE residual of l(phi) - rho^{2m} phi, rho = lambda w_tau

/// Computed on Fourier modes: with c_alpha from the table (depth M) the
/// residual is e^{i rho x} sum_alpha R_alpha e^{i alpha x}. Returned relative
/// to |e^{i rho x}|.
double ode_residual(const PotentialCoefficients& p, const VTable& V, cplx x, cplx lambda,
                    int tau = 0);
/// Same quantity by pointwise evaluation of phi and its derivatives.
double ode_residual_direct(const PotentialCoefficients& p, const VTable& V, cplx x, cplx lambda,
                           int tau = 0);

}  // namespace perispec
