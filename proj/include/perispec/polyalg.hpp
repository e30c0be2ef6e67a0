#pragma once

#include <complex>
#include <span>
#include <vector>

#include "perispec/core.hpp"

namespace perispec::polyalg {

/// Dense polynomial in one complex variable, coefficients in ascending degree.
class ComplexPolynomial {
public:
    ComplexPolynomial() = default;
    explicit ComplexPolynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {}

    const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    cplx operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : cplx{}; }

    /// Degree of the normalised polynomial; -1 for the zero polynomial.
    int degree() const;
    /// Drops trailing zero coefficients.
    ComplexPolynomial normalized() const;

    cplx operator()(cplx k) const;

private:
    std::vector<cplx> coeffs_;
};

ComplexPolynomial poly_add(const ComplexPolynomial& a, const ComplexPolynomial& b);
ComplexPolynomial poly_mul(const ComplexPolynomial& a, const ComplexPolynomial& b);
/// Horner evaluation.
cplx poly_eval(const ComplexPolynomial& p, cplx k);

struct LinearDivision {
    ComplexPolynomial quotient;
    cplx remainder;
};

/// Synthetic division p(k) = (k - root) q(k) + remainder. The remainder
/// equals p(root). A constant (or empty) p yields an empty quotient.
LinearDivision divide_by_linear(const ComplexPolynomial& p, cplx root);

/// (shift + k)^power expanded with integer binomial coefficients, power <= 16.
ComplexPolynomial binomial_power(cplx shift, int power);

/// Coefficients d_{j gamma}(n, alpha), gamma = 0..2m-2, of
///   [(i alpha + k)^{2m} - k^{2m} - (i alpha + k_nj)^{2m} + k_nj^{2m}] / (i n + k(1 - w_j)).
/// The numerator vanishes at k = k_nj so the division is exact; a remainder
/// above 1e-9 of the numerator scale raises DegenerateError.
std::vector<cplx> d_coeffs_A(const Order& order, int n, int alpha, int j);

/// Coefficients d_{j gamma}(n, s, nu), gamma = 0..nu-1, of
///   [(i s + k)^nu - (i s + k_nj)^nu] / (i n + k(1 - w_j)).
/// nu = 0 gives an empty list.
std::vector<cplx> d_coeffs_B(const Order& order, int n, int s, int nu, int j);

/// Precomputed d-coefficient families for all 1 <= n <= alpha <= depth
/// (resp. n <= s <= depth, nu = 1..2m-2) and all roots; the forward and
/// inverse recurrences query these many times per column.
class DCoeffs {
public:
    DCoeffs(const Order& order, int depth);

    int depth() const noexcept { return depth_; }
    /// 2m-1 values d_{j gamma}(n, alpha).
    std::span<const cplx> a(int n, int alpha, int j) const;
    /// nu values d_{j gamma}(n, s, nu).
    std::span<const cplx> b(int n, int s, int nu, int j) const;

private:
    std::size_t slot(int n, int col, int j) const;

    int J_, depth_, nu_count_;
    std::vector<std::vector<cplx>> a_;
    std::vector<std::vector<cplx>> b_;
};

}  // namespace perispec::polyalg
