#include "perispec/polyalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "perispec/errors.hpp"

namespace perispec::polyalg {

namespace {

constexpr int kMaxBinomial = 2 * Order::max_m;

constexpr auto make_binomials() {
    std::array<std::array<double, kMaxBinomial + 1>, kMaxBinomial + 1> c{};
    for (int n = 0; n <= kMaxBinomial; ++n) {
        c[n][0] = c[n][n] = 1.0;
        for (int k = 1; k < n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
    }
    return c;
}

constexpr auto kBinomial = make_binomials();

double coefficient_scale(const std::vector<cplx>& coeffs, cplx at) {
    double s = 0.0, pw = 1.0;
    const double r = std::abs(at);
    for (const auto& c : coeffs) {
        s += std::abs(c) * pw;
        pw *= r;
    }
    return s;
}

// Divides numerator by (1 - w_j)(k - k_nj) = i n + k(1 - w_j).
std::vector<cplx> exact_pole_division(const Order& order, const ComplexPolynomial& numerator,
                                      int n, int j, const char* what) {
    const cplx root = k_pole(order, n, j);
    auto [q, rem] = divide_by_linear(numerator, root);
    const double scale = coefficient_scale(numerator.coeffs(), root);
    if (std::abs(rem) > 1e-9 * std::max(scale, 1e-300) && std::abs(rem) > 0.0)
        throw DegenerateError(std::string(what) + ": inexact division at pole (n=" +
                              std::to_string(n) + ", j=" + std::to_string(j) + ")");
    std::vector<cplx> out = q.coeffs();
    const cplx f = order.one_minus_omega(j);
    for (auto& c : out) c /= f;
    return out;
}

}  // namespace

int ComplexPolynomial::degree() const {
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        if (coeffs_[i] != cplx{}) return static_cast<int>(i);
    return -1;
}

ComplexPolynomial ComplexPolynomial::normalized() const {
    const int d = degree();
    return ComplexPolynomial({coeffs_.begin(), coeffs_.begin() + (d + 1)});
}

cplx ComplexPolynomial::operator()(cplx k) const { return poly_eval(*this, k); }

ComplexPolynomial poly_add(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    std::vector<cplx> out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return ComplexPolynomial(std::move(out));
}

ComplexPolynomial poly_mul(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    if (a.size() == 0 || b.size() == 0) return {};
    std::vector<cplx> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
    return ComplexPolynomial(std::move(out));
}

cplx poly_eval(const ComplexPolynomial& p, cplx k) {
    cplx acc{};
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * k + c[i];
    return acc;
}

LinearDivision divide_by_linear(const ComplexPolynomial& p, cplx root) {
    const auto& c = p.coeffs();
    if (c.empty()) return {{}, cplx{}};
    const std::size_t deg = c.size() - 1;
    std::vector<cplx> q(deg);
    cplx acc = c[deg];
    for (std::size_t i = deg; i-- > 0;) {
        q[i] = acc;
        acc = c[i] + root * acc;
    }
    return {ComplexPolynomial(std::move(q)), acc};
}

ComplexPolynomial binomial_power(cplx shift, int power) {
    if (power < 0 || power > kMaxBinomial)
        throw InputError("binomial_power: power " + std::to_string(power) + " outside 0.." +
                         std::to_string(kMaxBinomial));
    std::vector<cplx> out(power + 1);
    cplx sp = 1.0;  // shift^(power - g), filled from the top down
    for (int g = power; g >= 0; --g) {
        out[g] = kBinomial[power][g] * sp;
        sp *= shift;
    }
    return ComplexPolynomial(std::move(out));
}

std::vector<cplx> d_coeffs_A(const Order& order, int n, int alpha, int j) {
    const int d = order.degree();
    const cplx shift = I * static_cast<double>(alpha);
    std::vector<cplx> num = binomial_power(shift, d).coeffs();
    num.pop_back();  // the k^{2m} terms cancel exactly
    const cplx kn = k_pole(order, n, j);
    num[0] -= std::pow(shift + kn, d) - std::pow(kn, d);
    return exact_pole_division(order, ComplexPolynomial(std::move(num)), n, j, "d_coeffs_A");
}

std::vector<cplx> d_coeffs_B(const Order& order, int n, int s, int nu, int j) {
    if (nu < 0 || nu > order.degree() - 2)
        throw InputError("d_coeffs_B: nu = " + std::to_string(nu) + " outside 0.." +
                         std::to_string(order.degree() - 2));
    if (nu == 0) {
        (void)k_pole(order, n, j);  // validates j
        return {};
    }
    const cplx shift = I * static_cast<double>(s);
    std::vector<cplx> num = binomial_power(shift, nu).coeffs();
    num[0] -= std::pow(shift + k_pole(order, n, j), nu);
    return exact_pole_division(order, ComplexPolynomial(std::move(num)), n, j, "d_coeffs_B");
}

DCoeffs::DCoeffs(const Order& order, int depth)
    : J_(order.J()), depth_(depth), nu_count_(order.degree() - 2) {
    if (depth < 0) throw InputError("DCoeffs: depth must be >= 0");
    const std::size_t slots = static_cast<std::size_t>(J_) * depth * (depth + 1) / 2;
    a_.resize(slots);
    b_.resize(slots * nu_count_);
    for (int j = 1; j <= J_; ++j)
        for (int col = 1; col <= depth; ++col)
            for (int n = 1; n <= col; ++n) {
                const std::size_t k = slot(n, col, j);
                a_[k] = d_coeffs_A(order, n, col, j);
                for (int nu = 1; nu <= nu_count_; ++nu)
                    b_[k * nu_count_ + (nu - 1)] = d_coeffs_B(order, n, col, nu, j);
            }
}

std::size_t DCoeffs::slot(int n, int col, int j) const {
    if (j < 1 || j > J_ || n < 1 || n > col || col > depth_)
        throw std::out_of_range("DCoeffs: index (n=" + std::to_string(n) + ", col=" +
                                std::to_string(col) + ", j=" + std::to_string(j) +
                                ") out of range");
    const std::size_t tri = static_cast<std::size_t>(depth_) * (depth_ + 1) / 2;
    return static_cast<std::size_t>(j - 1) * tri + static_cast<std::size_t>(col) * (col - 1) / 2 +
           (n - 1);
}

std::span<const cplx> DCoeffs::a(int n, int alpha, int j) const { return a_[slot(n, alpha, j)]; }

std::span<const cplx> DCoeffs::b(int n, int s, int nu, int j) const {
    if (nu < 1 || nu > nu_count_)
        throw std::out_of_range("DCoeffs: nu = " + std::to_string(nu) + " out of range");
    return b_[slot(n, s, j) * nu_count_ + (nu - 1)];
}

}  // namespace perispec::polyalg
