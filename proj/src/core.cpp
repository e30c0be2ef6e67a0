#include "perispec/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "perispec/errors.hpp"
#include "perispec/linalg.hpp"

namespace perispec {

namespace {

// Exact zeros for the quarter-turn components keep 1 - omega_j free of
// 1e-17 noise (e.g. m = 2 gives exactly {1, i, -1, -i}).
double snap(double v) { return std::abs(v) < 1e-15 ? 0.0 : v; }

void check_root_index(const Order& order, int j) {
    if (j < 1 || j > order.J())
        throw InputError("root index j = " + std::to_string(j) + " outside 1.." +
                         std::to_string(order.J()));
}

}  // namespace

Order::Order(int m) : m_(m) {
    if (m < 1 || m > max_m)
        throw InputError("order m = " + std::to_string(m) + " outside 1.." + std::to_string(max_m));
    roots_.reserve(2 * m);
    for (int j = 0; j < 2 * m; ++j) {
        const double theta = std::numbers::pi * j / m;
        roots_.emplace_back(snap(std::cos(theta)), snap(std::sin(theta)));
    }
}

cplx Order::omega(int j) const {
    const int d = degree();
    return roots_[((j % d) + d) % d];
}

cplx Order::one_minus_omega(int j) const { return 1.0 - omega(j); }

std::vector<cplx> roots_of_unity(const Order& order) {
    return {order.roots().begin(), order.roots().end()};
}

cplx pole(const Order& order, int n, int j) {
    check_root_index(order, j);
    return -static_cast<double>(n) / order.one_minus_omega(j);
}

cplx k_pole(const Order& order, int n, int j) { return I * pole(order, n, j); }

cplx pole_rate(const Order& order, int n, int j) {
    check_root_index(order, j);
    return static_cast<double>(n) / order.one_minus_omega(j);
}

double am_quotient(const Order& order, int j, int l, int n, int r, double tol) {
    check_root_index(order, j);
    check_root_index(order, l);
    const cplx wj = order.omega(j);
    const cplx num = (1.0 - wj) * static_cast<double>(n + r);
    const cplx den = static_cast<double>(r) * (1.0 - wj) -
                     static_cast<double>(n) * order.one_minus_omega(l) * wj;
    if (std::abs(den) < tol)
        throw DegenerateError("a_m: degenerate denominator at (j, l, n, r) = (" +
                              std::to_string(j) + ", " + std::to_string(l) + ", " +
                              std::to_string(n) + ", " + std::to_string(r) + ")");
    return std::abs(num) / std::abs(den);
}

AmReport a_m_constant(const Order& order, int cap, double tol) {
    if (cap < 1) throw InputError("a_m: cap must be >= 1");
    AmReport rep;
    rep.cap = cap;
    rep.value = -1.0;
    rep.ordered_value = -1.0;
    for (int j = 1; j <= order.J(); ++j)
        for (int l = 1; l <= order.J(); ++l)
            for (int n = 1; n <= cap; ++n)
                for (int r = 1; r <= cap; ++r) {
                    const double q = am_quotient(order, j, l, n, r, tol);
                    if (q > rep.value) {
                        rep.value = q;
                        rep.argmax = {j, l, n, r};
                    }
                    if (j <= l && q > rep.ordered_value) {
                        rep.ordered_value = q;
                        rep.ordered_argmax = {j, l, n, r};
                    }
                }
    return rep;
}

cplx vandermonde_det(const Order& order) {
    const auto d = static_cast<std::size_t>(order.degree());
    linalg::ComplexMatrix v(d, d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t c = 0; c < d; ++c) v(k, c) = order.omega(static_cast<int>(c * k));
    return linalg::lu_det(v);
}

// ---------------------------------------------------------------------------

PotentialCoefficients::PotentialCoefficients(Order order, int depth)
    : order_(std::move(order)), depth_(depth) {
    if (depth < 0) throw InputError("potential depth must be >= 0");
    data_.assign(static_cast<std::size_t>(order_.J()) * static_cast<std::size_t>(depth), cplx{});
}

std::size_t PotentialCoefficients::index(int gamma, int n) const {
    if (gamma < 0 || gamma >= order_.J() || n < 1 || n > depth_)
        throw std::out_of_range("potential index (gamma=" + std::to_string(gamma) +
                                ", n=" + std::to_string(n) + ") out of range");
    return static_cast<std::size_t>(gamma) * depth_ + (n - 1);
}

cplx PotentialCoefficients::value_or_zero(int gamma, int n) const {
    if (n < 1 || n > depth_) return {};
    return (*this)(gamma, n);
}

double PotentialCoefficients::weighted_norm() const {
    double s = 0.0;
    for (int g = 0; g < order_.J(); ++g)
        for (int n = 1; n <= depth_; ++n) s += std::pow(n, g) * std::abs((*this)(g, n));
    return s;
}

double PotentialCoefficients::max_abs() const {
    double best = 0.0;
    for (const auto& v : data_) best = std::max(best, std::abs(v));
    return best;
}

PotentialCoefficients PotentialCoefficients::resized(int depth) const {
    PotentialCoefficients out(order_, depth);
    for (int g = 0; g < order_.J(); ++g)
        for (int n = 1; n <= std::min(depth, depth_); ++n) out.at(g, n) = (*this)(g, n);
    return out;
}

// ---------------------------------------------------------------------------

SpectralData::SpectralData(Order order, int depth) : order_(std::move(order)), depth_(depth) {
    if (depth < 0) throw InputError("spectral depth must be >= 0");
    data_.assign(static_cast<std::size_t>(order_.J()) * static_cast<std::size_t>(depth), cplx{});
}

std::size_t SpectralData::index(int n, int j) const {
    if (n < 1 || n > depth_ || j < 1 || j > order_.J())
        throw std::out_of_range("spectral index (n=" + std::to_string(n) + ", j=" +
                                std::to_string(j) + ") out of range");
    return static_cast<std::size_t>(n - 1) * order_.J() + (j - 1);
}

cplx SpectralData::value_or_zero(int n, int j) const {
    if (n < 1 || n > depth_) return {};
    return (*this)(n, j);
}

double SpectralData::tilde(int n) const {
    double s = 0.0;
    for (int j = 1; j <= order_.J(); ++j) s += std::abs(value_or_zero(n, j));
    return std::pow(static_cast<double>(n), 2 * order_.m() - 2) * s;
}

double SpectralData::max_abs() const {
    double best = 0.0;
    for (const auto& v : data_) best = std::max(best, std::abs(v));
    return best;
}

SpectralData SpectralData::resized(int depth) const {
    SpectralData out(order_, depth);
    for (int n = 1; n <= std::min(depth, depth_); ++n)
        for (int j = 1; j <= order_.J(); ++j) out.at(n, j) = (*this)(n, j);
    return out;
}

// ---------------------------------------------------------------------------

VTable::VTable(Order order, int depth) : order_(std::move(order)), depth_(depth) {
    if (depth < 0) throw InputError("table depth must be >= 0");
    const auto tri = static_cast<std::size_t>(depth) * (depth + 1) / 2;
    data_.assign(static_cast<std::size_t>(order_.J()) * tri, cplx{});
}

std::size_t VTable::index(int j, int n, int alpha) const {
    if (j < 1 || j > order_.J() || n < 1 || alpha < n || alpha > depth_)
        throw std::out_of_range("table index (j=" + std::to_string(j) + ", n=" +
                                std::to_string(n) + ", alpha=" + std::to_string(alpha) +
                                ") out of range");
    const auto tri = static_cast<std::size_t>(depth_) * (depth_ + 1) / 2;
    const auto col = static_cast<std::size_t>(alpha) * (alpha - 1) / 2 + (n - 1);
    return static_cast<std::size_t>(j - 1) * tri + col;
}

void VTable::mark_complete(int alpha) {
    if (alpha != completed_ + 1 || alpha > depth_)
        throw ContractViolation("columns must be completed in order; got " +
                                std::to_string(alpha) + " after " + std::to_string(completed_));
    completed_ = alpha;
}

double VTable::max_abs() const {
    double best = 0.0;
    for (const auto& v : data_) best = std::max(best, std::abs(v));
    return best;
}

}  // namespace perispec
