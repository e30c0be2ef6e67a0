#pragma once

// Shared lattice and data tables for order-2m operators with complex
// periodic coefficients  p_gamma(x) = sum_{n>=1} p_{gamma n} e^{inx}.
//
// Index conventions used throughout the library:
//   m        operator order is 2m, 1 <= m <= Order::max_m
//   j, l     root indices 1..2m-1 (root 0 is the trivial root omega_0 = 1)
//   n, r, s  Fourier / pole indices, 1-based
//   alpha    column index of the transformation table, 1-based
//   gamma    derivative order of a potential, 0..2m-2

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace perispec {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

/// Absolute modulus below which a denominator is treated as zero.
inline constexpr double kDefaultDegenerateTol = 1e-12;

/// Operator order 2m together with the 2m-th roots of unity
/// omega_j = exp(i j pi / m), j = 0..2m-1.
class Order {
public:
    static constexpr int max_m = 8;

    explicit Order(int m);

    int m() const noexcept { return m_; }
    /// Number of nontrivial roots, 2m-1. Also the number of potentials.
    int J() const noexcept { return 2 * m_ - 1; }
    int degree() const noexcept { return 2 * m_; }

    /// omega_j for j in 0..2m-1. Index 0 is the trivial root 1.
    cplx omega(int j) const;
    /// 1 - omega_j; nonzero for j in 1..2m-1.
    cplx one_minus_omega(int j) const;
    std::span<const cplx> roots() const noexcept { return roots_; }

    friend bool operator==(const Order& a, const Order& b) noexcept { return a.m_ == b.m_; }

private:
    int m_;
    std::vector<cplx> roots_;
};

/// All 2m roots in index order; entry 0 is the trivial root omega_0 = 1,
/// which never takes part in pole or spectral indexing.
std::vector<cplx> roots_of_unity(const Order& order);

/// lambda_{nj} = -n / (1 - omega_j). Throws InputError for j outside 1..2m-1.
cplx pole(const Order& order, int n, int j);

/// k_{nj} = -i n / (1 - omega_j) = i lambda_{nj}, the half-line pole.
cplx k_pole(const Order& order, int n, int j);

/// a_{nj} = n / (1 - omega_j) = i k_{nj}; the decay rate attached to the
/// pole (n, j) in every exponential sum of the half-line picture.
cplx pole_rate(const Order& order, int n, int j);

struct AmArgmax {
    int j = 0, l = 0, n = 0, r = 0;
};

/// Result of the finite enumeration of the constant a_m.
struct AmReport {
    int cap = 0;
    double value = 0.0;          ///< max over all pairs (j, l)
    AmArgmax argmax;
    double ordered_value = 0.0;  ///< max restricted to j <= l
    AmArgmax ordered_argmax;
};

/// The quotient |(1-w_j)(n+r)| / |r(1-w_j) - n(1-w_l) w_j| for one index
/// tuple. Throws DegenerateError when the denominator modulus is below tol.
double am_quotient(const Order& order, int j, int l, int n, int r,
                   double tol = kDefaultDegenerateTol);

/// Maximises am_quotient over 1 <= n, r <= cap and all j, l in 1..2m-1.
/// The true constant is a supremum over unbounded n, r; the report carries
/// the cap so callers can watch the plateau.
AmReport a_m_constant(const Order& order, int cap, double tol = kDefaultDegenerateTol);

/// Determinant of the (2m)x(2m) Vandermonde matrix with rows omega^k.
cplx vandermonde_det(const Order& order);

/// Fourier coefficients p_{gamma n}, gamma = 0..2m-2, n = 1..N.
class PotentialCoefficients {
public:
    PotentialCoefficients(Order order, int depth);

    const Order& order() const noexcept { return order_; }
    int depth() const noexcept { return depth_; }
    int gamma_count() const noexcept { return order_.J(); }

    cplx operator()(int gamma, int n) const { return data_[index(gamma, n)]; }
    cplx& at(int gamma, int n) { return data_[index(gamma, n)]; }
    /// Zero outside 1..N; convenient for convolution sums.
    cplx value_or_zero(int gamma, int n) const;

    /// sum_gamma sum_n n^gamma |p_{gamma n}|
    double weighted_norm() const;
    double max_abs() const;

    /// Copy with a different depth; new modes are zero, dropped modes are lost.
    PotentialCoefficients resized(int depth) const;

    friend bool operator==(const PotentialCoefficients&, const PotentialCoefficients&) = default;

private:
    std::size_t index(int gamma, int n) const;

    Order order_;
    int depth_;
    std::vector<cplx> data_;
};

/// Spectral data S_{nj}, n = 1..N, j = 1..2m-1.
class SpectralData {
public:
    SpectralData(Order order, int depth);

    const Order& order() const noexcept { return order_; }
    int depth() const noexcept { return depth_; }

    cplx operator()(int n, int j) const { return data_[index(n, j)]; }
    cplx& at(int n, int j) { return data_[index(n, j)]; }
    cplx value_or_zero(int n, int j) const;

    /// S~_n = sum_j n^{2m-2} |S_{nj}|
    double tilde(int n) const;
    double max_abs() const;

    SpectralData resized(int depth) const;

    friend bool operator==(const SpectralData&, const SpectralData&) = default;

private:
    std::size_t index(int n, int j) const;

    Order order_;
    int depth_;
    std::vector<cplx> data_;
};

/// Triangular table V_{n alpha}^{(j)}, 1 <= n <= alpha <= N, j = 1..2m-1,
/// in the half-line normalisation: the solution series is
///   f(t, k) = e^{ikt} + sum V_{n alpha}^{(j)} / (i n + k(1-w_j)) e^{(ik - alpha)t}.
///
/// Tables are built column by column; completed_columns() records how far
/// the builder got so that single-step operations can check prerequisites.
class VTable {
public:
    VTable(Order order, int depth);

    const Order& order() const noexcept { return order_; }
    int depth() const noexcept { return depth_; }

    cplx operator()(int j, int n, int alpha) const { return data_[index(j, n, alpha)]; }
    cplx& at(int j, int n, int alpha) { return data_[index(j, n, alpha)]; }

    int completed_columns() const noexcept { return completed_; }
    void mark_complete(int alpha);

    double max_abs() const;

    friend bool operator==(const VTable&, const VTable&) = default;

private:
    std::size_t index(int j, int n, int alpha) const;

    Order order_;
    int depth_;
    int completed_ = 0;
    std::vector<cplx> data_;
};

}  // namespace perispec
