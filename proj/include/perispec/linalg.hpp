#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace perispec::linalg {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    cplx operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const cplx> data() const noexcept { return data_; }

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    std::vector<cplx> operator*(std::span<const cplx> x) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;

    /// Maximum absolute column sum.
    double norm1() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

/// LU factorisation with partial pivoting on modulus, P A = L U.
class LuDecomposition {
public:
    explicit LuDecomposition(ComplexMatrix a);

    /// True when some pivot was exactly zero.
    bool singular() const noexcept { return singular_pivot_ >= 0; }
    /// Column of the first exactly-zero pivot, or -1.
    int singular_pivot() const noexcept { return singular_pivot_; }

    cplx determinant() const;
    /// Throws DegenerateError carrying the pivot index when singular.
    std::vector<cplx> solve(std::span<const cplx> b) const;
    /// Cheap 1-norm condition estimate built from the explicit inverse;
    /// intended for the small systems of the forward recurrence.
    double condition_estimate(double a_norm1) const;

private:
    ComplexMatrix lu_;
    std::vector<std::size_t> perm_;
    int swaps_ = 0;
    int singular_pivot_ = -1;
};

/// Determinant via LU; a singular matrix gives 0.
cplx lu_det(const ComplexMatrix& m);

/// Solution of M x = b; throws DegenerateError on a zero pivot.
std::vector<cplx> lu_solve(const ComplexMatrix& m, std::span<const cplx> b);

}  // namespace perispec::linalg
