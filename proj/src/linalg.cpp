#include "perispec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "perispec/errors.hpp"

namespace perispec::linalg {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx a = (*this)(i, k);
            if (a == cplx{}) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

std::vector<cplx> ComplexMatrix::operator*(std::span<const cplx> x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector product: shape mismatch");
    std::vector<cplx> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        cplx acc{};
        for (std::size_t k = 0; k < cols_; ++k) acc += (*this)(i, k) * x[k];
        y[i] = acc;
    }
    return y;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix difference: shape mismatch");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

double ComplexMatrix::norm1() const {
    double best = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

LuDecomposition::LuDecomposition(ComplexMatrix a) : lu_(std::move(a)) {
    if (!lu_.square()) throw std::invalid_argument("LU: matrix must be square");
    const std::size_t n = lu_.rows();
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double v = std::abs(lu_(r, k));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) {
            if (singular_pivot_ < 0) singular_pivot_ = static_cast<int>(k);
            continue;
        }
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(lu_(k, c), lu_(piv, c));
            std::swap(perm_[k], perm_[piv]);
            ++swaps_;
        }
        const cplx inv_pivot = 1.0 / lu_(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const cplx f = lu_(r, k) * inv_pivot;
            lu_(r, k) = f;
            if (f == cplx{}) continue;
            for (std::size_t c = k + 1; c < n; ++c) lu_(r, c) -= f * lu_(k, c);
        }
    }
}

cplx LuDecomposition::determinant() const {
    if (singular()) return {};
    cplx det = (swaps_ % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t k = 0; k < lu_.rows(); ++k) det *= lu_(k, k);
    return det;
}

std::vector<cplx> LuDecomposition::solve(std::span<const cplx> b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) throw std::invalid_argument("LU solve: rhs size mismatch");
    if (singular())
        throw DegenerateError("singular matrix: zero pivot in column " +
                              std::to_string(singular_pivot_));
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc = b[perm_[i]];
        for (std::size_t k = 0; k < i; ++k) acc -= lu_(i, k) * x[k];
        x[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
        cplx acc = x[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= lu_(i, k) * x[k];
        x[i] = acc / lu_(i, i);
    }
    return x;
}

double LuDecomposition::condition_estimate(double a_norm1) const {
    if (singular()) return std::numeric_limits<double>::infinity();
    const std::size_t n = lu_.rows();
    double inv_norm = 0.0;
    std::vector<cplx> e(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::fill(e.begin(), e.end(), cplx{});
        e[c] = 1.0;
        const auto col = solve(e);
        double s = 0.0;
        for (const auto& v : col) s += std::abs(v);
        inv_norm = std::max(inv_norm, s);
    }
    return a_norm1 * inv_norm;
}

cplx lu_det(const ComplexMatrix& m) { return LuDecomposition(m).determinant(); }

std::vector<cplx> lu_solve(const ComplexMatrix& m, std::span<const cplx> b) {
    return LuDecomposition(m).solve(b);
}

}  // namespace perispec::linalg
