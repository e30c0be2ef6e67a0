#pragma once

// Truncations of the block operator built from spectral data, its
// determinant D(z) = det(E - F(z)), and zero scans over the upper half plane.

#include <string>
#include <vector>

#include "perispec/core.hpp"
#include "perispec/linalg.hpp"

namespace perispec {

enum class Plane { z, t };

/// Side N(2m-1) matrix; row (r, l) and column (n, j) sit at (r-1)J + (l-1)
/// and (n-1)J + (j-1). Entry
///   i(1-w_l) S_{nj} / (r w_l (1-w_j) - n(1-w_l)) * X,
/// with X = e^{inz} on the z-plane and X = e^{(a_{rl} w_l - a_{nj}) t} on
/// the t-plane (a_{nj} = n/(1-w_j)). Data beyond S.depth() count as zero.
linalg::ComplexMatrix f_matrix(const SpectralData& S, cplx arg, Plane plane, int N,
                               double tol = kDefaultDegenerateTol);

/// det(E - F_N(z)), z-plane.
cplx det_at(const SpectralData& S, cplx z, int N);

struct DeterminantReport {
    cplx z;
    std::vector<int> truncations;  ///< N at which D_N was evaluated
    std::vector<cplx> values;      ///< D_N, same order
    bool converged = false;
    cplx final;
    /// Sign convention of the operator, always det(E - F).
    std::string convention = "det(E\u2212F)";
};

/// D_N for every N in [n_min, n_max]. converged compares the last two.
/// Im z < 0 raises InputError.
DeterminantReport det_truncated(const SpectralData& S, cplx z, int n_min, int n_max, double tol);

/// Doubling schedule n_min, 2 n_min, ... up to cap. Once N reaches the
/// data depth further blocks are zero and D_N is exact, which counts as
/// converged.
DeterminantReport det_adaptive(const SpectralData& S, cplx z, double tol, int n_min = 4,
                               int cap = 256);

struct GridPoint {
    cplx z;
    cplx D;
    bool converged = true;
};

struct ScanReport {
    std::vector<GridPoint> grid;  ///< row-major: imaginary part outer, real part inner
    double min_modulus = 0.0;
    cplx argmin;
    bool zero_free = false;
    int winding = 0;
    double boundary_min = 0.0;  ///< smallest |D| met while tracking the boundary
    std::vector<cplx> unconverged;
};

struct ScanOptions {
    int re_steps = 64;
    double im_max = 10.0;
    int im_steps = 40;
    double tol = 1e-6;
    int max_blocks = 256;  ///< cap of the doubling schedule
    int threads = 0;  ///< 0 picks hardware concurrency
};

/// Grid over [0, 2pi] x [0, im_max] plus the winding number of D around
/// that rectangle.
ScanReport scan_halfplane(const SpectralData& S, const ScanOptions& opt);

/// Winding number of D around the rectangle [0, 2pi] x [0, im_max],
/// tracked with adaptive refinement of the boundary. Also returns the
/// smallest |D| met on the boundary through boundary_min.
int winding_number(const SpectralData& S, double im_max, double tol, double* boundary_min = nullptr,
                   int max_blocks = 256);

/// Solves (E - F(0)) g = rhs at truncation N. Throws DegenerateError when
/// |D(0)| <= tol.
std::vector<cplx> solve_at_zero(const SpectralData& S, const std::vector<cplx>& rhs, int N,
                                  double tol = 1e-12);

}  // namespace perispec
