#pragma once

// Potential -> (transformation table, spectral data).
//
// Column alpha of the table is filled in two passes: the off-diagonal
// entries V_{n alpha}, n < alpha, each follow from one scalar recurrence,
// after which the 2m-1 diagonal values V_{alpha alpha}^{(j)} solve a joint
// linear system (one equation per derivative order gamma).

#include <vector>

#include "perispec/core.hpp"
#include "perispec/polyalg.hpp"

namespace perispec {

struct ForwardResult {
    VTable vtable;
    SpectralData spectral;
};

/// One off-diagonal entry V_{n alpha}^{(j)}, n < alpha. Columns n..alpha-1
/// must be complete in V. Throws DegenerateError at a resonant index.
cplx offdiag_step(const PotentialCoefficients& p, const VTable& V, int n, int alpha, int j,
                  double tol = kDefaultDegenerateTol);

/// The diagonal values V_{alpha alpha}^{(j)}, j = 1..2m-1 (index j-1 in the
/// result). Needs columns < alpha complete and the off-diagonal part of
/// column alpha filled.
std::vector<cplx> diag_solve(const PotentialCoefficients& p, const VTable& V, int alpha,
                             const polyalg::DCoeffs& d, double cond_limit = 1e12);
std::vector<cplx> diag_solve(const PotentialCoefficients& p, const VTable& V, int alpha,
                             double cond_limit = 1e12);

/// Full table and spectral data S_{nj} = V_{nn}^{(j)} to the depth of p.
ForwardResult forward_map(const PotentialCoefficients& p, double tol = kDefaultDegenerateTol);

/// Half-line coefficients q_{gamma n} = (-1)^m (-i)^gamma p_{gamma n}.
PotentialCoefficients q_from_p(const PotentialCoefficients& p);
PotentialCoefficients p_from_q(const PotentialCoefficients& q);

}  // namespace perispec
