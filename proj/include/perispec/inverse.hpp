#pragma once

// Spectral data -> transformation table -> potential, and the classical
// sufficient conditions on the data.

#include <optional>
#include <vector>

#include "perispec/core.hpp"

namespace perispec {

/// One off-diagonal entry of the table built from spectral data:
///   V_{n,n+b}^{(j)} = -i (1-w_j) S_{nj} sum_l sum_{r<=b} V_{rb}^{(l)} / (r(1-w_j) - n(1-w_l) w_j).
/// Needs column b of V complete. A target column beyond V's depth raises
/// TruncationError carrying the depth that would be required.
cplx inverse_step(const SpectralData& S, const VTable& V, int n, int alpha, int j,
                  double tol = kDefaultDegenerateTol);

/// Table to the depth of S.
VTable v_from_s(const SpectralData& S, double tol = kDefaultDegenerateTol);
/// Table to an explicit depth; data beyond S.depth() are taken as zero.
VTable v_from_s(const SpectralData& S, int depth, double tol = kDefaultDegenerateTol);

/// Potential coefficients to the depth of V, gamma in descending order per column.
PotentialCoefficients p_from_v(const VTable& V);

PotentialCoefficients inverse_map(const SpectralData& S, double tol = kDefaultDegenerateTol);

struct SummabilityReport {
    double sum = 0.0;
    std::vector<double> terms;  ///< n * S~_n, index n-1
    /// Slope of log(term) against n over the last quarter of nonzero terms;
    /// empty with fewer than two such terms.
    std::optional<double> tail_rate;
};

/// Partial sum of n * S~_n.
SummabilityReport summability(const SpectralData& S);

struct ContractionReport {
    double condition_I = 0.0;     ///< sum n S~_n
    double condition_II_p = 0.0;  ///< 4^{m-1} a_m sum S~_n / (n+1)
    double a_m = 0.0;
    bool contraction = false;     ///< condition_II_p < 1
};

ContractionReport contraction_conditions(const SpectralData& S, double a_m);

}  // namespace perispec
