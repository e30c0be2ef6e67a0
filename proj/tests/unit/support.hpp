#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "perispec/core.hpp"

namespace testsupport {

using perispec::cplx;

// Coefficients with |c_n| <= scale * 2^-n and uniformly random phase.
inline perispec::PotentialCoefficients random_potential(int m, int N, double scale,
                                                        std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    perispec::PotentialCoefficients p(perispec::Order(m), N);
    for (int g = 0; g < p.gamma_count(); ++g)
        for (int n = 1; n <= N; ++n)
            p.at(g, n) = std::polar(scale * std::ldexp(u(rng), -n), 2 * std::numbers::pi * u(rng));
    return p;
}

inline perispec::SpectralData random_spectral(int m, int N, double scale, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    perispec::SpectralData S(perispec::Order(m), N);
    for (int n = 1; n <= N; ++n)
        for (int j = 1; j <= S.order().J(); ++j)
            S.at(n, j) = std::polar(scale * std::ldexp(u(rng), -n), 2 * std::numbers::pi * u(rng));
    return S;
}

inline double max_diff(const perispec::PotentialCoefficients& a,
                       const perispec::PotentialCoefficients& b) {
    double e = 0.0;
    for (int g = 0; g < a.gamma_count(); ++g)
        for (int n = 1; n <= a.depth(); ++n) e = std::max(e, std::abs(a(g, n) - b(g, n)));
    return e;
}

inline double max_diff(const perispec::SpectralData& a, const perispec::SpectralData& b) {
    double e = 0.0;
    for (int n = 1; n <= a.depth(); ++n)
        for (int j = 1; j <= a.order().J(); ++j) e = std::max(e, std::abs(a(n, j) - b(n, j)));
    return e;
}

inline double max_diff(const perispec::VTable& a, const perispec::VTable& b) {
    double e = 0.0;
    for (int j = 1; j <= a.order().J(); ++j)
        for (int al = 1; al <= a.depth(); ++al)
            for (int n = 1; n <= al; ++n) e = std::max(e, std::abs(a(j, n, al) - b(j, n, al)));
    return e;
}

inline bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace testsupport
