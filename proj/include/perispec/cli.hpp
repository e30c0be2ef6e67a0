#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "perispec/core.hpp"

namespace perispec::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kDegenerate = 2,
    kNonConvergence = 3,
    kVerificationFailed = 4,
};

/// Runs the command line given without the program name, e.g.
/// {"forward", "--input", "p.json"}. Data go to `out` unless --output names
/// a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    int depth = 0;  ///< 0 keeps the depth of the input
    double round_trip_tol = 1e-8;
    double residual_tol = 1e-9;
    double q0_tol = 1e-7;
    double ode_ratio = 0.6;
    double det_tol = 1e-6;
};

/// The full consistency battery on one potential.
std::vector<Check> verify_potential(const PotentialCoefficients& p, const VerifyOptions& opt);

}  // namespace perispec::cli
