#pragma once

// JSON problem files and CSV grids.
//
// Problem file, schema "1":
//   {"schema_version": "1", "mode": "potential" | "spectral", "m": 2, "N": 6,
//    "entries": [{"gamma": 0, "n": 1, "re": 0.1, "im": 0.0}, ...]}
// Spectral entries use "j" in place of "gamma". Cells not listed are zero.

#include <iosfwd>
#include <string>
#include <vector>

#include "perispec/core.hpp"

namespace perispec::io {

enum class ProblemMode { potential, spectral };

struct ProblemEntry {
    int index = 0;  ///< gamma (potential) or j (spectral)
    int n = 0;
    cplx value;
    friend bool operator==(const ProblemEntry&, const ProblemEntry&) = default;
};

struct ProblemFile {
    std::string schema_version = "1";
    ProblemMode mode = ProblemMode::potential;
    int m = 1;
    int N = 1;
    std::vector<ProblemEntry> entries;
    friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

/// Throws InputError on malformed JSON, unknown schema, out-of-range or
/// duplicate indices.
ProblemFile parse_problem(const std::string& text);
std::string serialize_problem(const ProblemFile& f);

ProblemFile read_problem_file(const std::string& path);

PotentialCoefficients to_potential(const ProblemFile& f);
SpectralData to_spectral(const ProblemFile& f);
/// Every cell is listed, zeros included, in storage order.
ProblemFile from_potential(const PotentialCoefficients& p);
ProblemFile from_spectral(const SpectralData& S);

/// {"schema_version": "1", "kind": "vtable", "m", "N", "entries": [{j, n, alpha, re, im}]}
std::string serialize_vtable(const VTable& V);

/// RFC 4180 CSV with LF line endings; fields containing a comma, quote or
/// newline are quoted.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& os_;
};

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

}  // namespace perispec::io
