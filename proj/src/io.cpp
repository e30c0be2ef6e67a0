#include "perispec/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "perispec/errors.hpp"

namespace perispec::io {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(std::string("missing field \"") + key + "\"");
    return *it;
}

int require_int(const json& obj, const char* key) {
    const json& v = require(obj, key);
    if (!v.is_number_integer()) throw InputError(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

double require_double(const json& obj, const char* key) {
    const json& v = require(obj, key);
    if (!v.is_number()) throw InputError(std::string("field \"") + key + "\" must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw InputError(std::string("field \"") + key + "\" is not finite");
    return d;
}

json complex_fields(json obj, cplx v) {
    obj["re"] = v.real();
    obj["im"] = v.imag();
    return obj;
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("problem file must be a JSON object");

    ProblemFile f;
    const json& ver = require(doc, "schema_version");
    if (!ver.is_string() || ver.get<std::string>() != "1")
        throw InputError("unsupported schema_version (expected \"1\")");
    const json& mode = require(doc, "mode");
    if (mode == "potential")
        f.mode = ProblemMode::potential;
    else if (mode == "spectral")
        f.mode = ProblemMode::spectral;
    else
        throw InputError("mode must be \"potential\" or \"spectral\"");

    f.m = require_int(doc, "m");
    if (f.m < 1 || f.m > Order::max_m)
        throw InputError("m = " + std::to_string(f.m) + " outside 1.." + std::to_string(Order::max_m));
    f.N = require_int(doc, "N");
    if (f.N < 1) throw InputError("N must be >= 1");

    const json& entries = require(doc, "entries");
    if (!entries.is_array()) throw InputError("\"entries\" must be an array");
    const bool pot = f.mode == ProblemMode::potential;
    const char* key = pot ? "gamma" : "j";
    const char* other = pot ? "j" : "gamma";
    const int lo = pot ? 0 : 1, hi = pot ? 2 * f.m - 2 : 2 * f.m - 1;
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const json& e = entries[i];
        const std::string where = "entry " + std::to_string(i) + ": ";
        if (!e.is_object()) throw InputError(where + "must be an object");
        if (e.contains(other))
            throw InputError(where + "field \"" + other + "\" does not belong to mode " +
                             mode.get<std::string>());
        ProblemEntry pe;
        try {
            pe.index = require_int(e, key);
            pe.n = require_int(e, "n");
            pe.value = {require_double(e, "re"), require_double(e, "im")};
        } catch (const InputError& err) {
            throw InputError(where + err.what());
        }
        if (pe.index < lo || pe.index > hi)
            throw InputError(where + key + " = " + std::to_string(pe.index) + " outside " +
                             std::to_string(lo) + ".." + std::to_string(hi));
        if (pe.n < 1 || pe.n > f.N)
            throw InputError(where + "n = " + std::to_string(pe.n) + " outside 1.." +
                             std::to_string(f.N));
        if (!seen.emplace(pe.index, pe.n).second)
            throw InputError(where + "duplicate (" + key + ", n) = (" + std::to_string(pe.index) +
                             ", " + std::to_string(pe.n) + ")");
        f.entries.push_back(pe);
    }
    return f;
}

std::string serialize_problem(const ProblemFile& f) {
    const bool pot = f.mode == ProblemMode::potential;
    json doc;
    doc["schema_version"] = f.schema_version;
    doc["mode"] = pot ? "potential" : "spectral";
    doc["m"] = f.m;
    doc["N"] = f.N;
    json entries = json::array();
    for (const auto& e : f.entries) {
        json obj;
        obj[pot ? "gamma" : "j"] = e.index;
        obj["n"] = e.n;
        entries.push_back(complex_fields(std::move(obj), e.value));
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
}

ProblemFile read_problem_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

PotentialCoefficients to_potential(const ProblemFile& f) {
    if (f.mode != ProblemMode::potential) throw InputError("expected a potential problem file");
    PotentialCoefficients p(Order(f.m), f.N);
    for (const auto& e : f.entries) p.at(e.index, e.n) = e.value;
    return p;
}

SpectralData to_spectral(const ProblemFile& f) {
    if (f.mode != ProblemMode::spectral) throw InputError("expected a spectral problem file");
    SpectralData S(Order(f.m), f.N);
    for (const auto& e : f.entries) S.at(e.n, e.index) = e.value;
    return S;
}

ProblemFile from_potential(const PotentialCoefficients& p) {
    ProblemFile f;
    f.mode = ProblemMode::potential;
    f.m = p.order().m();
    f.N = p.depth();
    for (int g = 0; g < p.gamma_count(); ++g)
        for (int n = 1; n <= p.depth(); ++n) f.entries.push_back({g, n, p(g, n)});
    return f;
}

ProblemFile from_spectral(const SpectralData& S) {
    ProblemFile f;
    f.mode = ProblemMode::spectral;
    f.m = S.order().m();
    f.N = S.depth();
    for (int n = 1; n <= S.depth(); ++n)
        for (int j = 1; j <= S.order().J(); ++j) f.entries.push_back({j, n, S(n, j)});
    return f;
}

std::string serialize_vtable(const VTable& V) {
    json doc;
    doc["schema_version"] = "1";
    doc["kind"] = "vtable";
    doc["m"] = V.order().m();
    doc["N"] = V.depth();
    json entries = json::array();
    for (int j = 1; j <= V.order().J(); ++j)
        for (int alpha = 1; alpha <= V.depth(); ++alpha)
            for (int n = 1; n <= alpha; ++n)
                entries.push_back(complex_fields({{"j", j}, {"n", n}, {"alpha", alpha}}, V(j, n, alpha)));
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os_ << ',';
        const std::string& s = fields[i];
        if (s.find_first_of(",\"\r\n") == std::string::npos) {
            os_ << s;
            continue;
        }
        os_ << '"';
        for (char c : s) {
            if (c == '"') os_ << '"';
            os_ << c;
        }
        os_ << '"';
    }
    os_ << '\n';
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace perispec::io
