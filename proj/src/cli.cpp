#include "perispec/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "perispec/analytic.hpp"
#include "perispec/errors.hpp"
#include "perispec/forward.hpp"
#include "perispec/fredholm.hpp"
#include "perispec/inverse.hpp"
#include "perispec/io.hpp"

namespace perispec::cli {

using nlohmann::json;

namespace {

json complex_json(cplx v) { return {{"re", v.real()}, {"im", v.imag()}}; }

// Finite doubles as numbers, anything else as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void emit(const std::string& path, const std::string& content, std::ostream& fallback) {
    if (path.empty()) {
        fallback << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open output file " + path);
    f << content;
    if (!f) throw InputError("failed writing " + path);
}

double spectral_diff(const SpectralData& a, const SpectralData& b) {
    double e = 0.0;
    for (int n = 1; n <= a.depth(); ++n)
        for (int j = 1; j <= a.order().J(); ++j) e = std::max(e, std::abs(a(n, j) - b(n, j)));
    return e;
}

double potential_diff(const PotentialCoefficients& a, const PotentialCoefficients& b) {
    double e = 0.0;
    for (int g = 0; g < a.gamma_count(); ++g)
        for (int n = 1; n <= a.depth(); ++n) e = std::max(e, std::abs(a(g, n) - b(g, n)));
    return e;
}

struct Globals {
    std::string input, output, report;
    std::optional<double> tol;
};

int cmd_forward(const Globals& g, const std::string& emit_v, std::ostream& out) {
    const auto p = io::to_potential(io::read_problem_file(g.input));
    const auto res = forward_map(p, g.tol.value_or(kDefaultDegenerateTol));
    emit(g.output, io::serialize_problem(io::from_spectral(res.spectral)), out);
    if (!emit_v.empty()) emit(emit_v, io::serialize_vtable(res.vtable), out);
    return kOk;
}

int cmd_inverse(const Globals& g, int am_cap, std::ostream& out, std::ostream& err) {
    const auto S = io::to_spectral(io::read_problem_file(g.input));
    const auto p = inverse_map(S, g.tol.value_or(kDefaultDegenerateTol));
    emit(g.output, io::serialize_problem(io::from_potential(p)), out);

    const auto sums = summability(S);
    json rep;
    rep["summability"] = {{"sum", sums.sum},
                           {"terms", sums.terms},
                           {"tail_rate", sums.tail_rate ? json(*sums.tail_rate) : json(nullptr)}};
    json cond;
    try {
        const auto am = a_m_constant(S.order(), am_cap);
        const auto gr = contraction_conditions(S, am.value);
        cond = {{"condition_I", gr.condition_I},
               {"condition_II_p", gr.condition_II_p},
               {"contraction", gr.contraction},
               {"a_m", am.value},
               {"a_m_cap", am.cap},
               {"a_m_argmax", {am.argmax.j, am.argmax.l, am.argmax.n, am.argmax.r}},
               {"a_m_ordered", am.ordered_value}};
        if (!gr.contraction)
            err << "warning: contraction constant p = " << gr.condition_II_p
                << " >= 1; existence is not guaranteed by the sufficient conditions\n";
    } catch (const DegenerateError& e) {
        cond = {{"error", e.what()}};
        err << "warning: a_m is unbounded (" << e.what() << ")\n";
    }
    rep["contraction"] = std::move(cond);
    if (!g.report.empty()) emit(g.report, rep.dump(2) + "\n", out);
    return kOk;
}

int cmd_det(const Globals& g, const ScanOptions& base, std::ostream& out, std::ostream& err) {
    const auto S = io::to_spectral(io::read_problem_file(g.input));
    ScanOptions opt = base;
    if (g.tol) opt.tol = *g.tol;
    const auto rep = scan_halfplane(S, opt);

    std::ostringstream csv;
    io::CsvWriter w(csv);
    w.row({"re(z)", "im(z)", "re(D)", "im(D)", "|D|"});
    for (const auto& pt : rep.grid)
        w.row({io::format_double(pt.z.real()), io::format_double(pt.z.imag()),
               io::format_double(pt.D.real()), io::format_double(pt.D.imag()),
               io::format_double(std::abs(pt.D))});
    emit(g.output, csv.str(), out);

    json unconverged = json::array();
    for (const auto& z : rep.unconverged) unconverged.push_back(complex_json(z));
    const json verdict = {{"zero_free", rep.zero_free},
                          {"min_modulus", number_or_null(rep.min_modulus)},
                          {"argmin", complex_json(rep.argmin)},
                          {"winding", rep.winding},
                          {"boundary_min", number_or_null(rep.boundary_min)},
                          {"convention", DeterminantReport{}.convention},
                          {"tol", opt.tol},
                          {"grid",
                           {{"re_steps", opt.re_steps},
                            {"im_max", opt.im_max},
                            {"im_steps", opt.im_steps}}},
                          {"unconverged", std::move(unconverged)}};
    if (g.report.empty())
        err << verdict.dump(2) << "\n";
    else
        emit(g.report, verdict.dump(2) + "\n", out);

    if (!rep.unconverged.empty()) {
        err << "determinant did not converge at " << rep.unconverged.size() << " grid point(s)\n";
        return kNonConvergence;
    }
    return kOk;
}

int cmd_verify(const Globals& g, VerifyOptions opt, std::ostream& out, std::ostream& err) {
    const auto p = io::to_potential(io::read_problem_file(g.input));
    if (g.tol) opt.round_trip_tol = *g.tol;
    const auto checks = verify_potential(p, opt);

    json arr = json::array();
    bool all = true;
    std::string failed;
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"value", number_or_null(c.value)},
                       {"threshold", c.threshold},
                       {"pass", c.pass},
                       {"detail", c.detail}});
        if (!c.pass) {
            all = false;
            failed += (failed.empty() ? "" : ", ") + c.name;
        }
    }
    const json card = {{"checks", std::move(arr)}, {"all_pass", all}};
    emit(g.output, card.dump(2) + "\n", out);
    if (!g.report.empty()) emit(g.report, card.dump(2) + "\n", out);
    if (!all) {
        err << "verification failed: " << failed << "\n";
        return kVerificationFailed;
    }
    return kOk;
}

}  // namespace

std::vector<Check> verify_potential(const PotentialCoefficients& p_in, const VerifyOptions& opt) {
    const PotentialCoefficients p = opt.depth > 0 ? p_in.resized(opt.depth) : p_in;
    const Order& order = p.order();
    const int N = p.depth();
    const auto fr = forward_map(p);
    std::vector<Check> checks;
    auto add = [&](std::string name, double value, double threshold, std::string detail = {}) {
        checks.push_back({std::move(name), value, threshold, value <= threshold, std::move(detail)});
    };

    add("round_trip", potential_diff(inverse_map(fr.spectral), p), opt.round_trip_tol,
        "max |p - inverse(forward(p))|");

    double march = 0.0;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            const double t = 0.75 * a;
            const double u = t + (3.0 - t) * b / 4.0;
            march = std::max(march, std::abs(marchenko_residual(fr.vtable, fr.spectral, t, u)));
        }
    add("marchenko", march, opt.residual_tol, "5x5 grid, 0 <= t <= u <= 3");

    double jump = 0.0;
    for (int n = 1; n <= std::max(1, N / 2); ++n)
        for (int j = 1; j <= order.J(); ++j)
            for (double t : {0.0, 0.5, 2.0}) {
                const auto c = jump_relation_check(fr.vtable, fr.spectral, t, n, j);
                jump = std::max(jump, c.scale > 0.0 ? c.gap / c.scale : c.gap);
            }
    add("jump_relation", jump, opt.residual_tol, "gap / term scale, n <= N/2");

    double shift = 0.0;
    for (cplx a : {cplx(0.3, 0.0), cplx(0.0, 1.0), cplx(0.5, 0.5)})
        shift = std::max(shift, spectral_diff(forward_map(shift_potential(p, a)).spectral,
                                              shift_spectral(fr.spectral, a)));
    add("translation", shift, opt.residual_tol, "a in {0.3, i, 0.5+0.5i}");

    // Residual of the series solution at depths N, N+2, N+4, N+6.
    constexpr double kFloor = 1e-12;
    double worst = 0.0;
    const std::array<std::pair<double, cplx>, 3> samples = {
        std::pair{0.7, cplx(0.3, 0.4)}, std::pair{2.1, cplx(-0.6, 0.2)}, std::pair{4.0, cplx(0.9, 0.7)}};
    std::vector<VTable> tables;
    for (int M = N; M <= N + 6; M += 2) tables.push_back(forward_map(p.resized(M)).vtable);
    for (const auto& [x, lam] : samples) {
        double prev = ode_residual(p, tables[0], x, lam);
        for (std::size_t k = 1; k < tables.size(); ++k) {
            const double cur = ode_residual(p, tables[k], x, lam);
            if (cur > kFloor) worst = std::max(worst, prev > 0.0 ? cur / prev : 1.0);
            prev = cur;
        }
    }
    add("ode_residual", worst, opt.ode_ratio, "worst ratio per +2 depth (residuals below 1e-12 ignored)");

    ScanOptions so;
    so.tol = opt.det_tol;
    const auto scan = scan_halfplane(fr.spectral, so);
    checks.push_back({"determinant", scan.min_modulus, opt.det_tol, scan.zero_free,
                      "min |D| on [0,2pi]x[0,10], winding " + std::to_string(scan.winding)});

    const auto q0 = q0_modes(fr.vtable);
    const auto q = q_from_p(p);
    double qerr = 0.0;
    for (int a = 1; a <= N; ++a) qerr = std::max(qerr, std::abs(q0[a] - q(order.J() - 1, a)));
    add("q0_trace", qerr, opt.q0_tol, "max mode gap against Q_{2m-2}");
    return checks;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Forward and inverse spectral maps for order-2m operators with periodic coefficients",
                 "perispec"};
    app.require_subcommand(1);
    Globals g;
    double tol = std::numeric_limits<double>::quiet_NaN();
    app.add_option("--input", g.input, "Problem file (JSON)");
    app.add_option("--output", g.output, "Output file (default: stdout)");
    app.add_option("--report", g.report, "Report file (JSON)");
    app.add_option("--tol", tol, "Tolerance (meaning depends on the command)");

    auto* fwd = app.add_subcommand("forward", "Potential -> spectral data");
    std::string emit_v;
    fwd->add_option("--emit-v", emit_v, "Also write the transformation table here");

    auto* inv = app.add_subcommand("inverse", "Spectral data -> potential");
    int am_cap = 50;
    inv->add_option("--am-cap", am_cap, "Index cap for the a_m enumeration")->capture_default_str();

    auto* det = app.add_subcommand("det", "Scan D(z) over [0, 2pi] x [0, im-max]");
    ScanOptions so;
    det->add_option("--re-steps", so.re_steps)->capture_default_str();
    det->add_option("--im-max", so.im_max)->capture_default_str();
    det->add_option("--im-steps", so.im_steps)->capture_default_str();
    det->add_option("--max-blocks", so.max_blocks, "Cap of the truncation schedule")
        ->capture_default_str();
    det->add_option("--threads", so.threads, "Worker threads (0: hardware)")->capture_default_str();

    auto* ver = app.add_subcommand("verify", "Run the consistency battery on a potential");
    VerifyOptions vo;
    ver->add_option("--depth", vo.depth, "Truncation depth (0: input N)")->capture_default_str();
    ver->add_option("--residual-tol", vo.residual_tol)->capture_default_str();
    ver->add_option("--q0-tol", vo.q0_tol)->capture_default_str();
    ver->add_option("--ode-ratio", vo.ode_ratio)->capture_default_str();
    ver->add_option("--det-tol", vo.det_tol)->capture_default_str();

    for (auto* sub : {fwd, inv, det, ver}) sub->fallthrough();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }
    if (!std::isnan(tol)) {
        if (!(tol > 0.0)) {
            err << "error: --tol must be positive\n";
            return kInputError;
        }
        g.tol = tol;
    }
    if (g.input.empty()) {
        err << "error: --input is required\n";
        return kInputError;
    }

    try {
        if (fwd->parsed()) return cmd_forward(g, emit_v, out);
        if (inv->parsed()) return cmd_inverse(g, am_cap, out, err);
        if (det->parsed()) return cmd_det(g, so, out, err);
        return cmd_verify(g, vo, out, err);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const DegenerateError& e) {
        err << "degenerate: " << e.what() << "\n";
        return kDegenerate;
    } catch (const ConvergenceError& e) {
        err << "no convergence: " << e.what() << "\n";
        return kNonConvergence;
    } catch (const std::out_of_range& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace perispec::cli
