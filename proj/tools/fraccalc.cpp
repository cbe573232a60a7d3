// fraccalc: fractional-calculus operators, mean-value witnesses, a
// Nagumo-type uniqueness scan, and a fractional Adams solver behind one
// command-line front end. Machine output is deterministic: floats print
// with 17 significant digits in lowercase scientific notation.

#include "fraccalc/errors.hpp"
#include "fraccalc/expr.hpp"
#include "fraccalc/grid.hpp"
#include "fraccalc/ivp.hpp"
#include "fraccalc/mvt.hpp"
#include "fraccalc/nagumo.hpp"
#include "fraccalc/operators.hpp"
#include "fraccalc/special.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fraccalc;

// ---------------------------------------------------------------------------
// Output formatting
// ---------------------------------------------------------------------------

std::string fmt_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string fmt_pretty(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string json_escape(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
    return out;
}

// Flat JSON object assembled field by field; values arrive pre-rendered.
class JsonFields {
public:
    void raw(const std::string& key, const std::string& rendered)
    {
        if (!body_.empty())
            body_ += ',';
        body_ += json_escape(key) + ":" + rendered;
    }
    void num(const std::string& key, double v) { raw(key, fmt_num(v)); }
    void integer(const std::string& key, long long v) { raw(key, std::to_string(v)); }
    void str(const std::string& key, const std::string& v) { raw(key, json_escape(v)); }
    void boolean(const std::string& key, bool v) { raw(key, v ? "true" : "false"); }
    std::string str() const { return "{" + body_ + "}"; }

private:
    std::string body_;
};

enum class Format { Pretty, Csv, Json };

struct Output {
    Format format = Format::Pretty;
    std::string path; // empty: stdout

    void emit(const std::string& text) const
    {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw NumericError("cannot open output file: " + path);
        f << text;
    }
};

std::string wrap_json(const std::string& command, const JsonFields& params,
                      const std::string& result)
{
    JsonFields top;
    top.str("command", command);
    top.raw("params", params.str());
    top.raw("result", result);
    return top.str() + "\n";
}

// ---------------------------------------------------------------------------
// Shared option bundles
// ---------------------------------------------------------------------------

struct CommonOpts {
    std::string format = "pretty";
    std::string out;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--format", format, "Output format: pretty, csv, or json")
            ->check(CLI::IsMember({"pretty", "csv", "json"}))
            ->capture_default_str();
        cmd->add_option("--out", out, "Write output to a file instead of standard output");
    }

    Output output() const
    {
        Output o;
        o.format = format == "csv" ? Format::Csv : format == "json" ? Format::Json : Format::Pretty;
        o.path = out;
        return o;
    }
};

constexpr Eigen::Index kDefaultN = 1025;
constexpr double kDefaultTol = 1e-8;

Rhs2D parse_rhs(const std::string& spec, double alpha, double scale)
{
    std::string s = spec;
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);

    if (s.rfind("counterexample", 0) == 0) {
        std::string rest = s.substr(14);
        if (!rest.empty()) {
            if (rest.front() != '(' || rest.back() != ')')
                throw SyntaxError(14, "'(' ... ')' around the counterexample order");
            const double a = std::stod(rest.substr(1, rest.size() - 2));
            if (std::abs(a - alpha) > 1e-12)
                throw PreconditionError("counterexample order must match --alpha (got " + rest +
                                        ")");
        }
        return scale == 1.0 ? Rhs2D::counterexample(FracOrder(alpha))
                            : Rhs2D::scaled_counterexample(FracOrder(alpha), scale);
    }
    if (scale != 1.0)
        throw PreconditionError("--scale applies to the built-in counterexample only");
    return Rhs2D::from_expression(parse(s));
}

// ---------------------------------------------------------------------------
// Result renderers
// ---------------------------------------------------------------------------

std::string render_sampled(const std::string& command, const JsonFields& params,
                           const SampledFunction& fn, const Output& o, const char* label)
{
    std::ostringstream out;
    switch (o.format) {
    case Format::Csv:
        out << "x,value\n";
        for (Eigen::Index j = 0; j < fn.mesh.n; ++j)
            out << fmt_num(fn.mesh.node(j)) << ',' << fmt_num(fn.values[j]) << '\n';
        return out.str();
    case Format::Json: {
        std::string xs = "[", vs = "[";
        for (Eigen::Index j = 0; j < fn.mesh.n; ++j) {
            if (j) {
                xs += ',';
                vs += ',';
            }
            xs += fmt_num(fn.mesh.node(j));
            vs += fmt_num(fn.values[j]);
        }
        xs += ']';
        vs += ']';
        JsonFields res;
        res.raw("x", xs);
        res.raw("value", vs);
        return wrap_json(command, params, res.str());
    }
    case Format::Pretty:
        out << label << " on [" << fmt_pretty(fn.mesh.a) << ", " << fmt_pretty(fn.mesh.b) << "], "
            << fn.mesh.n << " nodes\n";
        out << "  value at " << fmt_pretty(fn.mesh.b) << ": "
            << fmt_pretty(fn.values[fn.mesh.n - 1]) << "\n";
        out << "  (use --format csv or json for the full sample)\n";
        return out.str();
    }
    return {};
}

std::string render_point(const std::string& command, const JsonFields& params, double x,
                         double value, const Output& o, const char* label)
{
    switch (o.format) {
    case Format::Csv:
        return "x,value\n" + fmt_num(x) + "," + fmt_num(value) + "\n";
    case Format::Json: {
        JsonFields res;
        res.num("x", x);
        res.num("value", value);
        return wrap_json(command, params, res.str());
    }
    case Format::Pretty:
        return std::string(label) + " at x = " + fmt_pretty(x) + ": " + fmt_pretty(value) + "\n";
    }
    return {};
}

std::string render_scalar(const std::string& command, const JsonFields& params, const char* name,
                          double value, const Output& o, const std::string& pretty_line)
{
    switch (o.format) {
    case Format::Csv:
        return std::string(name) + "\n" + fmt_num(value) + "\n";
    case Format::Json: {
        JsonFields res;
        res.num(name, value);
        return wrap_json(command, params, res.str());
    }
    case Format::Pretty:
        return pretty_line + "\n";
    }
    return {};
}

std::string render_witness(const std::string& command, const JsonFields& params, const Witness& w,
                           const Output& o, const std::string& headline)
{
    switch (o.format) {
    case Format::Csv: {
        std::ostringstream out;
        out << "xi,target,residual,lo,hi,degenerate\n";
        out << fmt_num(w.xi) << ',' << fmt_num(w.target) << ',' << fmt_num(w.residual) << ','
            << fmt_num(w.lo) << ',' << fmt_num(w.hi) << ',' << (w.degenerate ? 1 : 0) << '\n';
        return out.str();
    }
    case Format::Json: {
        JsonFields res;
        res.num("xi", w.xi);
        res.num("target", w.target);
        res.num("residual", w.residual);
        res.num("lo", w.lo);
        res.num("hi", w.hi);
        res.boolean("degenerate", w.degenerate);
        return wrap_json(command, params, res.str());
    }
    case Format::Pretty: {
        std::ostringstream out;
        out << headline << "\n";
        out << "  xi       = " << fmt_pretty(w.xi) << (w.degenerate ? "  (degenerate)" : "")
            << "\n";
        out << "  target   = " << fmt_pretty(w.target) << "\n";
        out << "  residual = " << fmt_pretty(w.residual) << "\n";
        out << "  bracket  = [" << fmt_pretty(w.lo) << ", " << fmt_pretty(w.hi) << "]\n";
        return out.str();
    }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Command wiring
// ---------------------------------------------------------------------------

int run(int argc, char** argv)
{
    CLI::App app{
        "fraccalc: Caputo/Riemann-Liouville fractional operators on uniform meshes,\n"
        "interior witnesses for the fractional mean value theorems, a sampled check\n"
        "of the Nagumo-type uniqueness bound, and a fractional Adams-Bashforth-\n"
        "Moulton solver for Caputo initial value problems.\n\n"
        "Expression syntax: decimal literals, pi, variables x and y, operators\n"
        "+ - * / ^ (right-associative ^), parentheses, calls sin cos exp ln abs\n"
        "sqrt pow gamma.\n\n"
        "Exit codes: 0 success, 2 argument or expression parse error, 3 numeric\n"
        "failure, 4 precondition violation."};
    app.require_subcommand(1);

    // ---- op ----------------------------------------------------------------
    auto* op = app.add_subcommand("op", "Apply a fractional operator to f on a mesh");
    op->require_subcommand(1);

    struct {
        std::string f;
        double alpha = 0.5, a = 0.0, b = 1.0;
        Eigen::Index n = kDefaultN;
        std::optional<double> at;
        std::string route = "smooth";
        CommonOpts common;
    } opo;

    auto add_mesh_opts = [](CLI::App* cmd, auto& st) {
        cmd->add_option("--f", st.f, "Expression for f(x)")->required();
        cmd->add_option("--alpha", st.alpha, "Fractional order")
            ->required()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--a", st.a, "Left endpoint / starting point")->capture_default_str();
        cmd->add_option("--b", st.b, "Right endpoint")->capture_default_str();
        cmd->add_option("--n", st.n, "Mesh node count")
            ->check(CLI::Range(Eigen::Index{2}, Eigen::Index{1} << 21))
            ->capture_default_str();
    };

    auto* rlint = op->add_subcommand(
        "rl-int", "Riemann-Liouville integral J^alpha f: integrates f against the kernel "
                  "(x-t)^(alpha-1)/Gamma(alpha) from a, by product-trapezoidal quadrature");
    add_mesh_opts(rlint, opo);
    rlint->add_option("--at", opo.at, "Report the value at the node nearest this point");
    opo.common.attach(rlint);

    auto* caputo = op->add_subcommand(
        "caputo", "Caputo derivative D^alpha f; --route smooth differentiates f symbolically "
                  "then integrates, --route definition works on sampled values (alpha <= 1)");
    add_mesh_opts(caputo, opo);
    caputo->add_option("--route", opo.route, "smooth | definition")
        ->check(CLI::IsMember({"smooth", "definition"}))
        ->capture_default_str();
    caputo->add_option("--at", opo.at, "Report the value at the node nearest this point");
    opo.common.attach(caputo);

    // ---- check ---------------------------------------------------------------
    auto* check = app.add_subcommand("check", "Residuals of operator identities");
    check->require_subcommand(1);

    struct {
        std::string f;
        double alpha = 0.5, a = 0.0, b = 1.0;
        Eigen::Index n = kDefaultN;
        CommonOpts common;
    } cko;

    auto* fund = check->add_subcommand(
        "fundamental", "Fundamental-theorem residual sup |D^alpha J^alpha f - f| over interior "
                       "nodes (the Caputo derivative inverts the fractional integral)");
    add_mesh_opts(fund, cko);
    cko.common.attach(fund);

    auto* taylr = check->add_subcommand(
        "taylor-remainder", "Fractional Taylor identity residual "
                            "sup |f - T_{ceil(alpha)-1}[f;a] - J^alpha D^alpha f|");
    add_mesh_opts(taylr, cko);
    cko.common.attach(taylr);

    // ---- mvt -----------------------------------------------------------------
    auto* mvt =
        app.add_subcommand("mvt", "Interior witnesses for the fractional mean value theorems");
    mvt->require_subcommand(1);

    struct {
        std::string f, g;
        double alpha = 0.5, a = 0.0, b = 1.0, tol = kDefaultTol;
        Eigen::Index n = kDefaultN;
        CommonOpts common;
    } mvo;

    auto* mvi = mvt->add_subcommand(
        "integral", "Integral mean value witness: finds xi in (a,b) with "
                    "J^alpha f(b) = (b-a)^alpha f(xi) / Gamma(alpha+1)");
    add_mesh_opts(mvi, mvo);
    mvi->add_option("--tol", mvo.tol, "Degenerate-witness tolerance")->capture_default_str();
    mvo.common.attach(mvi);

    auto* mvw = mvt->add_subcommand(
        "integral-weighted", "Weighted integral mean value witness: finds xi in (a,b) with "
                             "J^alpha (f g)(b) = f(xi) J^alpha g(b); g must not change sign");
    add_mesh_opts(mvw, mvo);
    mvw->add_option("--g", mvo.g, "Expression for the one-signed weight g(x)")->required();
    mvw->add_option("--tol", mvo.tol, "Degenerate-witness tolerance")->capture_default_str();
    mvo.common.attach(mvw);

    auto* mvd = mvt->add_subcommand(
        "differential",
        "Differential mean value witness: finds xi in (a,b) with D^alpha f(xi) = "
        "Gamma(alpha+1) (f(b) - T_{ceil(alpha)-1}[f;a](b)) / (b-a)^alpha");
    add_mesh_opts(mvd, mvo);
    mvd->add_option("--tol", mvo.tol, "Degenerate-witness tolerance")->capture_default_str();
    mvo.common.attach(mvd);

    // ---- nagumo ----------------------------------------------------------------
    auto* nag = app.add_subcommand("nagumo", "Uniqueness-bound scan and its sharp counterexample");
    nag->require_subcommand(1);

    struct {
        std::string rhs;
        double alpha = 0.5, b = 1.0, ylo = -1.0, yhi = 2.0, scale = 1.0, x = 0.0, y = 0.0;
        int nx = 101, ny = 101;
        CommonOpts common;
    } ngo;

    auto* nscan = nag->add_subcommand(
        "scan", "Scan the bound x^alpha |f(x,y1)-f(x,y2)| <= Gamma(alpha+1) |y1-y2| over a "
                "sampled grid; a finite certificate, not a proof");
    nscan->add_option("--rhs", ngo.rhs,
                      "f(x,y) expression, or 'counterexample' for the built-in piecewise rhs")
        ->required();
    nscan->add_option("--alpha", ngo.alpha, "Order in (0,1)")
        ->required()
        ->check(CLI::PositiveNumber);
    nscan->add_option("--b", ngo.b, "Right endpoint of the x range")->capture_default_str();
    nscan->add_option("--nx", ngo.nx, "Number of x samples")->capture_default_str();
    nscan->add_option("--ny", ngo.ny, "Number of y grid points")->capture_default_str();
    nscan->add_option("--ylo", ngo.ylo, "Lower end of the y grid")->capture_default_str();
    nscan->add_option("--yhi", ngo.yhi, "Upper end of the y grid")->capture_default_str();
    nscan->add_option("--scale", ngo.scale, "Scale factor for the built-in counterexample")
        ->capture_default_str();
    ngo.common.attach(nscan);

    auto* nce = nag->add_subcommand(
        "counterexample",
        "Evaluate the built-in discontinuous right-hand side at a point; its IVP from "
        "y(0)=0 satisfies the bound yet has infinitely many solutions");
    nce->add_option("--alpha", ngo.alpha, "Order in (0,1)")
        ->required()
        ->check(CLI::PositiveNumber);
    nce->add_option("--x", ngo.x, "x coordinate")->required();
    nce->add_option("--y", ngo.y, "y coordinate")->required();
    ngo.common.attach(nce);

    // ---- ivp -------------------------------------------------------------------
    auto* ivp =
        app.add_subcommand("ivp", "Caputo initial value problems D^alpha y = f(x,y), y(0) = y0");
    ivp->require_subcommand(1);

    struct {
        std::string rhs, candidate, exact_expr;
        double alpha = 0.5, b = 1.0, y0 = 0.0, scale = 1.0;
        std::optional<double> exact_ml;
        Eigen::Index n = 1024;
        int sweeps = 1;
        std::vector<Eigen::Index> n_list;
        std::vector<double> eps{1e-3, 1e-6};
        CommonOpts common;
    } ivo;

    auto add_ivp_opts = [&ivo](CLI::App* cmd) {
        cmd->add_option("--rhs", ivo.rhs,
                        "f(x,y) expression, or 'counterexample' for the built-in piecewise rhs")
            ->required();
        cmd->add_option("--alpha", ivo.alpha, "Order in (0,1]")
            ->required()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--b", ivo.b, "Right endpoint")->capture_default_str();
        cmd->add_option("--y0", ivo.y0, "Initial value y(0)")->capture_default_str();
        cmd->add_option("--scale", ivo.scale, "Scale factor for the built-in counterexample")
            ->capture_default_str();
    };

    auto* isolve = ivp->add_subcommand(
        "solve", "Fractional Adams-Bashforth-Moulton predictor-corrector (PECE) on the "
                 "Volterra form y = y0 + J^alpha f(., y)");
    add_ivp_opts(isolve);
    isolve->add_option("--n", ivo.n, "Number of steps")->capture_default_str();
    isolve->add_option("--sweeps", ivo.sweeps, "Corrector sweeps per step (1-10)")
        ->capture_default_str();
    ivo.common.attach(isolve);

    auto* iresid = ivp->add_subcommand(
        "residual", "Sup |D^alpha y - f(x, y)| over interior nodes for a candidate solution y(x)");
    add_ivp_opts(iresid);
    iresid->add_option("--candidate", ivo.candidate, "Candidate solution y(x)")->required();
    iresid->add_option("--n", ivo.n, "Verification mesh node count")->capture_default_str();
    ivo.common.attach(iresid);

    auto* ieoc = ivp->add_subcommand(
        "eoc", "Empirical order of convergence against an exact solution over a step ladder");
    add_ivp_opts(ieoc);
    ieoc->add_option("--n-list", ivo.n_list, "Comma-separated ascending step counts")
        ->delimiter(',')
        ->required();
    ieoc->add_option("--exact", ivo.exact_expr, "Exact solution expression y(x)");
    ieoc->add_option("--exact-ml", ivo.exact_ml,
                     "Exact solution y0*E_alpha(L*x^alpha) for D^alpha y = L*y; pass L");
    ivo.common.attach(ieoc);

    auto* iuniq = ivp->add_subcommand(
        "uniqueness", "Solve from y0 and from y0+eps, report sup of the gap functional "
                      "x^-alpha |y_eps - y|; for the built-in counterexample also report "
                      "residuals of the solution family c*x^alpha");
    add_ivp_opts(iuniq);
    iuniq->add_option("--n", ivo.n, "Number of steps")->capture_default_str();
    iuniq->add_option("--eps", ivo.eps, "Comma-separated perturbations")
        ->delimiter(',')
        ->capture_default_str();
    ivo.common.attach(iuniq);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the message
        return 2;
    }

    // ---- dispatch ---------------------------------------------------------------

    if (rlint->parsed() || caputo->parsed()) {
        const bool is_rl = rlint->parsed();
        const Output o = opo.common.output();
        const std::string command = is_rl ? "op rl-int" : "op caputo";
        const AstPtr f = parse(opo.f);
        const FracOrder order(opo.alpha);
        const Mesh mesh(opo.a, opo.b, opo.n);

        SampledFunction result = [&] {
            if (is_rl)
                return rl_integral(sample(mesh, *f), opo.alpha);
            if (opo.route == "smooth")
                return caputo_smooth(*f, order, mesh);
            const SampledFunction fs = sample(mesh, *f);
            const TaylorPoly t = taylor_poly(*f, mesh.a, order.ceil_m - 1);
            return caputo_definition(fs, order, t);
        }();

        JsonFields params;
        params.str("f", opo.f);
        params.num("alpha", opo.alpha);
        params.num("a", opo.a);
        params.num("b", opo.b);
        params.integer("n", opo.n);
        if (!is_rl)
            params.str("route", opo.route);
        const char* label = is_rl ? "J^alpha f" : "D^alpha f";
        if (opo.at) {
            Eigen::Index j = static_cast<Eigen::Index>(std::lround((*opo.at - mesh.a) / mesh.h));
            j = std::min(std::max(j, Eigen::Index{0}), mesh.n - 1);
            params.num("at", *opo.at);
            o.emit(render_point(command, params, mesh.node(j), result.values[j], o, label));
        } else {
            o.emit(render_sampled(command, params, result, o, label));
        }
        return 0;
    }

    if (fund->parsed() || taylr->parsed()) {
        const bool is_fund = fund->parsed();
        const Output o = cko.common.output();
        const std::string command = is_fund ? "check fundamental" : "check taylor-remainder";
        const AstPtr f = parse(cko.f);
        const FracOrder order(cko.alpha);
        const Mesh mesh(cko.a, cko.b, cko.n);
        const double r = is_fund ? fundamental_residual(*f, order, mesh)
                                 : taylor_remainder_residual(*f, order, mesh);
        JsonFields params;
        params.str("f", cko.f);
        params.num("alpha", cko.alpha);
        params.num("a", cko.a);
        params.num("b", cko.b);
        params.integer("n", cko.n);
        const std::string line = std::string(is_fund ? "fundamental-theorem" : "Taylor-identity") +
                                 " residual: " + fmt_pretty(r);
        o.emit(render_scalar(command, params, "residual", r, o, line));
        return 0;
    }

    if (mvi->parsed() || mvw->parsed() || mvd->parsed()) {
        const Output o = mvo.common.output();
        const AstPtr f = parse(mvo.f);
        const FracOrder order(mvo.alpha);
        std::string command;
        Witness w{};
        if (mvi->parsed()) {
            command = "mvt integral";
            w = simple_integral_mvt_witness(*f, order, mvo.a, mvo.b, mvo.n, mvo.tol);
        } else if (mvw->parsed()) {
            command = "mvt integral-weighted";
            const AstPtr g = parse(mvo.g);
            w = integral_mvt_witness(*f, *g, order, mvo.a, mvo.b, mvo.n, mvo.tol);
        } else {
            command = "mvt differential";
            w = differential_mvt_witness(*f, order, mvo.a, mvo.b, mvo.n, mvo.tol);
        }
        JsonFields params;
        params.str("f", mvo.f);
        if (mvw->parsed())
            params.str("g", mvo.g);
        params.num("alpha", mvo.alpha);
        params.num("a", mvo.a);
        params.num("b", mvo.b);
        params.integer("n", mvo.n);
        params.num("tol", mvo.tol);
        o.emit(render_witness(command, params, w, o, "mean-value witness in (a, b)"));
        return 0;
    }

    if (nscan->parsed()) {
        const Output o = ngo.common.output();
        const FracOrder order(ngo.alpha);
        const Rhs2D rhs = parse_rhs(ngo.rhs, ngo.alpha, ngo.scale);
        const NagumoReport rep = nagumo_scan(rhs, order, ngo.b, ngo.nx, ngo.ny, ngo.ylo, ngo.yhi);

        JsonFields params;
        params.str("rhs", rhs.description());
        params.num("alpha", ngo.alpha);
        params.num("b", ngo.b);
        params.integer("nx", ngo.nx);
        params.integer("ny", ngo.ny);
        params.num("ylo", ngo.ylo);
        params.num("yhi", ngo.yhi);

        switch (o.format) {
        case Format::Csv: {
            std::ostringstream out;
            out << "sup_ratio,satisfied,x,y1,y2,samples_used\n";
            out << fmt_num(rep.sup_ratio) << ',' << (rep.satisfied ? 1 : 0) << ',' << fmt_num(rep.x)
                << ',' << fmt_num(rep.y1) << ',' << fmt_num(rep.y2) << ',' << rep.samples_used
                << '\n';
            o.emit(out.str());
            break;
        }
        case Format::Json: {
            JsonFields res;
            res.num("sup_ratio", rep.sup_ratio);
            res.boolean("satisfied", rep.satisfied);
            JsonFields arg;
            arg.num("x", rep.x);
            arg.num("y1", rep.y1);
            arg.num("y2", rep.y2);
            res.raw("argmax", arg.str());
            res.integer("samples_used", rep.samples_used);
            o.emit(wrap_json("nagumo scan", params, res.str()));
            break;
        }
        case Format::Pretty: {
            std::ostringstream out;
            out << "uniqueness bound x^alpha |f(x,y1)-f(x,y2)| <= Gamma(alpha+1) |y1-y2|\n";
            out << "  sup ratio    = " << fmt_pretty(rep.sup_ratio) << "\n";
            out << "  satisfied    = " << (rep.satisfied ? "yes (on this sample)" : "no") << "\n";
            out << "  attained at  = (x, y1, y2) = (" << fmt_pretty(rep.x) << ", "
                << fmt_pretty(rep.y1) << ", " << fmt_pretty(rep.y2) << ")\n";
            out << "  triples used = " << rep.samples_used << "\n";
            o.emit(out.str());
            break;
        }
        }
        return 0;
    }

    if (nce->parsed()) {
        const Output o = ngo.common.output();
        const FracOrder order(ngo.alpha);
        const Rhs2D rhs = Rhs2D::counterexample(order);
        const double v = rhs(ngo.x, ngo.y);
        JsonFields params;
        params.num("alpha", ngo.alpha);
        params.num("x", ngo.x);
        params.num("y", ngo.y);
        switch (o.format) {
        case Format::Csv:
            o.emit("x,y,value\n" + fmt_num(ngo.x) + "," + fmt_num(ngo.y) + "," + fmt_num(v) + "\n");
            break;
        case Format::Json: {
            JsonFields res;
            res.num("value", v);
            o.emit(wrap_json("nagumo counterexample", params, res.str()));
            break;
        }
        case Format::Pretty:
            o.emit("counterexample rhs f(" + fmt_pretty(ngo.x) + ", " + fmt_pretty(ngo.y) +
                   ") = " + fmt_pretty(v) + "\n");
            break;
        }
        return 0;
    }

    if (isolve->parsed()) {
        const Output o = ivo.common.output();
        const FracOrder order(ivo.alpha);
        const IvpProblem prob(order, ivo.b, ivo.y0, parse_rhs(ivo.rhs, ivo.alpha, ivo.scale));
        const IvpSolution sol = solve_abm(prob, ivo.n, ivo.sweeps);
        JsonFields params;
        params.str("rhs", prob.rhs.description());
        params.num("alpha", ivo.alpha);
        params.num("b", ivo.b);
        params.num("y0", ivo.y0);
        params.integer("n", ivo.n);
        params.integer("sweeps", ivo.sweeps);
        const SampledFunction fn(sol.mesh, sol.y);
        o.emit(render_sampled("ivp solve", params, fn, o, "ABM solution y"));
        return 0;
    }

    if (iresid->parsed()) {
        const Output o = ivo.common.output();
        const FracOrder order(ivo.alpha);
        const IvpProblem prob(order, ivo.b, ivo.y0, parse_rhs(ivo.rhs, ivo.alpha, ivo.scale));
        const AstPtr cand = parse(ivo.candidate);
        const double r = residual_check(*cand, prob, ivo.n);
        JsonFields params;
        params.str("rhs", prob.rhs.description());
        params.str("candidate", ivo.candidate);
        params.num("alpha", ivo.alpha);
        params.num("b", ivo.b);
        params.num("y0", ivo.y0);
        params.integer("n", ivo.n);
        o.emit(render_scalar("ivp residual", params, "residual", r, o,
                             "equation residual sup |D^alpha y - f(x,y)|: " + fmt_pretty(r)));
        return 0;
    }

    if (ieoc->parsed()) {
        const Output o = ivo.common.output();
        const FracOrder order(ivo.alpha);
        const IvpProblem prob(order, ivo.b, ivo.y0, parse_rhs(ivo.rhs, ivo.alpha, ivo.scale));

        std::function<double(double)> exact;
        if (!ivo.exact_expr.empty()) {
            AstPtr e = parse(ivo.exact_expr);
            exact = [e](double x) { return eval(*e, x); };
        } else if (ivo.exact_ml) {
            const double lambda = *ivo.exact_ml;
            const double alpha = ivo.alpha;
            const double y0 = ivo.y0;
            exact = [lambda, alpha, y0](double x) {
                return y0 * mittag_leffler(alpha, lambda * std::pow(x, alpha));
            };
        } else {
            throw PreconditionError("ivp eoc: provide --exact or --exact-ml");
        }

        const auto rows = eoc_study(prob, exact, ivo.n_list);
        JsonFields params;
        params.str("rhs", prob.rhs.description());
        params.num("alpha", ivo.alpha);
        params.num("b", ivo.b);
        params.num("y0", ivo.y0);

        switch (o.format) {
        case Format::Csv: {
            std::ostringstream out;
            out << "steps,error,order,exact\n";
            for (const auto& r : rows) {
                out << r.steps << ',' << fmt_num(r.error) << ',';
                if (r.has_order)
                    out << fmt_num(r.order);
                out << ',' << (r.exact ? 1 : 0) << '\n';
            }
            o.emit(out.str());
            break;
        }
        case Format::Json: {
            std::string arr = "[";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i)
                    arr += ',';
                JsonFields row;
                row.integer("steps", rows[i].steps);
                row.num("error", rows[i].error);
                if (rows[i].has_order)
                    row.num("order", rows[i].order);
                else
                    row.raw("order", "null");
                row.boolean("exact", rows[i].exact);
                arr += row.str();
            }
            arr += ']';
            JsonFields res;
            res.raw("rows", arr);
            o.emit(wrap_json("ivp eoc", params, res.str()));
            break;
        }
        case Format::Pretty: {
            std::ostringstream out;
            out << "empirical order of convergence at x = b\n";
            for (const auto& r : rows) {
                out << "  steps " << r.steps << ": error = " << fmt_pretty(r.error);
                if (r.exact)
                    out << "  (exact at rounding level)";
                else if (r.has_order)
                    out << "  order = " << fmt_pretty(r.order);
                out << "\n";
            }
            o.emit(out.str());
            break;
        }
        }
        return 0;
    }

    if (iuniq->parsed()) {
        const Output o = ivo.common.output();
        const FracOrder order(ivo.alpha);
        const IvpProblem prob(order, ivo.b, ivo.y0, parse_rhs(ivo.rhs, ivo.alpha, ivo.scale));
        const UniquenessReport rep = uniqueness_experiment(prob, ivo.eps, ivo.n);

        JsonFields params;
        params.str("rhs", prob.rhs.description());
        params.num("alpha", ivo.alpha);
        params.num("b", ivo.b);
        params.num("y0", ivo.y0);
        params.integer("n", ivo.n);

        switch (o.format) {
        case Format::Csv: {
            std::ostringstream out;
            out << "kind,param,value\n";
            for (const auto& g : rep.gaps)
                out << "gap," << fmt_num(g.eps) << ',' << fmt_num(g.sup_gap) << '\n';
            for (const auto& fr : rep.family)
                out << "family," << fmt_num(fr.c) << ',' << fmt_num(fr.residual) << '\n';
            o.emit(out.str());
            break;
        }
        case Format::Json: {
            std::string gaps = "[";
            for (std::size_t i = 0; i < rep.gaps.size(); ++i) {
                if (i)
                    gaps += ',';
                JsonFields g;
                g.num("eps", rep.gaps[i].eps);
                g.num("sup_gap", rep.gaps[i].sup_gap);
                gaps += g.str();
            }
            gaps += ']';
            std::string fam = "[";
            for (std::size_t i = 0; i < rep.family.size(); ++i) {
                if (i)
                    fam += ',';
                JsonFields fr;
                fr.num("c", rep.family[i].c);
                fr.num("residual", rep.family[i].residual);
                fam += fr.str();
            }
            fam += ']';
            JsonFields res;
            res.raw("gaps", gaps);
            res.raw("family_residuals", fam);
            res.str("note", rep.note);
            o.emit(wrap_json("ivp uniqueness", params, res.str()));
            break;
        }
        case Format::Pretty: {
            std::ostringstream out;
            out << "uniqueness experiment\n";
            for (const auto& g : rep.gaps)
                out << "  eps = " << fmt_pretty(g.eps)
                    << ": sup gap x^-alpha |y_eps - y| = " << fmt_pretty(g.sup_gap) << "\n";
            if (!rep.family.empty()) {
                out << "  solution family y = c*x^alpha residuals:\n";
                for (const auto& fr : rep.family)
                    out << "    c = " << fmt_pretty(fr.c) << ": " << fmt_pretty(fr.residual)
                        << "\n";
            }
            out << "  note: " << rep.note << "\n";
            o.emit(out.str());
            break;
        }
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const fraccalc::SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fraccalc::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const fraccalc::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const fraccalc::EvalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
