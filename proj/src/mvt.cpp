#include "fraccalc/mvt.hpp"
#include "fraccalc/operators.hpp"
#include "fraccalc/special.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace fraccalc {

namespace {

struct Bracket {
    double lo, hi;
};

// Bisection on point_value(t) - target over a strict sign-change bracket.
Witness bisect_witness(const std::function<double(double)>& point_value, double target,
                       Bracket br, double span)
{
    const double eps = 1e-12 * span;
    double lo = br.lo, hi = br.hi;
    double flo = point_value(lo) - target;
    for (int iter = 0; iter < 200 && hi - lo > eps; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = point_value(mid) - target;
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    const double xi = 0.5 * (lo + hi);
    return Witness{xi, target, 0.0, lo, hi, false};
}

// Leftmost sign-change scan with degenerate near-hit fallback and two
// tenfold scan refinements before giving up.
//
// sample_values(mesh) returns the probed function on that mesh;
// point_value(t) evaluates it at a single point for the bisection.
Witness find_witness(double a, double x, Eigen::Index n, double target, double tol,
                     const std::function<Eigen::ArrayXd(const Mesh&)>& sample_values,
                     const std::function<double(double)>& point_value)
{
    const double span = x - a;
    for (int refinement = 0; refinement <= 2; ++refinement) {
        Eigen::Index scan_n = n;
        for (int r = 0; r < refinement; ++r)
            scan_n = (scan_n - 1) * 10 + 1;
        const Mesh mesh(a, x, scan_n);
        const Eigen::ArrayXd values = sample_values(mesh);

        for (Eigen::Index j = 0; j + 1 < scan_n; ++j) {
            const double lo = values[j] - target;
            const double hi = values[j + 1] - target;
            if ((lo < 0.0 && hi > 0.0) || (lo > 0.0 && hi < 0.0)) {
                Witness w = bisect_witness(point_value, target,
                                           Bracket{mesh.node(j), mesh.node(j + 1)}, span);
                w.residual = std::abs(point_value(w.xi) - target);
                return w;
            }
        }

        // No bracket: accept an interior node that already attains the
        // target within tolerance. Ties resolve toward the midpoint.
        Eigen::Index best = -1;
        double best_defect = std::numeric_limits<double>::infinity();
        const double mid_index = 0.5 * static_cast<double>(scan_n - 1);
        for (Eigen::Index j = 1; j + 1 < scan_n; ++j) {
            const double defect = std::abs(values[j] - target);
            const bool closer_tie =
                defect == best_defect &&
                std::abs(static_cast<double>(j) - mid_index) <
                    std::abs(static_cast<double>(best) - mid_index);
            if (defect < best_defect || closer_tie) {
                best_defect = defect;
                best = j;
            }
        }
        if (best >= 0 && best_defect <= tol) {
            const double xi = mesh.node(best);
            return Witness{xi, target, best_defect, xi, xi, true};
        }
    }
    throw NumericError("no mean-value witness bracketed at 100x scan refinement; "
                       "quadrature error likely exceeds the requested tolerance");
}

} // namespace

Witness integral_mvt_witness(const Ast& f, const Ast& g, const FracOrder& order, double a,
                             double x, Eigen::Index n, double tol)
{
    if (!(x > a))
        throw PreconditionError("integral_mvt_witness: need x > a");
    const Mesh mesh(a, x, n);
    const SampledFunction fs = sample(mesh, f);
    const SampledFunction gs = sample(mesh, g);

    constexpr double sign_tol = 1e-12;
    const bool has_pos = (gs.values > sign_tol).any();
    const bool has_neg = (gs.values < -sign_tol).any();
    if (has_pos && has_neg)
        throw PreconditionError("integral_mvt_witness: g changes sign on [a, x]");

    if (!has_pos && !has_neg) {
        // g vanishes identically: both sides of the identity are zero.
        const double xi = 0.5 * (a + x);
        return Witness{xi, eval(f, xi), 0.0, xi, xi, true};
    }

    const SampledFunction fg(mesh, fs.values * gs.values);
    const double L = rl_integral(fg, order.alpha).values[n - 1];
    const double G = rl_integral(gs, order.alpha).values[n - 1];
    const double target = L / G;

    auto point = [&f](double t) { return eval(f, t); };
    Witness w = find_witness(
        a, x, n, target, tol,
        [&f](const Mesh& m) { return sample(m, f).values; }, point);
    w.residual = std::abs(L - eval(f, w.xi) * G);
    return w;
}

Witness simple_integral_mvt_witness(const Ast& f, const FracOrder& order, double a, double b,
                                    Eigen::Index n, double tol)
{
    if (!(b > a))
        throw PreconditionError("simple_integral_mvt_witness: need b > a");
    const Mesh mesh(a, b, n);
    const SampledFunction fs = sample(mesh, f);
    const double L = rl_integral(fs, order.alpha).values[n - 1];
    const double span_pow = std::pow(b - a, order.alpha);
    const double ga1 = gammafn(order.alpha + 1.0);
    const double target = ga1 * L / span_pow;

    auto point = [&f](double t) { return eval(f, t); };
    Witness w = find_witness(
        a, b, n, target, tol,
        [&f](const Mesh& m) { return sample(m, f).values; }, point);
    w.residual = std::abs(L - span_pow * eval(f, w.xi) / ga1);
    return w;
}

Witness differential_mvt_witness(const Ast& f, const FracOrder& order, double a, double b,
                                 Eigen::Index n, double tol)
{
    if (!(b > a))
        throw PreconditionError("differential_mvt_witness: need b > a");

    const TaylorPoly t = taylor_poly(f, a, order.ceil_m - 1);
    const double remainder = eval(f, b) - t(b);
    const double target = gammafn(order.alpha + 1.0) * remainder / std::pow(b - a, order.alpha);

    AstPtr m_deriv = std::make_shared<Ast>(f);
    for (int k = 0; k < order.ceil_m; ++k)
        m_deriv = differentiate(*m_deriv, 'x');

    // Point evaluation re-runs the smooth route on a local mesh [a, s]
    // with the full node budget, so bisection points get a finer spacing
    // than the scan itself.
    auto point = [&](double s) {
        if (!(s > a))
            return order.gap == 0.0 ? eval(*m_deriv, a) : 0.0;
        const Mesh local(a, s, n);
        return caputo_smooth(f, order, local).values[n - 1];
    };
    return find_witness(
        a, b, n, target, tol,
        [&](const Mesh& m) { return caputo_smooth(f, order, m).values; }, point);
}

} // namespace fraccalc
