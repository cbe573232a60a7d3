#include "fraccalc/operators.hpp"
#include "fraccalc/quadrature.hpp"
#include "fraccalc/special.hpp"

#include <cmath>
#include <vector>

namespace fraccalc {

SampledFunction sample(const Mesh& mesh, const Ast& f)
{
    return sample(mesh, [&f](double x) { return eval(f, x); });
}

SampledFunction rl_integral(const SampledFunction& f, double beta)
{
    if (beta < 0.0)
        throw PreconditionError("rl_integral: negative order");
    if (beta == 0.0)
        return f;

    const Mesh& mesh = f.mesh;
    const Eigen::Index n = mesh.n;
    const Eigen::ArrayXd& u = f.values;

    Eigen::ArrayXd pow_b(n), pow_b1(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        pow_b[k] = std::pow(static_cast<double>(k), beta);
        pow_b1[k] = std::pow(static_cast<double>(k), beta + 1.0);
    }
    // Interior hat moments depend only on the index distance k = j - i.
    Eigen::ArrayXd interior(n);
    interior[0] = 1.0; // a_{j,j}
    for (Eigen::Index k = 1; k + 1 < n; ++k)
        interior[k] = pow_b1[k + 1] - 2.0 * pow_b1[k] + pow_b1[k - 1];

    const double scale = std::pow(mesh.h, beta) / gammafn(beta + 2.0);

    Eigen::ArrayXd out(n);
    out[0] = 0.0;
    for (Eigen::Index j = 1; j < n; ++j) {
        const double jd = static_cast<double>(j);
        double acc = (pow_b1[j - 1] - pow_b[j] * (jd - 1.0 - beta)) * u[0];
        for (Eigen::Index i = 1; i < j; ++i)
            acc += interior[j - i] * u[i];
        acc += u[j];
        out[j] = scale * acc;
    }
    return SampledFunction(mesh, std::move(out));
}

namespace {

Eigen::ArrayXd grid_derivative(const Mesh& mesh, const Eigen::ArrayXd& v)
{
    const Eigen::Index n = mesh.n;
    const double h = mesh.h;
    Eigen::ArrayXd d(n);
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (Eigen::Index j = 1; j + 1 < n; ++j)
        d[j] = (v[j + 1] - v[j - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return d;
}

// m-th symbolic derivative, simplified at each step.
AstPtr nth_derivative(const Ast& f, int m)
{
    AstPtr g = std::make_shared<Ast>(f);
    for (int k = 0; k < m; ++k)
        g = differentiate(*g, 'x');
    return g;
}

} // namespace

TaylorPoly taylor_poly(const Ast& f, double a, int m)
{
    if (m < 0)
        throw PreconditionError("taylor_poly: degree must be >= 0");

    std::vector<AstPtr> derivs;
    bool symbolic = true;
    try {
        derivs.reserve(static_cast<std::size_t>(m));
        AstPtr g = std::make_shared<Ast>(f);
        for (int k = 1; k <= m; ++k) {
            g = differentiate(*g, 'x');
            derivs.push_back(g);
        }
    } catch (const EvalError&) {
        symbolic = false;
        if (m > 4)
            throw; // no finite-difference stencil beyond fourth order
    }

    Eigen::VectorXd coeffs(m + 1);
    coeffs[0] = eval(f, a);
    if (symbolic) {
        double factorial = 1.0;
        for (int k = 1; k <= m; ++k) {
            factorial *= k;
            coeffs[k] = eval(*derivs[static_cast<std::size_t>(k - 1)], a) / factorial;
        }
        return TaylorPoly(a, std::move(coeffs));
    }

    const double h = 1e-5 * (1.0 + std::abs(a));
    const auto fa = [&](double t) { return eval(f, t); };
    double factorial = 1.0;
    for (int k = 1; k <= m; ++k) {
        factorial *= k;
        double dk = 0.0;
        switch (k) {
        case 1: dk = (fa(a + h) - fa(a - h)) / (2.0 * h); break;
        case 2: dk = (fa(a + h) - 2.0 * fa(a) + fa(a - h)) / (h * h); break;
        case 3:
            dk = (fa(a + 2.0 * h) - 2.0 * fa(a + h) + 2.0 * fa(a - h) - fa(a - 2.0 * h)) /
                 (2.0 * h * h * h);
            break;
        case 4:
            dk = (fa(a + 2.0 * h) - 4.0 * fa(a + h) + 6.0 * fa(a) - 4.0 * fa(a - h) +
                  fa(a - 2.0 * h)) /
                 (h * h * h * h);
            break;
        }
        coeffs[k] = dk / factorial;
    }
    return TaylorPoly(a, std::move(coeffs));
}

SampledFunction caputo_smooth(const Ast& f, const FracOrder& order, const Mesh& mesh)
{
    AstPtr g = nth_derivative(f, order.ceil_m);
    SampledFunction gs = sample(mesh, *g);
    if (order.gap == 0.0)
        return gs;
    return rl_integral(gs, order.gap);
}

SampledFunction caputo_definition(const SampledFunction& f, const FracOrder& order,
                                  const TaylorPoly& taylor)
{
    if (order.alpha > 1.0)
        throw PreconditionError("caputo_definition: grid route supports alpha in (0, 1] only");
    const Mesh& mesh = f.mesh;
    if (mesh.n < 3)
        throw PreconditionError("caputo_definition: need at least 3 nodes");
    if (std::abs(taylor.center - mesh.a) > 1e-12 * (1.0 + std::abs(mesh.a)))
        throw PreconditionError("caputo_definition: Taylor polynomial must be centered at the mesh start");
    if (taylor.degree() != order.ceil_m - 1)
        throw PreconditionError("caputo_definition: Taylor degree must equal ceil(alpha) - 1");

    Eigen::ArrayXd u(mesh.n);
    for (Eigen::Index j = 0; j < mesh.n; ++j)
        u[j] = f.values[j] - taylor(mesh.node(j));

    SampledFunction shifted(mesh, std::move(u));
    const SampledFunction v = rl_integral(shifted, order.gap);
    return SampledFunction(mesh, grid_derivative(mesh, v.values));
}

double caputo_pointwise(const Ast& f, const FracOrder& order, double a, double x)
{
    if (!(x > a))
        throw PreconditionError("caputo_pointwise: need x > a");
    AstPtr g = nth_derivative(f, order.ceil_m);
    if (order.gap == 0.0)
        return eval(*g, x);

    const double gap = order.gap;
    const double integral = detail::tanh_sinh(
        [&](double t, double /*from_lo*/, double from_hi) {
            return std::pow(from_hi, gap - 1.0) * eval(*g, t);
        },
        a, x);
    return integral / gammafn(gap);
}

double fundamental_residual(const Ast& f, const FracOrder& order, const Mesh& mesh)
{
    if (order.alpha > 1.0)
        throw PreconditionError("fundamental_residual: alpha in (0, 1] only");
    if (mesh.n < 16)
        throw PreconditionError("fundamental_residual: mesh too small for the residual window");

    const SampledFunction fs = sample(mesh, f);
    const SampledFunction F = rl_integral(fs, order.alpha);
    const TaylorPoly t0(mesh.a, Eigen::VectorXd::Constant(1, F.values[0]));
    const SampledFunction back = caputo_definition(F, order, t0);

    double sup = 0.0;
    for (Eigen::Index j = 6; j + 1 < mesh.n; ++j)
        sup = std::max(sup, std::abs(back.values[j] - fs.values[j]));
    return sup;
}

double taylor_remainder_residual(const Ast& f, const FracOrder& order, const Mesh& mesh)
{
    const TaylorPoly t = taylor_poly(f, mesh.a, order.ceil_m - 1);
    const SampledFunction d = caputo_smooth(f, order, mesh);
    const SampledFunction r = rl_integral(d, order.alpha);

    double sup = 0.0;
    for (Eigen::Index j = 0; j < mesh.n; ++j) {
        const double x = mesh.node(j);
        sup = std::max(sup, std::abs(eval(f, x) - t(x) - r.values[j]));
    }
    return sup;
}

} // namespace fraccalc
