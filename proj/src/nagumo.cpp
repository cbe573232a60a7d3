#include "fraccalc/nagumo.hpp"
#include "fraccalc/special.hpp"

#include <cmath>

namespace fraccalc {

Rhs2D Rhs2D::from_expression(AstPtr e)
{
    std::string desc = pretty(*e);
    return Rhs2D(Kind::Expression, std::move(e), 0.0, 1.0, std::move(desc));
}

Rhs2D Rhs2D::counterexample(const FracOrder& order)
{
    return scaled_counterexample(order, 1.0);
}

Rhs2D Rhs2D::scaled_counterexample(const FracOrder& order, double scale)
{
    if (!(order.alpha < 1.0))
        throw PreconditionError("counterexample rhs: alpha must lie in (0, 1)");
    std::string desc = scale == 1.0
                           ? "counterexample(" + std::to_string(order.alpha) + ")"
                           : std::to_string(scale) + "*counterexample(" +
                                 std::to_string(order.alpha) + ")";
    return Rhs2D(Kind::Counterexample, nullptr, order.alpha, scale, std::move(desc));
}

double Rhs2D::operator()(double x, double y) const
{
    if (kind_ == Kind::Expression)
        return eval(*expr_, x, y);
    if (y <= 0.0)
        return 0.0;
    const double boundary = std::pow(x, alpha_); // 0 at x = 0: middle branch empty
    const double g = scale_ * gammafn(alpha_ + 1.0);
    if (y > boundary)
        return g;
    return g * std::pow(x, -alpha_) * y;
}

Rhs2D counterexample_rhs(const FracOrder& order)
{
    return Rhs2D::counterexample(order);
}

NagumoReport nagumo_scan(const Rhs2D& f, const FracOrder& order, double b, int nx, int ny,
                         double ylo, double yhi)
{
    if (!(order.alpha < 1.0))
        throw PreconditionError("nagumo_scan: alpha must lie in (0, 1)");
    if (nx < 3 || ny < 3)
        throw PreconditionError("nagumo_scan: need nx, ny >= 3");
    if (!(yhi > ylo))
        throw PreconditionError("nagumo_scan: degenerate y range");
    if (!(b > 0.0))
        throw PreconditionError("nagumo_scan: need b > 0");

    const double alpha = order.alpha;
    const double ga1 = gammafn(alpha + 1.0);
    const double exclusion = 1e-9 * (yhi - ylo);

    Eigen::ArrayXd ys(ny);
    for (int i = 0; i < ny; ++i)
        ys[i] = (i == ny - 1) ? yhi : ylo + i * (yhi - ylo) / (ny - 1);

    NagumoReport report{0.0, true, 0.0, 0.0, 0.0, 0};
    Eigen::ArrayXd fv(ny);
    for (int jx = 1; jx <= nx; ++jx) {
        const double x = b * static_cast<double>(jx) / nx;
        const double xa = std::pow(x, alpha);
        for (int i = 0; i < ny; ++i)
            fv[i] = f(x, ys[i]);
        for (int i1 = 0; i1 < ny; ++i1) {
            for (int i2 = i1 + 1; i2 < ny; ++i2) {
                const double dy = ys[i2] - ys[i1];
                if (dy < exclusion)
                    continue;
                const double ratio = xa * std::abs(fv[i1] - fv[i2]) / (ga1 * dy);
                ++report.samples_used;
                if (ratio > report.sup_ratio) {
                    report.sup_ratio = ratio;
                    report.x = x;
                    report.y1 = ys[i1];
                    report.y2 = ys[i2];
                }
            }
        }
    }
    report.satisfied = report.sup_ratio <= 1.0 + 1e-9;
    return report;
}

SampledFunction uniqueness_gap(const SampledFunction& z, const SampledFunction& z_tilde,
                               const FracOrder& order)
{
    if (!(z.mesh == z_tilde.mesh))
        throw PreconditionError("uniqueness_gap: meshes do not match");
    if (z.mesh.a != 0.0)
        throw PreconditionError("uniqueness_gap: mesh must start at 0");

    Eigen::ArrayXd w(z.mesh.n);
    w[0] = 0.0;
    for (Eigen::Index j = 1; j < z.mesh.n; ++j)
        w[j] = std::pow(z.mesh.node(j), -order.alpha) *
               std::abs(z.values[j] - z_tilde.values[j]);
    return SampledFunction(z.mesh, std::move(w));
}

} // namespace fraccalc
