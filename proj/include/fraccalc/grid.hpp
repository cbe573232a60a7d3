#pragma once

#include "fraccalc/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>

namespace fraccalc {

/// Uniform grid on [a, b]: n nodes, spacing h = (b - a)/(n - 1),
/// x_j = a + j*h, with x_{n-1} = b exactly.
struct Mesh {
    double a = 0.0;
    double b = 1.0;
    Eigen::Index n = 2;
    double h = 1.0;

    Mesh(double a_, double b_, Eigen::Index n_) : a(a_), b(b_), n(n_)
    {
        if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
            throw PreconditionError("mesh: endpoints must be finite with b > a");
        if (n < 2)
            throw PreconditionError("mesh: need at least 2 nodes");
        h = (b - a) / static_cast<double>(n - 1);
    }

    double node(Eigen::Index j) const { return j == n - 1 ? b : a + static_cast<double>(j) * h; }

    Eigen::ArrayXd nodes() const
    {
        Eigen::ArrayXd xs(n);
        for (Eigen::Index j = 0; j < n; ++j)
            xs[j] = node(j);
        return xs;
    }

    bool operator==(const Mesh& o) const { return a == o.a && b == o.b && n == o.n; }
};

/// Fractional order alpha with ceiling ceil_m = ⌈alpha⌉ and gap
/// ceil_m - alpha in [0, 1). Orders above 3 are out of scope.
struct FracOrder {
    double alpha;
    int ceil_m;
    double gap;

    explicit FracOrder(double a) : alpha(a)
    {
        if (!(a > 0.0) || a > 3.0)
            throw PreconditionError("order: alpha must lie in (0, 3], got " + std::to_string(a));
        ceil_m = static_cast<int>(std::ceil(a));
        gap = static_cast<double>(ceil_m) - a;
    }
};

/// Scalar function values on a mesh. All values must be finite.
struct SampledFunction {
    Mesh mesh;
    Eigen::ArrayXd values;

    SampledFunction(Mesh m, Eigen::ArrayXd v) : mesh(std::move(m)), values(std::move(v))
    {
        if (values.size() != mesh.n)
            throw PreconditionError("sampled function: value count does not match the mesh");
        if (!values.allFinite())
            throw NumericError("sampled function: non-finite sample values");
    }
};

/// Sample a callable on every node of a mesh.
template <class F>
SampledFunction sample(const Mesh& mesh, F&& f)
{
    Eigen::ArrayXd v(mesh.n);
    for (Eigen::Index j = 0; j < mesh.n; ++j)
        v[j] = f(mesh.node(j));
    return SampledFunction(mesh, std::move(v));
}

/// Polynomial sum_k c_k (x - center)^k with c_k = f^(k)(center)/k!.
struct TaylorPoly {
    double center = 0.0;
    Eigen::VectorXd coeffs; // degree = coeffs.size() - 1

    TaylorPoly(double c, Eigen::VectorXd k) : center(c), coeffs(std::move(k))
    {
        if (coeffs.size() < 1)
            throw PreconditionError("taylor polynomial: needs at least the constant coefficient");
        if (!coeffs.allFinite() || !std::isfinite(center))
            throw NumericError("taylor polynomial: non-finite data");
    }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    double operator()(double x) const
    {
        const double dx = x - center;
        double acc = 0.0;
        for (Eigen::Index k = coeffs.size() - 1; k >= 0; --k)
            acc = acc * dx + coeffs[k];
        return acc;
    }
};

} // namespace fraccalc
