#pragma once

#include "fraccalc/expr.hpp"
#include "fraccalc/grid.hpp"

namespace fraccalc {

/// Sample an expression in x on every mesh node.
SampledFunction sample(const Mesh& mesh, const Ast& f);

/// Riemann-Liouville integral of order beta >= 0 from the mesh's left
/// endpoint, evaluated at every node.
///
/// beta = 0 returns f unchanged. For beta > 0 the piecewise-linear
/// interpolant of f is integrated exactly against the kernel
/// (x - t)^(beta-1) / Gamma(beta) (product-trapezoidal rule). With
/// c_k = k^(beta+1) this gives, at target node j,
///
///   J f(x_j) = h^beta / Gamma(beta+2) * [ A0(j) f_0
///              + sum_{i=1}^{j-1} (c_{j-i+1} - 2 c_{j-i} + c_{j-i-1}) f_i + f_j ],
///   A0(j)    = (j-1)^(beta+1) - j^beta (j - 1 - beta).
///
/// The kernel singularity at t = x sits inside the closed-form hat
/// moments and is never evaluated pointwise. Summation runs in
/// ascending node index.
SampledFunction rl_integral(const SampledFunction& f, double beta);

/// Degree-m Taylor polynomial of f centered at a, coefficients
/// f^(k)(a)/k!. Symbolic derivatives when f supports them, otherwise
/// central finite differences with step 1e-5*(1+|a|).
TaylorPoly taylor_poly(const Ast& f, double a, int m);

/// Caputo derivative for symbolically smooth f: the order-(ceil-alpha)
/// Riemann-Liouville integral of the ceil-th classical derivative.
/// Integer alpha returns that classical derivative sampled directly.
SampledFunction caputo_smooth(const Ast& f, const FracOrder& order, const Mesh& mesh);

/// Caputo derivative by its definition on sampled data, for alpha in
/// (0, 1]: subtract the Taylor polynomial, apply the Riemann-Liouville
/// integral of order 1 - alpha, then differentiate on the grid (central
/// interior, second-order one-sided at the ends). Cross-validation
/// route for caputo_smooth.
SampledFunction caputo_definition(const SampledFunction& f, const FracOrder& order,
                                  const TaylorPoly& taylor);

/// Pointwise Caputo derivative of a symbolic f at a single x, by
/// adaptive double-exponential quadrature of
/// (x-t)^(gap-1) f^(ceil)(t) / Gamma(gap). Unlike the product-
/// trapezoidal routes this tolerates an integrable singularity of
/// f^(ceil) at the starting point (e.g. f = x^alpha with a = 0).
double caputo_pointwise(const Ast& f, const FracOrder& order, double a, double x);

/// Sup over interior nodes (skipping the first five) of
/// |D^alpha J^alpha f - f|, the defect in the fractional fundamental
/// theorem of calculus, with the derivative taken by the definition
/// route. alpha in (0, 1].
double fundamental_residual(const Ast& f, const FracOrder& order, const Mesh& mesh);

/// Sup over all nodes of |f - T_{ceil-1}[f;a] - J^alpha D^alpha f|,
/// the defect in the fractional Taylor identity, with the derivative
/// from caputo_smooth.
double taylor_remainder_residual(const Ast& f, const FracOrder& order, const Mesh& mesh);

} // namespace fraccalc
