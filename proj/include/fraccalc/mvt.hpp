#pragma once

#include "fraccalc/expr.hpp"
#include "fraccalc/grid.hpp"

namespace fraccalc {

/// Interior mean-value point together with the identity defect there.
/// Degenerate witnesses (constant f, zero weight, annihilated Taylor
/// remainder) sit at the interval midpoint with a collapsed bracket.
struct Witness {
    double xi;
    double target;   // value the probed function must attain at xi
    double residual; // absolute identity defect at xi
    double lo;
    double hi;
    bool degenerate;
};

/// Witness for the weighted fractional mean value theorem of integral
/// calculus: finds xi in (a, x) with f(xi) = J^alpha(fg)(x) / J^alpha g(x).
/// g must not change sign on [a, x].
Witness integral_mvt_witness(const Ast& f, const Ast& g, const FracOrder& order, double a,
                             double x, Eigen::Index n, double tol = 1e-8);

/// Witness for the unweighted corollary:
/// J^alpha f(b) = (b-a)^alpha f(xi) / Gamma(alpha+1).
Witness simple_integral_mvt_witness(const Ast& f, const FracOrder& order, double a, double b,
                                    Eigen::Index n, double tol = 1e-8);

/// Witness for the fractional mean value theorem of differential
/// calculus: finds xi in (a, b) with
/// D^alpha f(xi) = Gamma(alpha+1) (f(b) - T_{ceil-1}[f;a](b)) / (b-a)^alpha.
/// Bisection refines the Caputo derivative on local meshes over [a, xi].
Witness differential_mvt_witness(const Ast& f, const FracOrder& order, double a, double b,
                                 Eigen::Index n, double tol = 1e-8);

} // namespace fraccalc
