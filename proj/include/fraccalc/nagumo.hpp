#pragma once

#include "fraccalc/expr.hpp"
#include "fraccalc/grid.hpp"

#include <string>

namespace fraccalc {

/// Right-hand side f(x, y) of a fractional initial value problem:
/// either a parsed expression in x and y, or the built-in piecewise
/// function whose IVP from y(0) = 0 has infinitely many solutions.
class Rhs2D {
public:
    static Rhs2D from_expression(AstPtr e);

    /// The built-in discontinuous right-hand side for order alpha in (0,1):
    ///   Gamma(alpha+1)              for y >  x^alpha,
    ///   Gamma(alpha+1) x^-alpha y   for 0 < y <= x^alpha,
    ///   0                           for y <= 0.
    /// At x = 0 the middle branch is empty, so f(0, y) jumps between 0 and
    /// Gamma(alpha+1) across y = 0.
    static Rhs2D counterexample(const FracOrder& order);

    /// Same shape scaled by a constant factor; scale > 1 breaks the
    /// uniqueness bound by exactly that factor.
    static Rhs2D scaled_counterexample(const FracOrder& order, double scale);

    double operator()(double x, double y) const;

    bool is_counterexample() const { return kind_ != Kind::Expression; }
    double counterexample_alpha() const { return alpha_; }
    const std::string& description() const { return description_; }

private:
    enum class Kind { Expression, Counterexample };

    Rhs2D(Kind k, AstPtr e, double alpha, double scale, std::string desc)
        : kind_(k), expr_(std::move(e)), alpha_(alpha), scale_(scale),
          description_(std::move(desc)) {}

    Kind kind_;
    AstPtr expr_;
    double alpha_ = 0.0;
    double scale_ = 1.0;
    std::string description_;
};

/// Whether the sampled bound x^alpha |f(x,y1) - f(x,y2)| <=
/// Gamma(alpha+1) |y1 - y2| held, with the largest ratio seen and where.
struct NagumoReport {
    double sup_ratio;
    bool satisfied; // sup_ratio <= 1 + 1e-9 over the sample
    double x, y1, y2;
    long samples_used;
};

/// Scan the uniqueness bound over x in {b j/nx : j = 1..nx} (x = 0 holds
/// trivially and is excluded) and all pairs from an ny-point grid on
/// [ylo, yhi] with |y1 - y2| >= 1e-9 (yhi - ylo). A finite certificate
/// over the sample only, not a proof.
NagumoReport nagumo_scan(const Rhs2D& f, const FracOrder& order, double b, int nx, int ny,
                         double ylo, double yhi);

/// Factory for the built-in discontinuous right-hand side.
Rhs2D counterexample_rhs(const FracOrder& order);

/// Uniqueness-gap functional w(x) = x^-alpha |z(x) - z~(x)|, with
/// w(0) = 0. Both inputs must share a mesh starting at 0.
SampledFunction uniqueness_gap(const SampledFunction& z, const SampledFunction& z_tilde,
                               const FracOrder& order);

} // namespace fraccalc
