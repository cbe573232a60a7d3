#pragma once

// Test-only oracles, independent of the library's quadrature paths:
// adaptive Simpson integration, a substitution-based evaluator for the
// Riemann-Liouville integral, the gamma function from its defining
// integral, and central finite differences.

#include <cmath>
#include <stdexcept>

namespace oracles {

namespace detail {

template <class F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double both = left + right;
    if (depth <= 0 || std::abs(both - whole) < 15.0 * tol)
        return both + (both - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

template <class F>
double adaptive_simpson(F f, double a, double b, double tol = 1e-12, int depth = 40)
{
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Riemann-Liouville integral (J^beta f)(x) from a, by the substitution
/// u = (x - t)^beta which absorbs the kernel singularity:
///   J = 1 / (beta * Gamma(beta)) * integral_0^{(x-a)^beta} f(x - u^(1/beta)) du.
/// For smooth f the transformed integrand is smooth, so plain adaptive
/// Simpson applies. Completely independent of the product-trapezoidal
/// weights under test.
template <class F>
double rl_integral_oracle(F f, double a, double x, double beta, double gamma_beta)
{
    if (beta <= 0.0)
        throw std::invalid_argument("rl oracle: beta must be positive");
    const double upper = std::pow(x - a, beta);
    const double inv_beta = 1.0 / beta;
    auto transformed = [&](double u) { return f(x - std::pow(u, inv_beta)); };
    const double integral = adaptive_simpson(transformed, 0.0, upper, 1e-13);
    return integral / (beta * gamma_beta);
}

/// Gamma(s) from its defining integral. The [0,1] part substitutes
/// t = u^(1/s) to remove the t^(s-1) singularity; the tail truncates at
/// t = 140 (relative remainder below 1e-20 for s <= 30). The Simpson
/// tolerance scales with a Stirling magnitude estimate so the result is
/// relatively accurate across the whole domain.
inline double gamma_oracle(double s)
{
    double scale = 1.0;
    if (s > 2.0) {
        const double m = s - 1.0;
        scale = std::sqrt(2.0 * 3.141592653589793 * m) * std::exp(m * (std::log(m) - 1.0));
    }
    auto head = [&](double u) { return std::exp(-std::pow(u, 1.0 / s)); };
    const double part1 = adaptive_simpson(head, 0.0, 1.0, 1e-14) / s;
    auto tail = [&](double t) { return std::exp((s - 1.0) * std::log(t) - t); };
    const double part2 = adaptive_simpson(tail, 1.0, 140.0, 1e-13 * scale);
    return part1 + part2;
}

/// Central finite difference, the independent check for symbolic
/// derivatives.
template <class F>
double central_difference(F f, double x, double h = 1e-6)
{
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace oracles
