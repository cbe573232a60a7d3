#pragma once

#include <cmath>

namespace fraccalc::detail {

/// Tanh-sinh (double-exponential) quadrature on (lo, hi).
///
/// The integrand is called as f(t, from_lo, from_hi) where from_lo = t - lo
/// and from_hi = hi - t are computed without cancellation, so integrable
/// endpoint singularities like (hi - t)^(-sigma) can be evaluated stably.
/// Nodes never touch the endpoints.
template <class F>
double tanh_sinh(F&& f, double lo, double hi, double rel_tol = 1e-12, int max_level = 10)
{
    const double half = 0.5 * (hi - lo);
    constexpr double u_max = 6.5;
    constexpr double half_pi = 1.5707963267948966;

    // Contribution of the node at parameter u with step weight d.
    const auto node_term = [&](double u) -> double {
        const double s = half_pi * std::sinh(u);
        const double ch = std::cosh(s);
        const double w = half_pi * std::cosh(u) / (ch * ch); // mapped weight / half
        if (!(w > 1e-300))
            return 0.0;
        // 1 -+ tanh(s) without cancellation:
        const double gap_hi = half * (2.0 / (1.0 + std::exp(2.0 * s)));  // hi - t
        const double gap_lo = half * (2.0 / (1.0 + std::exp(-2.0 * s))); // t - lo
        if (gap_hi <= 0.0 || gap_lo <= 0.0)
            return 0.0;
        const double t = (u >= 0.0) ? hi - gap_hi : lo + gap_lo;
        return half * w * f(t, gap_lo, gap_hi);
    };

    // Level 0: unit spacing.
    double d = 1.0;
    double acc = node_term(0.0);
    for (int k = 1; k * d <= u_max; ++k)
        acc += node_term(k * d) + node_term(-k * d);
    double integral = d * acc;

    for (int level = 1; level <= max_level; ++level) {
        d *= 0.5;
        // New nodes are the odd multiples of the refined spacing.
        double extra = 0.0;
        for (int k = 1; k * d <= u_max; k += 2)
            extra += node_term(k * d) + node_term(-k * d);
        const double refined = 0.5 * integral + d * extra;
        const double change = std::abs(refined - integral);
        integral = refined;
        if (level >= 3 && change <= rel_tol * std::abs(integral) + 1e-300)
            break;
    }
    return integral;
}

} // namespace fraccalc::detail
