#pragma once

namespace fraccalc {

/// Gamma function on (0, 30], Lanczos approximation (g = 7, 9 terms).
/// Relative error below 1e-13 on the whole domain. Arguments outside
/// (0, 30] throw EvalError; nothing here ever needs them.
double gammafn(double x);

/// log(Gamma(x)) for x >= 1, uncapped. Internal helper for series whose
/// terms outgrow the gammafn domain (Mittag-Leffler denominators).
double lgammafn(double x);

/// Mittag-Leffler function E_alpha(z) = sum_k z^k / Gamma(alpha*k + 1)
/// by direct series summation. Stops once the next term falls below
/// 1e-16 of the partial sum in magnitude; throws NumericError if 10000
/// terms do not reach that cutoff. Desk-scale oracle, alpha in (0,1],
/// |z| <= 50.
double mittag_leffler(double alpha, double z);

} // namespace fraccalc
