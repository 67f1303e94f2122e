#pragma once

// Closed-form reference values for the integral representations.

namespace gregory::reference {

/// 1 / ln(1 + x)
double recip_log(double x);

/// x / ln(1 + x), with the limit 1 at x = 0.
double genfun(double x);

/// k-th derivative of x / ln(1 + x) at x >= 0, from truncated Taylor
/// arithmetic on ln(1 + x + h) (series division, no differencing).
double genfun_derivative(double x, int k);

}  // namespace gregory::reference
