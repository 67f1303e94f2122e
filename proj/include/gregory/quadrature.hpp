#pragma once

// Double-exponential (tanh-sinh) quadrature and the integral representations
// built on the logarithmic kernel
//
//   w(t) = 1 / ([ln(t - 1)]^2 + pi^2),   t in (1, inf),
//   v(s) = w(1/s) = 1 / ([ln(1/s - 1)]^2 + pi^2),   s in (0, 1).
//
// Integrals against w over (1, inf) are evaluated through t = 1 + e^u with
// u = -pi cot(pi s): the kernel cancels against the Jacobian, so
//
//   int_1^inf w(t) phi(t) dt = int_0^1 phi(1 + e^u) e^u ds,
//
// a bounded integrand on a finite interval. Tolerances are absolute.

#include "gregory/kernels.hpp"

#include <functional>

namespace gregory::quadrature {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int n_evals = 0;
    bool converged = false;
};

struct Options {
    int max_levels = 12;
    kernels::Execution execution = kernels::Execution::Parallel;
};

using Integrand = std::function<double(double)>;

/// tanh-sinh on (a, b); endpoints are never evaluated. The error estimate is
/// the largest of the last level difference, the size of the outermost
/// (truncated) terms, and a roundoff floor. Non-finite integrand values throw
/// EvaluationError carrying the abscissa.
QuadratureResult integrate(const Integrand& f, double a, double b, double tol, const Options& opts = {});

inline QuadratureResult integrate_01(const Integrand& f, double tol, const Options& opts = {}) {
    return integrate(f, 0.0, 1.0, tol, opts);
}

double kernel_w(double t);
double kernel_v(double s);

/// int_1^inf w(t) phi(t) dt given g(u) = phi(1 + e^u) e^u.
QuadratureResult integrate_log_kernel(const std::function<double(double)>& g, double tol,
                                      const Options& opts = {});

/// Signed b_n = (-1)^(n+1) int_1^inf w(t) t^(-n) dt. DomainError for n < 1.
QuadratureResult b_integral(int n, double tol, const Options& opts = {});

/// The same unsigned integral through t = 1/s: int_0^1 s^(n-2) v(s) ds.
/// Independent second route; accurate for n >= 2 only (for n = 1 the
/// integrand decays like 1/(s ln^2 s) and the tail is below double range).
QuadratureResult b_integral_reciprocal(int n, double tol, const Options& opts = {});

/// h_n(x) = int_1^inf w(t) / (t + x)^n dt. DomainError for n < 1 or x < 0.
QuadratureResult h_integral(int n, double x, double tol, const Options& opts = {});

/// 1/x + int_1^inf w(t) / (x + t) dt, which equals 1 / ln(1 + x).
QuadratureResult stieltjes_recip_log(double x, double tol, const Options& opts = {});

/// 1 + int_1^inf w(t) x / (x + t) dt, which equals x / ln(1 + x).
QuadratureResult genfun_integral(double x, double tol, const Options& opts = {});

/// k-th derivative of x / ln(1 + x):
/// (-1)^(k+1) k! int_1^inf w(t) t / (x + t)^(k+1) dt. tol applies to the result.
QuadratureResult genfun_derivative_integral(double x, int k, double tol, const Options& opts = {});

/// mu_n = int_0^1 t^n dalpha(t), dalpha(t) = v(t) dt / t; equals (-1)^n b_{n+1}.
QuadratureResult moment_integral(int n, double tol, const Options& opts = {});

/// int_0^1 (1 + x)^t dt, which equals x / ln(1 + x).
QuadratureResult bernstein_identity(double x, double tol, const Options& opts = {});

}  // namespace gregory::quadrature
