#include "gregory/quadrature.hpp"

#include "gregory/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

namespace gregory::quadrature {

namespace {

using std::numbers::pi;

constexpr int kLevelCap = 16;
// Outermost t; the node complement there is ~1e-275.
constexpr double kTMax = 6.0;

struct NodeTable {
    // levels[L] holds the nodes first used at level L (step 2^-L).
    std::vector<std::vector<kernels::Node>> levels;
};

kernels::Node make_node(double t) {
    const double y = 0.5 * pi * std::sinh(t);
    // 1 - tanh(y), accurate for large y.
    const double complement = std::exp(-y) / std::cosh(y);
    const double weight = 0.5 * pi * std::cosh(t) * complement * (2.0 - complement);
    return {complement, weight};
}

const NodeTable& node_table() {
    static NodeTable table;
    static std::once_flag once;
    std::call_once(once, [] {
        table.levels.resize(kLevelCap + 1);
        for (int t = 1; t <= static_cast<int>(kTMax); ++t) {
            table.levels[0].push_back(make_node(t));
        }
        for (int level = 1; level <= kLevelCap; ++level) {
            const double h = std::ldexp(1.0, -level);
            auto& nodes = table.levels[level];
            for (long j = 1;; j += 2) {
                const double t = static_cast<double>(j) * h;
                if (t > kTMax) break;
                nodes.push_back(make_node(t));
            }
        }
    });
    return table;
}

double checked(double value, double x) {
    if (!std::isfinite(value)) throw EvaluationError("non-finite integrand value", x);
    return value;
}

// log(c + e^u) for c >= 1 without overflow.
double log_c_plus_exp(double c, double u) {
    if (u > 0.0) return u + std::log1p(c * std::exp(-u));
    return std::log(c) + std::log1p(std::exp(u) / c);
}

// e^u / (c + e^u)^n
double shifted_power_integrand(double u, double c, int n) {
    if (u > 0.0) return std::exp((1.0 - n) * u - n * std::log1p(c * std::exp(-u)));
    return std::exp(u - n * log_c_plus_exp(c, u));
}

void require(bool ok, const std::string& message) {
    if (!ok) throw DomainError(message);
}

// Adds an exact constant term; the sum's own rounding joins the estimate.
QuadratureResult shifted(QuadratureResult r, double constant, double tol) {
    r.value += constant;
    r.abs_error_estimate = std::max(r.abs_error_estimate, 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(r.value));
    r.converged = r.converged && r.abs_error_estimate <= tol;
    return r;
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, double tol, const Options& opts) {
    require(tol > 0.0, "integrate: tol must be positive");
    require(a < b, "integrate: need a < b");
    const auto& table = node_table();
    const int max_levels = std::clamp(opts.max_levels, 1, kLevelCap);
    const double half = 0.5 * (b - a);
    const double mid = a + half;

    QuadratureResult out;
    double sum = 0.5 * pi * checked(f(mid), mid);
    double abs_sum = std::fabs(sum);
    out.n_evals = 1;

    // Truncation proxy: the terms at the outermost node pair. Negligible for
    // integrands the transform handles; O(1/ln) for log-type endpoint decay.
    const kernels::Node& edge = table.levels[0].back();
    const double xl = a + half * edge.complement;
    const double xr = b - half * edge.complement;
    const double tail = half * edge.weight * (std::fabs(checked(f(xl), xl)) + std::fabs(checked(f(xr), xr)));
    out.n_evals += 2;

    double previous = 0.0;
    for (int level = 0; level <= max_levels; ++level) {
        const auto partial = kernels::sum_nodes(opts.execution, table.levels[level], a, b, f);
        sum += partial.sum;
        abs_sum += partial.abs_sum;
        out.n_evals += partial.evals;

        const double h = std::ldexp(1.0, -level);
        const double estimate = half * h * sum;
        const double roundoff = 4.0 * std::numeric_limits<double>::epsilon() * half * h * abs_sum;
        out.value = estimate;
        if (level > 0) {
            out.abs_error_estimate = std::max({std::fabs(estimate - previous), tail, roundoff});
            if (level >= 3 && out.abs_error_estimate <= tol) {
                out.converged = true;
                return out;
            }
        } else {
            out.abs_error_estimate = std::numeric_limits<double>::infinity();
        }
        previous = estimate;
    }
    return out;
}

double kernel_w(double t) {
    const double l = std::log(t - 1.0);
    return 1.0 / (l * l + pi * pi);
}

double kernel_v(double s) {
    const double l = std::log1p(-s) - std::log(s);
    return 1.0 / (l * l + pi * pi);
}

QuadratureResult integrate_log_kernel(const std::function<double(double)>& g, double tol, const Options& opts) {
    // Fold (0,1) onto (0,1/2]: s and 1-s map to -u and +u.
    auto folded = [&g](double s) {
        const double u = pi * std::cos(pi * s) / std::sin(pi * s);
        return g(-u) + g(u);
    };
    return integrate(folded, 0.0, 0.5, tol, opts);
}

QuadratureResult b_integral(int n, double tol, const Options& opts) {
    require(n >= 1, "b_integral: n must be >= 1 (diverges at n = 0), got " + std::to_string(n));
    auto r = h_integral(n, 0.0, tol, opts);
    if (n % 2 == 0) r.value = -r.value;
    return r;
}

QuadratureResult b_integral_reciprocal(int n, double tol, const Options& opts) {
    require(n >= 1, "b_integral_reciprocal: n must be >= 1, got " + std::to_string(n));
    auto f = [n](double s) { return std::pow(s, n - 2) * kernel_v(s); };
    auto r = integrate(f, 0.0, 1.0, tol, opts);
    if (n % 2 == 0) r.value = -r.value;
    return r;
}

QuadratureResult h_integral(int n, double x, double tol, const Options& opts) {
    require(n >= 1, "h_integral: n must be >= 1, got " + std::to_string(n));
    require(x >= 0.0, "h_integral: x must be >= 0");
    const double c = 1.0 + x;
    return integrate_log_kernel([c, n](double u) { return shifted_power_integrand(u, c, n); }, tol, opts);
}

QuadratureResult stieltjes_recip_log(double x, double tol, const Options& opts) {
    require(x > 0.0, "stieltjes_recip_log: x must be > 0");
    return shifted(h_integral(1, x, tol, opts), 1.0 / x, tol);
}

QuadratureResult genfun_integral(double x, double tol, const Options& opts) {
    require(x > 0.0, "genfun_integral: x must be > 0");
    const double c = 1.0 + x;
    // w(t) x / (x + t) with t = 1 + e^u, times e^u.
    auto g = [x, c](double u) {
        if (u > 0.0) return x / (1.0 + c * std::exp(-u));
        const double eu = std::exp(u);
        return x * eu / (c + eu);
    };
    return shifted(integrate_log_kernel(g, tol, opts), 1.0, tol);
}

QuadratureResult genfun_derivative_integral(double x, int k, double tol, const Options& opts) {
    require(k >= 1, "genfun_derivative_integral: k must be >= 1, got " + std::to_string(k));
    require(x >= 0.0, "genfun_derivative_integral: x must be >= 0");
    const double c = 1.0 + x;
    // t e^u / (x + t)^(k+1) in log form.
    auto g = [c, k](double u) {
        double log_value;
        if (u > 0.0) {
            log_value = (1.0 - k) * u + std::log1p(std::exp(-u)) - (k + 1) * std::log1p(c * std::exp(-u));
        } else {
            log_value = std::log1p(std::exp(u)) + u - (k + 1) * log_c_plus_exp(c, u);
        }
        return std::exp(log_value);
    };
    const double scale = std::tgamma(k + 1.0);
    auto r = integrate_log_kernel(g, tol / scale, opts);
    const double sign = k % 2 == 1 ? 1.0 : -1.0;
    r.value *= sign * scale;
    r.abs_error_estimate *= scale;
    r.converged = r.converged && r.abs_error_estimate <= tol;
    return r;
}

QuadratureResult moment_integral(int n, double tol, const Options& opts) {
    require(n >= 0, "moment_integral: n must be >= 0, got " + std::to_string(n));
    // t = 1/(1 + e^u) gives ln(1/t - 1) = u, t^n dalpha = e^u (1+e^u)^-(n+1) du / (u^2 + pi^2).
    return integrate_log_kernel([n](double u) { return shifted_power_integrand(u, 1.0, n + 1); }, tol, opts);
}

QuadratureResult bernstein_identity(double x, double tol, const Options& opts) {
    require(x > 0.0, "bernstein_identity: x must be > 0");
    const double log_base = std::log1p(x);
    return integrate([log_base](double t) { return std::exp(t * log_base); }, 0.0, 1.0, tol, opts);
}

}  // namespace gregory::quadrature
