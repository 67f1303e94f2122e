#include "gregory/reference.hpp"

#include "gregory/errors.hpp"

#include <cmath>
#include <vector>

namespace gregory::reference {

double recip_log(double x) { return 1.0 / std::log1p(x); }

double genfun(double x) { return x == 0.0 ? 1.0 : x / std::log1p(x); }

double genfun_derivative(double x, int k) {
    if (k < 0 || x < 0.0) throw DomainError("genfun_derivative: need k >= 0 and x >= 0");
    const auto order = static_cast<std::size_t>(k);
    // Taylor coefficients in h of the denominator D(h) and numerator N(h).
    std::vector<double> num(order + 2, 0.0);
    std::vector<double> den(order + 2, 0.0);
    if (x == 0.0) {
        // x / ln(1+x) = 1 / (ln(1+h)/h)
        num[0] = 1.0;
        for (std::size_t j = 0; j < den.size(); ++j) den[j] = (j % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(j + 1);
    } else {
        num[0] = x;
        num[1] = 1.0;
        den[0] = std::log1p(x);
        double power = 1.0;
        for (std::size_t j = 1; j < den.size(); ++j) {
            power /= (1.0 + x);
            den[j] = (j % 2 == 1 ? 1.0 : -1.0) * power / static_cast<double>(j);
        }
    }
    std::vector<double> q(order + 1, 0.0);
    for (std::size_t n = 0; n <= order; ++n) {
        double acc = num[n];
        for (std::size_t j = 1; j <= n; ++j) acc -= den[j] * q[n - j];
        q[n] = acc / den[0];
    }
    return q[order] * std::tgamma(k + 1.0);
}

}  // namespace gregory::reference
