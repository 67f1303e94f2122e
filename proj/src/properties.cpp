#include "gregory/properties.hpp"

#include "gregory/errors.hpp"
#include "gregory/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gregory::properties {

namespace {

std::string decimal(double value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Tuples of length m over {0..max_entry}, enumerated in lexicographic order.
std::vector<unsigned> decode_tuple(std::size_t code, unsigned m, unsigned max_entry) {
    std::vector<unsigned> out(m);
    for (unsigned i = m; i-- > 0;) {
        out[i] = static_cast<unsigned>(code % (max_entry + 1));
        code /= (max_entry + 1);
    }
    return out;
}

std::size_t tuple_count(unsigned m, unsigned max_entry) {
    std::size_t count = 1;
    for (unsigned i = 0; i < m; ++i) count *= max_entry + 1;
    return count;
}

// |j! b_{j+1}| for j = 0 .. max_j.
std::vector<BigRational> scaled_magnitudes(const exact::GregoryTable& table, unsigned max_j) {
    if (max_j + 1 > table.max_index()) {
        throw DomainError("table too short: need b_" + std::to_string(max_j + 1));
    }
    std::vector<BigRational> out;
    out.reserve(max_j + 1);
    for (unsigned j = 0; j <= max_j; ++j) {
        out.push_back((BigRational(factorial(j)) * table[j + 1]).abs());
    }
    return out;
}

}  // namespace

DifferenceTable::DifferenceTable(std::vector<BigRational> base, std::size_t max_order) {
    if (base.empty() || max_order > base.size() - 1) {
        throw DomainError("difference_table: order " + std::to_string(max_order) + " exceeds data of length " +
                          std::to_string(base.size()));
    }
    rows_.push_back(std::move(base));
    for (std::size_t k = 1; k <= max_order; ++k) {
        const auto& prev = rows_.back();
        std::vector<BigRational> row(prev.size() - 1);
        for (std::size_t n = 0; n < row.size(); ++n) row[n] = prev[n + 1] - prev[n];
        rows_.push_back(std::move(row));
    }
}

DifferenceTable difference_table(const std::vector<BigRational>& mu, std::size_t max_order) {
    return DifferenceTable(mu, max_order);
}

BigRational binomial_difference(const std::vector<BigRational>& mu, std::size_t k, std::size_t n) {
    if (n + k >= mu.size()) throw DomainError("binomial_difference: index past end of data");
    BigRational sum;
    for (std::size_t m = 0; m <= k; ++m) {
        BigRational term = BigRational(binomial(k, m)) * mu[n + k - m];
        if (m % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

CmReport check_cm_sequence(const std::vector<BigRational>& mu, std::string suite) {
    if (mu.empty()) throw DomainError("check_cm_sequence: empty sequence");
    const std::size_t horizon = mu.size() - 1;
    const DifferenceTable table(mu, horizon);
    CmReport report{std::move(suite), true, static_cast<long>(horizon), static_cast<long>(horizon), std::nullopt};
    for (std::size_t k = 0; k <= horizon; ++k) {
        const auto& row = table.rows()[k];
        for (std::size_t n = 0; n < row.size(); ++n) {
            const int sign = k % 2 == 0 ? row[n].sign() : -row[n].sign();
            if (sign < 0) {
                report.passed = false;
                report.first_violation = Violation{static_cast<long>(k), static_cast<long>(n), row[n].to_string()};
                return report;
            }
        }
    }
    return report;
}

CmReport check_minimality_perturbation(const std::vector<BigRational>& mu, const BigRational& epsilon) {
    if (epsilon.sign() <= 0) throw DomainError("check_minimality_perturbation: epsilon must be > 0");
    if (mu.empty()) throw DomainError("check_minimality_perturbation: empty sequence");
    std::vector<BigRational> perturbed = mu;
    perturbed[0] -= epsilon;
    CmReport report = check_cm_sequence(perturbed, "minimality");
    report.passed = !report.passed;
    return report;
}

std::vector<BigRational> moment_sequence(const exact::GregoryTable& table) {
    std::vector<BigRational> mu;
    for (std::size_t n = 0; n + 1 <= table.max_index(); ++n) {
        mu.push_back(n % 2 == 0 ? table[n + 1] : -table[n + 1]);
    }
    return mu;
}

unsigned IndexTuple::max() const {
    return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end());
}

unsigned IndexTuple::sum() const {
    return std::accumulate(entries_.begin(), entries_.end(), 0U);
}

std::string to_string(const IndexTuple& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(t.entries()[i]);
    }
    return out + ")";
}

std::vector<std::vector<BigRational>> hankel_matrix(const exact::GregoryTable& table, const IndexTuple& indices,
                                                     HankelVariant variant) {
    if (indices.size() == 0) throw DomainError("hankel_matrix: empty index tuple");
    const unsigned top = 2 * indices.max() + 1;
    if (top > table.max_index()) {
        throw DomainError("hankel_matrix: need b_" + std::to_string(top) + ", table ends at b_" +
                          std::to_string(table.max_index()));
    }
    const std::size_t m = indices.size();
    std::vector<std::vector<BigRational>> a(m, std::vector<BigRational>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const unsigned s = indices.entries()[i] + indices.entries()[j];
            BigRational entry = BigRational(factorial(s)) * table[s + 1];
            if (variant == HankelVariant::Signed && s % 2 == 1) entry = -entry;
            a[i][j] = std::move(entry);
        }
    }
    return a;
}

BigRational bareiss_determinant(const std::vector<std::vector<BigRational>>& matrix) {
    const std::size_t m = matrix.size();
    if (m == 0) return BigRational(1);
    for (const auto& row : matrix) {
        if (row.size() != m) throw DomainError("bareiss_determinant: matrix is not square");
    }
    // Scale to integers by the lcm of all denominators.
    BigInt scale = 1;
    for (const auto& row : matrix) {
        for (const auto& x : row) {
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.denominator().get_mpz_t());
        }
    }
    std::vector<std::vector<BigInt>> a(m, std::vector<BigInt>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            a[i][j] = matrix[i][j].numerator() * (scale / matrix[i][j].denominator());
        }
    }

    int sign = 1;
    BigInt previous = 1;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < m && a[p][k] == 0) ++p;
            if (p == m) return BigRational(0);
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            for (std::size_t j = k + 1; j < m; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), previous.get_mpz_t());
            }
        }
        previous = a[k][k];
    }
    BigInt det = a[m - 1][m - 1] * sign;
    BigInt scale_power;
    mpz_pow_ui(scale_power.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(m));
    return BigRational(det, scale_power);
}

BigRational hankel_determinant(const exact::GregoryTable& table, const IndexTuple& indices, HankelVariant variant) {
    return bareiss_determinant(hankel_matrix(table, indices, variant));
}

CmReport hankel_sweep(const exact::GregoryTable& table, unsigned max_m, unsigned max_entry, kernels::Execution ex) {
    if (2 * max_entry + 1 > table.max_index()) {
        throw DomainError("hankel_sweep: entries up to " + std::to_string(max_entry) + " need b_" +
                          std::to_string(2 * max_entry + 1));
    }
    CmReport report{"hankel", true, static_cast<long>(max_m), static_cast<long>(max_entry), std::nullopt};
    for (unsigned m = 1; m <= max_m; ++m) {
        const std::size_t count = tuple_count(m, max_entry);
        auto nonnegative = [&](std::size_t code) {
            const IndexTuple t(decode_tuple(code, m, max_entry));
            return hankel_determinant(table, t, HankelVariant::Plain).sign() >= 0 &&
                   hankel_determinant(table, t, HankelVariant::Signed).sign() >= 0;
        };
        if (auto bad = kernels::first_failure(ex, count, nonnegative)) {
            const IndexTuple t(decode_tuple(*bad, m, max_entry));
            BigRational plain = hankel_determinant(table, t, HankelVariant::Plain);
            const BigRational& shown = plain.sign() < 0 ? plain : hankel_determinant(table, t, HankelVariant::Signed);
            report.passed = false;
            report.first_violation = Violation{static_cast<long>(m), static_cast<long>(*bad), shown.to_string()};
            return report;
        }
    }
    return report;
}

bool is_majorized(const IndexTuple& lambda, const IndexTuple& mu) {
    if (lambda.size() != mu.size() || lambda.size() == 0) {
        throw DomainError("is_majorized: tuples must have the same positive length");
    }
    auto l = lambda.entries();
    auto m = mu.entries();
    std::sort(l.begin(), l.end(), std::greater<>());
    std::sort(m.begin(), m.end(), std::greater<>());
    unsigned long sl = 0;
    unsigned long sm = 0;
    for (std::size_t k = 0; k < l.size(); ++k) {
        sl += l[k];
        sm += m[k];
        if (sl > sm) return false;
    }
    return sl == sm;
}

namespace {

BigRational abs_product(const std::vector<BigRational>& magnitudes, const IndexTuple& t) {
    BigRational p(1);
    for (unsigned e : t.entries()) p *= magnitudes[e];
    return p;
}

}  // namespace

CmReport check_majorization_inequality(const exact::GregoryTable& table, const IndexTuple& lambda,
                                       const IndexTuple& mu) {
    if (!is_majorized(lambda, mu)) {
        throw DomainError("check_majorization_inequality: " + to_string(lambda) + " is not majorized by " +
                          to_string(mu));
    }
    const auto magnitudes = scaled_magnitudes(table, std::max(lambda.max(), mu.max()));
    const BigRational lhs = abs_product(magnitudes, lambda);
    const BigRational rhs = abs_product(magnitudes, mu);
    CmReport report{"majorization", lhs <= rhs, static_cast<long>(lambda.size()),
                    static_cast<long>(std::max(lambda.max(), mu.max())), std::nullopt};
    if (!report.passed) report.first_violation = Violation{0, 0, (rhs - lhs).to_string()};
    return report;
}

CmReport majorization_sweep(const exact::GregoryTable& table, unsigned max_m, unsigned max_entry,
                            kernels::Execution ex) {
    const auto magnitudes = scaled_magnitudes(table, max_entry);
    CmReport report{"majorization", true, static_cast<long>(max_m), static_cast<long>(max_entry), std::nullopt};
    for (unsigned m = 1; m <= max_m; ++m) {
        const std::size_t count = tuple_count(m, max_entry);
        auto holds = [&](std::size_t pair) {
            const IndexTuple lambda(decode_tuple(pair / count, m, max_entry));
            const IndexTuple mu(decode_tuple(pair % count, m, max_entry));
            if (!is_majorized(lambda, mu)) return true;
            return abs_product(magnitudes, lambda) <= abs_product(magnitudes, mu);
        };
        if (auto bad = kernels::first_failure(ex, count * count, holds)) {
            const IndexTuple lambda(decode_tuple(*bad / count, m, max_entry));
            const IndexTuple mu(decode_tuple(*bad % count, m, max_entry));
            report.passed = false;
            report.first_violation =
                Violation{static_cast<long>(m), static_cast<long>(*bad),
                          (abs_product(magnitudes, mu) - abs_product(magnitudes, lambda)).to_string()};
            return report;
        }
    }
    return report;
}

CmReport check_log_convexity(const exact::GregoryTable& table) {
    const std::size_t top = table.max_index();
    if (top < 3) throw DomainError("check_log_convexity: need b_0 .. b_3 at least");
    CmReport report{"log-convexity", true, static_cast<long>(top), 2, std::nullopt};
    auto scaled = [&](std::size_t i) { return BigRational(factorial(i)) * table[i + 1]; };
    for (std::size_t i = 0; i + 3 <= top; ++i) {
        const BigRational lhs = scaled(i) * scaled(i + 2);
        const BigRational mid = scaled(i + 1);
        const BigRational rhs = mid * mid;
        if (lhs < rhs) {
            report.passed = false;
            report.first_violation = Violation{2, static_cast<long>(i), (lhs - rhs).to_string()};
            return report;
        }
    }
    return report;
}

CmReport cm_grid_test(const RealFunction& f, const std::vector<double>& x_grid, const GridOptions& opts,
                      std::string suite) {
    if (x_grid.empty()) throw DomainError("cm_grid_test: empty grid");
    if (opts.max_order < 0) throw DomainError("cm_grid_test: K must be >= 0");
    if (opts.step && !(*opts.step > 0.0)) throw DomainError("cm_grid_test: h must be > 0");
    const int order = opts.max_order;
    CmReport report{std::move(suite), true, static_cast<long>(x_grid.size()), order, std::nullopt};

    // Lexicographic (k, n): collect every grid point's row first.
    std::vector<std::vector<double>> signed_diffs(x_grid.size());
    for (std::size_t n = 0; n < x_grid.size(); ++n) {
        const double x = x_grid[n];
        const double h = opts.step ? *opts.step : std::min(0.1, x / (2.0 * std::max(order, 1)));
        std::vector<double> values(static_cast<std::size_t>(order) + 1);
        for (int j = 0; j <= order; ++j) {
            const double xj = x + j * h;
            const double v = f(xj);
            if (!std::isfinite(v)) throw EvaluationError("cm_grid_test: non-finite function value", xj);
            values[static_cast<std::size_t>(j)] = v;
        }
        auto& out = signed_diffs[n];
        for (int k = 0; k <= order; ++k) {
            // values[0] now holds Delta^k f(x).
            out.push_back(k % 2 == 0 ? values[0] : -values[0]);
            for (std::size_t j = 0; j + 1 < values.size() - static_cast<std::size_t>(k); ++j) {
                values[j] = values[j + 1] - values[j];
            }
        }
    }
    for (int k = 0; k <= order; ++k) {
        for (std::size_t n = 0; n < x_grid.size(); ++n) {
            const double d = signed_diffs[n][static_cast<std::size_t>(k)];
            if (d < -opts.slack) {
                report.passed = false;
                report.first_violation = Violation{k, static_cast<long>(n), decimal(d)};
                return report;
            }
        }
    }
    return report;
}

DegreeBracket estimate_cm_degree(const RealFunction& f, const std::vector<double>& r_grid,
                                 const std::vector<double>& x_grid, const GridOptions& opts) {
    if (!std::is_sorted(r_grid.begin(), r_grid.end())) {
        throw DomainError("estimate_cm_degree: r_grid must be ascending");
    }
    DegreeBracket bracket;
    for (double r : r_grid) {
        auto scaled = [&f, r](double x) { return std::pow(x, r) * f(x); };
        if (cm_grid_test(scaled, x_grid, opts, "degree").passed) {
            bracket.largest_passing = r;
        } else if (!bracket.first_failing) {
            bracket.first_failing = r;
        }
    }
    return bracket;
}

CmReport check_bernstein(const RealFunction& f, const RealFunction& f_prime, const std::vector<double>& x_grid,
                         const GridOptions& opts, std::string suite) {
    if (x_grid.empty()) throw DomainError("check_bernstein: empty grid");
    for (std::size_t n = 0; n < x_grid.size(); ++n) {
        const double v = f(x_grid[n]);
        if (!std::isfinite(v)) throw EvaluationError("check_bernstein: non-finite function value", x_grid[n]);
        if (v < -opts.slack) {
            return CmReport{std::move(suite), false, static_cast<long>(x_grid.size()), opts.max_order,
                            Violation{-1, static_cast<long>(n), decimal(v)}};
        }
    }
    CmReport report = cm_grid_test(f_prime, x_grid, opts, std::move(suite));
    // Derivative orders shift by one relative to f.
    if (report.first_violation) report.first_violation->k += 1;
    return report;
}

namespace {

double dense_determinant(std::vector<std::vector<double>> a) {
    const std::size_t m = a.size();
    double det = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < m; ++i) {
            if (std::fabs(a[i][k]) > std::fabs(a[p][k])) p = i;
        }
        if (a[p][k] == 0.0) return 0.0;
        if (p != k) {
            std::swap(a[p], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < m; ++i) {
            const double factor = a[i][k] / a[k][k];
            for (std::size_t j = k; j < m; ++j) a[i][j] -= factor * a[k][j];
        }
    }
    return det;
}

}  // namespace

CmReport check_h_determinants(const std::vector<int>& n_values, const std::vector<double>& x_values,
                              unsigned max_m, unsigned max_entry, double tol, double slack) {
    CmReport report{"h-determinants", true, static_cast<long>(max_m), static_cast<long>(max_entry), std::nullopt};
    for (int n : n_values) {
        for (double x : x_values) {
            // scaled[s] = (n+s-1)!/(n-1)! h_{n+s}(x)
            std::vector<double> scaled(2 * max_entry + 1);
            double rising = 1.0;
            for (unsigned s = 0; s < scaled.size(); ++s) {
                if (s > 0) rising *= n + static_cast<double>(s) - 1.0;
                scaled[s] = rising * quadrature::h_integral(n + static_cast<int>(s), x, tol).value;
            }
            for (unsigned m = 1; m <= max_m; ++m) {
                for (std::size_t code = 0; code < tuple_count(m, max_entry); ++code) {
                    const auto t = decode_tuple(code, m, max_entry);
                    std::vector<std::vector<double>> with_sign(m, std::vector<double>(m));
                    std::vector<std::vector<double>> plain(m, std::vector<double>(m));
                    for (unsigned i = 0; i < m; ++i) {
                        for (unsigned j = 0; j < m; ++j) {
                            const unsigned s = t[i] + t[j];
                            plain[i][j] = scaled[s];
                            with_sign[i][j] = s % 2 == 0 ? scaled[s] : -scaled[s];
                        }
                    }
                    const double d1 = dense_determinant(with_sign);
                    const double d2 = dense_determinant(plain);
                    if (d1 < -slack || d2 < -slack) {
                        report.passed = false;
                        report.first_violation = Violation{n, static_cast<long>(code), decimal(std::min(d1, d2))};
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace gregory::properties
