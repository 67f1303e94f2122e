#pragma once

// Checks for the monotonicity and inequality properties of the Gregory
// coefficients: completely monotonic (CM) sequences via exact finite
// differences, Hankel-type determinants, majorization and log-convexity of
// i! b_{i+1}, and finite-difference screens for CM / Bernstein functions.

#include "gregory/big_rational.hpp"
#include "gregory/exact_core.hpp"
#include "gregory/kernels.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gregory::properties {

/// rows[k][n] = Delta^k mu_n for n + k <= N, k <= K.
class DifferenceTable {
public:
    DifferenceTable(std::vector<BigRational> base, std::size_t max_order);

    const std::vector<BigRational>& base() const { return rows_.front(); }
    const std::vector<std::vector<BigRational>>& rows() const { return rows_; }
    const BigRational& at(std::size_t k, std::size_t n) const { return rows_.at(k).at(n); }
    std::size_t max_order() const { return rows_.size() - 1; }

private:
    std::vector<std::vector<BigRational>> rows_;
};

/// Throws DomainError when K exceeds length(mu) - 1.
DifferenceTable difference_table(const std::vector<BigRational>& mu, std::size_t max_order);

/// Delta^k mu_n = sum_m (-1)^m C(k, m) mu_{n+k-m}, straight from the binomial form.
BigRational binomial_difference(const std::vector<BigRational>& mu, std::size_t k, std::size_t n);

struct Violation {
    long k = 0;
    long n = 0;
    std::string value;  // "num/den", or a decimal string for numeric screens
};

struct CmReport {
    std::string suite;
    bool passed = true;
    long horizon_n = 0;
    long horizon_k = 0;
    std::optional<Violation> first_violation;
};

/// (-1)^k Delta^k mu_n >= 0 for all n + k <= N, exactly. The reported
/// violation is the lexicographically smallest (k, n).
CmReport check_cm_sequence(const std::vector<BigRational>& mu, std::string suite = "cm-sequence");

/// Runs the CM check on (mu_0 - epsilon, mu_1, ...). passed = true means the
/// perturbed sequence fails somewhere (evidence for minimality); passed = false
/// is inconclusive. DomainError for epsilon <= 0.
CmReport check_minimality_perturbation(const std::vector<BigRational>& mu, const BigRational& epsilon);

/// mu_n = (-1)^n b_{n+1} for n = 0 .. table.max_index() - 1.
std::vector<BigRational> moment_sequence(const exact::GregoryTable& table);

class IndexTuple {
public:
    IndexTuple() = default;
    IndexTuple(std::initializer_list<unsigned> entries) : entries_(entries) {}
    explicit IndexTuple(std::vector<unsigned> entries) : entries_(std::move(entries)) {}

    const std::vector<unsigned>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    unsigned max() const;
    unsigned sum() const;

private:
    std::vector<unsigned> entries_;
};

std::string to_string(const IndexTuple& t);

enum class HankelVariant { Plain, Signed };

/// det[(a_i + a_j)! b_{a_i+a_j+1}] (Plain) or with an extra (-1)^(a_i+a_j)
/// (Signed), by fraction-free elimination on the integer-scaled matrix.
BigRational hankel_determinant(const exact::GregoryTable& table, const IndexTuple& indices, HankelVariant variant);

/// The matrix hankel_determinant works on.
std::vector<std::vector<BigRational>> hankel_matrix(const exact::GregoryTable& table, const IndexTuple& indices,
                                                     HankelVariant variant);

/// Fraction-free Bareiss determinant of a square rational matrix.
BigRational bareiss_determinant(const std::vector<std::vector<BigRational>>& matrix);

/// Every tuple in {0..max_entry}^m for 1 <= m <= max_m, both variants, det >= 0.
CmReport hankel_sweep(const exact::GregoryTable& table, unsigned max_m, unsigned max_entry,
                      kernels::Execution ex = kernels::Execution::Parallel);

/// lambda is majorized by mu. DomainError on length mismatch or empty tuples.
bool is_majorized(const IndexTuple& lambda, const IndexTuple& mu);

/// |prod lambda_i! b_{lambda_i+1}| <= |prod mu_i! b_{mu_i+1}|.
CmReport check_majorization_inequality(const exact::GregoryTable& table, const IndexTuple& lambda,
                                       const IndexTuple& mu);

/// All majorizing pairs in {0..max_entry}^m, 1 <= m <= max_m.
CmReport majorization_sweep(const exact::GregoryTable& table, unsigned max_m, unsigned max_entry,
                            kernels::Execution ex = kernels::Execution::Parallel);

/// (i! b_{i+1}) ((i+2)! b_{i+3}) >= ((i+1)! b_{i+2})^2 for 0 <= i <= N - 3.
CmReport check_log_convexity(const exact::GregoryTable& table);

// ---------------------------------------------------------------------------
// Function screens.

using RealFunction = std::function<double(double)>;

struct GridOptions {
    int max_order = 8;
    /// Forward-difference step; when unset, min(0.1, x / (2 K)) per grid point.
    std::optional<double> step;
    /// Allowed negative excursion of (-1)^k Delta_h^k f.
    double slack = 1e-12;
};

/// (-1)^k Delta_h^k f(x) >= -slack for all grid x and 0 <= k <= K.
/// A necessary-condition screen for complete monotonicity.
CmReport cm_grid_test(const RealFunction& f, const std::vector<double>& x_grid, const GridOptions& opts,
                      std::string suite = "cm-grid");

struct DegreeBracket {
    std::optional<double> largest_passing;
    std::optional<double> first_failing;
};

/// Scans r ascending; x^r f(x) is screened with cm_grid_test. Returns the
/// largest passing r and the first failing r.
DegreeBracket estimate_cm_degree(const RealFunction& f, const std::vector<double>& r_grid,
                                 const std::vector<double>& x_grid, const GridOptions& opts);

/// f >= 0 on the grid and f' passes the CM screen.
CmReport check_bernstein(const RealFunction& f, const RealFunction& f_prime, const std::vector<double>& x_grid,
                         const GridOptions& opts, std::string suite = "bernstein");

/// Numeric spot check of the h_n(x) determinant inequalities:
/// det[(-1)^(a_i+a_j) (n+a_i+a_j-1)!/(n-1)! h_{n+a_i+a_j}(x)] >= -slack and the
/// same without the sign, over tuples in {0..max_entry}^m, m <= max_m.
CmReport check_h_determinants(const std::vector<int>& n_values, const std::vector<double>& x_values,
                              unsigned max_m, unsigned max_entry, double tol, double slack);

}  // namespace gregory::properties
