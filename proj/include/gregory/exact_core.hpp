#pragma once

// Exact Gregory coefficients b_n, defined by x / ln(1 + x) = sum_n b_n x^n.
//
// Two independent exact algorithms:
//   * series division of the generating function (b_0 .. b_N in O(N^2)),
//   * the explicit nested-harmonic-sum formula, valid for n >= 2.

#include "gregory/big_rational.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace gregory::exact {

enum class Method { SeriesRecurrence, ExplicitFormula };

std::string_view method_name(Method m);

/// b_0 .. b_N together with the algorithm that produced them.
class GregoryTable {
public:
    GregoryTable(std::vector<BigRational> values, Method method);

    const BigRational& operator[](std::size_t n) const { return values_.at(n); }
    const std::vector<BigRational>& values() const { return values_; }
    std::size_t max_index() const { return values_.size() - 1; }
    Method method() const { return method_; }

private:
    std::vector<BigRational> values_;
    Method method_;
};

/// Triangular memo of chain sums
///   S(m, d) = sum over m >= l_1 > l_2 > ... > l_d >= 1 of prod 1 / l_j,
/// grown row by row with S(m, d) = S(m-1, d) + S(m-1, d-1) / m.
/// Not synchronised: one instance per thread.
class NestedSumMemo {
public:
    NestedSumMemo();

    /// S(m, d); extends the table through row m as needed.
    const BigRational& get(std::size_t m, std::size_t d);

    /// n!, memoised.
    const BigInt& factorial(std::size_t n);

    /// Rows currently stored (rows 0 .. rows()-1).
    std::size_t rows() const { return rows_.size(); }

    /// Row m holds S(m, 0) .. S(m, m).
    const std::vector<BigRational>& row(std::size_t m) const { return rows_.at(m); }

private:
    void grow_to(std::size_t m);

    std::vector<std::vector<BigRational>> rows_;
    std::vector<BigInt> factorials_;
};

GregoryTable bernoulli2_series(std::size_t max_index);

BigRational nested_sum(std::size_t m, std::size_t d, NestedSumMemo& memo);

/// a_{n,2} = (n-1)!, a_{n,i} = (i-1)! (n-1)! S(n-1, i-2) for 3 <= i <= n+1.
/// Throws DomainError for n < 1 or i outside [2, n+1].
BigRational a_coefficient(long n, long i, NestedSumMemo& memo);

/// b_n by the explicit formula. Throws DomainError for n < 2.
BigRational bernoulli2_explicit(long n, NestedSumMemo& memo);

/// b_0 .. b_N where n >= 2 comes from the explicit formula and b_0, b_1 from
/// the recurrence (the formula does not cover them).
GregoryTable bernoulli2_explicit_table(std::size_t max_index);

}  // namespace gregory::exact
