#include "gregory/exact_core.hpp"

#include "gregory/errors.hpp"

#include <stdexcept>
#include <string>

namespace gregory::exact {

std::string_view method_name(Method m) {
    switch (m) {
        case Method::SeriesRecurrence: return "series";
        case Method::ExplicitFormula: return "explicit";
    }
    return "unknown";
}

GregoryTable::GregoryTable(std::vector<BigRational> values, Method method)
    : values_(std::move(values)), method_(method) {
    if (values_.empty()) {
        throw std::logic_error("GregoryTable: empty table");
    }
    if (values_[0] != BigRational(1)) {
        throw std::logic_error("GregoryTable: b_0 != 1");
    }
    if (values_.size() > 1 && values_[1] != BigRational(1, 2)) {
        throw std::logic_error("GregoryTable: b_1 != 1/2");
    }
    for (std::size_t n = 1; n < values_.size(); ++n) {
        const int expected = n % 2 == 1 ? 1 : -1;
        if (values_[n].sign() != expected) {
            throw std::logic_error("GregoryTable: sign of b_" + std::to_string(n) + " is not (-1)^(n+1)");
        }
    }
}

NestedSumMemo::NestedSumMemo() {
    rows_.push_back({BigRational(1)});
    factorials_.push_back(BigInt(1));
}

void NestedSumMemo::grow_to(std::size_t m) {
    while (rows_.size() <= m) {
        const std::size_t k = rows_.size();
        const BigRational inv_k(1L, static_cast<long>(k));
        const auto& prev = rows_.back();
        std::vector<BigRational> next(k + 1);
        next[0] = BigRational(1);
        for (std::size_t d = 1; d <= k; ++d) {
            BigRational carry = prev[d - 1] * inv_k;
            next[d] = d < prev.size() ? prev[d] + carry : carry;
        }
        rows_.push_back(std::move(next));
    }
}

const BigRational& NestedSumMemo::get(std::size_t m, std::size_t d) {
    static const BigRational zero(0);
    if (d > m) return zero;
    grow_to(m);
    return rows_[m][d];
}

const BigInt& NestedSumMemo::factorial(std::size_t n) {
    while (factorials_.size() <= n) {
        factorials_.push_back(factorials_.back() * static_cast<unsigned long>(factorials_.size()));
    }
    return factorials_[n];
}

GregoryTable bernoulli2_series(std::size_t max_index) {
    // ln(1+x)/x = sum_k (-1)^k x^k / (k+1); the product with sum b_n x^n is 1.
    std::vector<BigRational> log_coeff(max_index + 1);
    for (std::size_t k = 0; k <= max_index; ++k) {
        log_coeff[k] = BigRational(k % 2 == 0 ? 1L : -1L, static_cast<long>(k + 1));
    }
    std::vector<BigRational> b(max_index + 1);
    b[0] = BigRational(1);
    for (std::size_t n = 1; n <= max_index; ++n) {
        BigRational acc;
        for (std::size_t k = 1; k <= n; ++k) {
            acc += log_coeff[k] * b[n - k];
        }
        b[n] = -acc;
    }
    return GregoryTable(std::move(b), Method::SeriesRecurrence);
}

BigRational nested_sum(std::size_t m, std::size_t d, NestedSumMemo& memo) {
    return memo.get(m, d);
}

BigRational a_coefficient(long n, long i, NestedSumMemo& memo) {
    if (n < 1 || i < 2 || i > n + 1) {
        throw DomainError("a_coefficient: need n >= 1 and 2 <= i <= n+1, got n=" + std::to_string(n) +
                          ", i=" + std::to_string(i));
    }
    const BigInt& n1 = memo.factorial(static_cast<std::size_t>(n - 1));
    if (i == 2) return BigRational(n1);
    const BigInt scale = memo.factorial(static_cast<std::size_t>(i - 1)) * n1;
    return BigRational(scale) * memo.get(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(i - 2));
}

namespace {

// a_{m,i} with indices outside the defined range read as 0.
BigRational a_or_zero(long m, long i, NestedSumMemo& memo) {
    if (m < 1 || i < 2 || i > m + 1) return BigRational(0);
    return a_coefficient(m, i, memo);
}

}  // namespace

BigRational bernoulli2_explicit(long n, NestedSumMemo& memo) {
    if (n < 2) {
        throw DomainError("bernoulli2_explicit: formula holds for n >= 2, got n=" + std::to_string(n));
    }
    BigRational sum(1L, n + 1);
    const BigRational n_rat(n);
    for (long k = 2; k <= n; ++k) {
        BigRational term = a_coefficient(n, k, memo) - n_rat * a_or_zero(n - 1, k, memo);
        term /= BigRational(memo.factorial(static_cast<std::size_t>(k)));
        sum += term;
    }
    sum /= BigRational(memo.factorial(static_cast<std::size_t>(n)));
    return n % 2 == 0 ? sum : -sum;
}

GregoryTable bernoulli2_explicit_table(std::size_t max_index) {
    std::vector<BigRational> values;
    values.reserve(max_index + 1);
    values.emplace_back(1);
    if (max_index >= 1) values.emplace_back(1L, 2L);
    NestedSumMemo memo;
    for (std::size_t n = 2; n <= max_index; ++n) {
        values.push_back(bernoulli2_explicit(static_cast<long>(n), memo));
    }
    return GregoryTable(std::move(values), Method::ExplicitFormula);
}

}  // namespace gregory::exact
