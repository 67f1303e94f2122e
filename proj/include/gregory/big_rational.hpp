#pragma once

// Exact arbitrary-precision rationals. Thin value type over GMP's mpq_class;
// every result is kept in canonical form (den > 0, gcd(|num|, den) = 1, 0 = 0/1).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace gregory {

using BigInt = mpz_class;

class BigRational {
public:
    BigRational() = default;
    BigRational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    BigRational(int value) : q_(static_cast<long>(value)) {}  // NOLINT
    explicit BigRational(const BigInt& value) : q_(value) {}
    BigRational(const BigInt& num, const BigInt& den);
    BigRational(long num, long den) : BigRational(BigInt(num), BigInt(den)) {}

    /// Parses "num/den" or "k" (base 10). Throws std::invalid_argument on
    /// malformed input or a zero denominator.
    static BigRational parse(std::string_view text);

    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    BigRational abs() const;
    double to_double() const { return q_.get_d(); }

    /// Always "num/den", integers included ("3/1", "0/1").
    std::string to_string() const;

    BigRational& operator+=(const BigRational& rhs);
    BigRational& operator-=(const BigRational& rhs);
    BigRational& operator*=(const BigRational& rhs);
    /// Throws std::domain_error on division by zero.
    BigRational& operator/=(const BigRational& rhs);

    friend BigRational operator+(BigRational lhs, const BigRational& rhs) { return lhs += rhs; }
    friend BigRational operator-(BigRational lhs, const BigRational& rhs) { return lhs -= rhs; }
    friend BigRational operator*(BigRational lhs, const BigRational& rhs) { return lhs *= rhs; }
    friend BigRational operator/(BigRational lhs, const BigRational& rhs) { return lhs /= rhs; }
    BigRational operator-() const;

    friend bool operator==(const BigRational& a, const BigRational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// True when the stored value satisfies the canonical-form invariants.
    bool is_canonical() const;

    const mpq_class& raw() const { return q_; }

private:
    explicit BigRational(mpq_class q) : q_(std::move(q)) {}

    mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const BigRational& r);

/// n! as an arbitrary-precision integer.
BigInt factorial(unsigned long n);

}  // namespace gregory
