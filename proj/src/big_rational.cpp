#include "gregory/big_rational.hpp"

#include <stdexcept>

namespace gregory {

BigRational::BigRational(const BigInt& num, const BigInt& den) {
    if (den == 0) {
        throw std::domain_error("BigRational: zero denominator");
    }
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
    const auto slash = text.find('/');
    const std::string num_text(text.substr(0, slash));
    const std::string den_text = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
    auto valid = [](const std::string& s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) ++i;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') return false;
        }
        return true;
    };
    if (!valid(num_text, true) || !valid(den_text, false)) {
        throw std::invalid_argument("BigRational: cannot parse '" + std::string(text) + "'");
    }
    const BigInt den(den_text, 10);
    if (den == 0) {
        throw std::invalid_argument("BigRational: zero denominator in '" + std::string(text) + "'");
    }
    // mpz_class rejects a leading '+'.
    const BigInt num(num_text[0] == '+' ? num_text.substr(1) : num_text, 10);
    return BigRational(num, den);
}

BigRational BigRational::abs() const {
    mpq_class r = ::abs(q_);
    return BigRational(std::move(r));
}

std::string BigRational::to_string() const {
    return q_.get_num().get_str(10) + "/" + q_.get_den().get_str(10);
}

BigRational& BigRational::operator+=(const BigRational& rhs) {
    q_ += rhs.q_;
    return *this;
}

BigRational& BigRational::operator-=(const BigRational& rhs) {
    q_ -= rhs.q_;
    return *this;
}

BigRational& BigRational::operator*=(const BigRational& rhs) {
    q_ *= rhs.q_;
    return *this;
}

BigRational& BigRational::operator/=(const BigRational& rhs) {
    if (rhs.is_zero()) {
        throw std::domain_error("BigRational: division by zero");
    }
    q_ /= rhs.q_;
    return *this;
}

BigRational BigRational::operator-() const {
    mpq_class r = -q_;
    return BigRational(std::move(r));
}

bool BigRational::is_canonical() const {
    const BigInt& den = q_.get_den();
    if (den <= 0) return false;
    if (q_.get_num() == 0) return den == 1;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), q_.get_num().get_mpz_t(), den.get_mpz_t());
    return g == 1;
}

std::ostream& operator<<(std::ostream& os, const BigRational& r) {
    return os << r.to_string();
}

BigInt factorial(unsigned long n) {
    BigInt result;
    mpz_fac_ui(result.get_mpz_t(), n);
    return result;
}

}  // namespace gregory
