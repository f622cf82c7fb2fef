#pragma once

/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision rational scalars.
 *
 * Wraps boost::multiprecision::cpp_rational and exposes the field-scalar
 * interface shared with klp::Fp: construction from a field spec, canonical
 * text form, and checked arithmetic.
 *
 * Invariants:
 *  - values are always in lowest terms with a positive denominator
 *    (eager normalization by the backend on every operation);
 *  - the canonical text form is "num/den", with "/den" omitted when the
 *    denominator is 1 (examples: "3", "-1/2").
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "klp/errors.hpp"

namespace klp {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
public:
    /// Field descriptor.  Rational arithmetic needs no runtime data; the
    /// struct exists so generic code can treat every scalar type uniformly.
    struct Spec {
        bool operator==(const Spec&) const = default;
    };

    static constexpr bool is_prime_field = false;

    Rational() = default;
    Rational(long long value) : v_(value) {}                     // NOLINT: implicit by design
    Rational(const BigInt& num, const BigInt& den) : v_(make(num, den)) {}
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    static Rational zero(const Spec&) { return Rational(0); }
    static Rational one(const Spec&) { return Rational(1); }
    static Rational from_integer(long long value, const Spec&) { return Rational(value); }

    /// Parses "num" or "num/den" with optional leading '-' on the numerator.
    static Rational parse(const std::string& text, const Spec& = {});

    /// Every nonnegative N is feasible in characteristic zero.
    static bool feasible(long long n, const Spec&) { return n >= 0; }

    Spec spec() const { return {}; }

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_ == 1; }

    Rational operator-() const { return Rational(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw division_by_zero();
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    Rational inv() const {
        if (is_zero()) throw division_by_zero("inverse of zero");
        return Rational(1) / *this;
    }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }

    std::string str() const {
        if (denominator() == 1) return numerator().str();
        return numerator().str() + "/" + denominator().str();
    }

private:
    explicit Rational(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}

    static boost::multiprecision::cpp_rational make(const BigInt& num, const BigInt& den) {
        if (den == 0) throw division_by_zero("rational with zero denominator");
        return den < 0 ? boost::multiprecision::cpp_rational(-num, -den)
                       : boost::multiprecision::cpp_rational(num, den);
    }

    boost::multiprecision::cpp_rational v_;
};

inline Rational Rational::parse(const std::string& text, const Spec&) {
    const auto bad = [&] { throw parse_error("malformed rational: '" + text + "'"); };
    if (text.empty()) bad();
    const auto slash = text.find('/');
    const std::string num_part = text.substr(0, slash);
    const std::string den_part = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (num_part.empty() || den_part.empty()) bad();
    const auto digits = [&](const std::string& s, bool sign_ok) {
        std::size_t i = sign_ok && (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) bad();
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') bad();
    };
    digits(num_part, true);
    digits(den_part, false);
    BigInt den(den_part);
    if (den == 0) throw parse_error("rational with zero denominator: '" + text + "'");
    const std::string num_digits = num_part[0] == '+' ? num_part.substr(1) : num_part;
    return Rational(BigInt(num_digits), den);
}

inline std::string to_string(const Rational& x) { return x.str(); }

} // namespace klp
