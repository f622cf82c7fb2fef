#pragma once

/**
 * @file prime_field.hpp
 * @brief Arithmetic in the prime field F_q for an odd prime modulus q.
 *
 * Each element carries its modulus; combining elements with different
 * moduli throws klp::mixed_field_error.  The modulus is validated as an
 * odd prime when the field spec is constructed, never at operation time.
 * Elements are stored as canonical residues in [0, q).
 */

#include <cstdint>
#include <string>
#include <utility>

#include "klp/errors.hpp"

namespace klp {

/// Deterministic Miller-Rabin over the base set that is exact for all
/// 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == small) return true;
        if (n % small == 0) return false;
    }
    const auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) -> std::uint64_t {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
    };
    const auto powmod = [&](std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
        std::uint64_t acc = 1;
        base %= m;
        while (exp) {
            if (exp & 1) acc = mulmod(acc, base, m);
            base = mulmod(base, base, m);
            exp >>= 1;
        }
        return acc;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

class Fp {
public:
    /// Field descriptor: the modulus.  Constructing a Spec validates that
    /// the modulus is an odd prime (characteristic 2 is excluded globally).
    struct Spec {
        std::uint64_t modulus = 0;

        Spec() = default;
        explicit Spec(std::uint64_t q) : modulus(q) {
            if (q == 2) throw invalid_parameter("modulus 2 not supported: field characteristic must be odd");
            if (!is_prime_u64(q)) throw invalid_parameter("modulus " + std::to_string(q) + " is not prime");
        }
        bool operator==(const Spec&) const = default;
    };

    static constexpr bool is_prime_field = true;

    Fp() = delete;
    Fp(std::uint64_t residue, Spec spec) : v_(residue % spec.modulus), spec_(spec) {}

    static Fp zero(const Spec& s) { return Fp(0, s); }
    static Fp one(const Spec& s) { return Fp(1, s); }
    static Fp from_integer(long long value, const Spec& s) {
        const auto q = static_cast<long long>(s.modulus);
        long long r = value % q;
        if (r < 0) r += q;
        return Fp(static_cast<std::uint64_t>(r), s);
    }

    /// Parses a decimal residue (canonical) or "a/b" as a * b^{-1}.
    static Fp parse(const std::string& text, const Spec& s);

    /// Feasible means 0 <= N < q, so the Pochhammer denominators (-N)_n with
    /// n <= N never vanish.
    static bool feasible(long long n, const Spec& s) {
        return n >= 0 && static_cast<std::uint64_t>(n) < s.modulus;
    }

    Spec spec() const { return spec_; }
    std::uint64_t value() const { return v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp operator-() const { return Fp(v_ == 0 ? 0 : spec_.modulus - v_, spec_); }
    Fp& operator+=(const Fp& o) {
        check(o);
        v_ += o.v_;
        if (v_ >= spec_.modulus) v_ -= spec_.modulus;
        return *this;
    }
    Fp& operator-=(const Fp& o) {
        check(o);
        v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + spec_.modulus - o.v_;
        return *this;
    }
    Fp& operator*=(const Fp& o) {
        check(o);
        v_ = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v_) * o.v_ % spec_.modulus);
        return *this;
    }
    Fp& operator/=(const Fp& o) {
        check(o);
        return *this *= o.inv();
    }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }

    Fp inv() const {
        if (v_ == 0) throw division_by_zero("inverse of zero in F_" + std::to_string(spec_.modulus));
        // Extended Euclid on (v, q); q prime guarantees gcd 1.
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(spec_.modulus), new_r = static_cast<std::int64_t>(v_);
        while (new_r != 0) {
            const std::int64_t quot = r / new_r;
            t = std::exchange(new_t, t - quot * new_t);
            r = std::exchange(new_r, r - quot * new_r);
        }
        if (t < 0) t += static_cast<std::int64_t>(spec_.modulus);
        return Fp(static_cast<std::uint64_t>(t), spec_);
    }

    bool operator==(const Fp& o) const {
        check(o);
        return v_ == o.v_;
    }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    std::string str() const { return std::to_string(v_); }

private:
    void check(const Fp& o) const {
        if (spec_ != o.spec_)
            throw mixed_field_error("cannot combine F_" + std::to_string(spec_.modulus) +
                                    " with F_" + std::to_string(o.spec_.modulus));
    }

    std::uint64_t v_;
    Spec spec_;
};

inline Fp Fp::parse(const std::string& text, const Spec& s) {
    const auto bad = [&] { throw parse_error("malformed residue: '" + text + "'"); };
    if (text.empty()) bad();
    const auto slash = text.find('/');
    const auto parse_int = [&](const std::string& part) -> Fp {
        if (part.empty()) bad();
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) bad();
        Fp acc = Fp::zero(s);
        const Fp ten = Fp::from_integer(10, s);
        for (; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') bad();
            acc = acc * ten + Fp::from_integer(part[i] - '0', s);
        }
        return part[0] == '-' ? -acc : acc;
    };
    if (slash == std::string::npos) return parse_int(text);
    return parse_int(text.substr(0, slash)) / parse_int(text.substr(slash + 1));
}

inline std::string to_string(const Fp& x) { return x.str(); }

} // namespace klp
