#pragma once

/**
 * @file reduction.hpp
 * @brief The reduction homomorphism from rationals with q-invertible
 *        denominators into F_q.
 *
 * reduce(a/b, q) = (a mod q) * (b mod q)^{-1}.  Defined exactly when
 * q does not divide b; reduction commutes with field arithmetic on its
 * domain, which is what the field-consistency checks exercise.
 */

#include "klp/prime_field.hpp"
#include "klp/rational.hpp"

namespace klp {

inline Fp reduce_mod(const Rational& x, const Fp::Spec& spec) {
    const BigInt q(spec.modulus);
    const BigInt den = x.denominator() % q;
    if (den == 0)
        throw division_by_zero("denominator of " + x.str() + " vanishes mod " +
                               std::to_string(spec.modulus));
    BigInt num = x.numerator() % q;
    if (num < 0) num += q;
    return Fp(num.convert_to<std::uint64_t>(), spec) /
           Fp(den.convert_to<std::uint64_t>(), spec);
}

} // namespace klp
