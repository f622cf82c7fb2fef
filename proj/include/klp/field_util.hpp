#pragma once

/**
 * @file field_util.hpp
 * @brief Scalar helpers shared by every module: powers, binomials, and
 *        shifted factorials, all exact over any supported field.
 */

#include "klp/errors.hpp"

namespace klp {

/// x^e for integer e; negative e inverts first (throws division_by_zero on 0).
template <class F>
F field_pow(F base, long long e) {
    auto spec = base.spec();
    if (e < 0) {
        base = base.inv();
        e = -e;
    }
    F acc = F::one(spec);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

/// Shifted factorial (Pochhammer symbol) (alpha)_n = alpha(alpha+1)...(alpha+n-1),
/// with (alpha)_0 = 1.
template <class F>
F shifted_factorial(const F& alpha, long long n) {
    if (n < 0) throw invalid_parameter("shifted factorial needs n >= 0");
    const auto spec = alpha.spec();
    F acc = F::one(spec);
    F term = alpha;
    const F one = F::one(spec);
    for (long long m = 0; m < n; ++m) {
        acc *= term;
        term += one;
    }
    return acc;
}

/// Binomial coefficient C(n, k) as a field element.  Over F_q this is exact
/// for 0 <= k <= n < q (the factorial in the denominator stays invertible).
template <class F>
F field_binomial(long long n, long long k, const typename F::Spec& spec) {
    if (k < 0 || k > n) return F::zero(spec);
    F num = F::one(spec), den = F::one(spec);
    for (long long j = 1; j <= k; ++j) {
        num *= F::from_integer(n - k + j, spec);
        den *= F::from_integer(j, spec);
    }
    return num / den;
}

} // namespace klp
