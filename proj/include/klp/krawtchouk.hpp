#pragma once

/**
 * @file krawtchouk.hpp
 * @brief Krawtchouk polynomials K_i(x; p, N) and their matrix identities.
 *
 * K_i(x) is the terminating hypergeometric sum
 *
 *     K_i(x) = sum_{n=0}^{i} [ (-i)_n (-x)_n ] / [ (-N)_n n! p^n ],
 *
 * defined for a feasible N (N >= 0, and N < q in characteristic q) and a
 * parameter p outside {0, 1}.  Feasibility keeps every denominator
 * (-N)_n, n <= i <= N, away from zero.
 *
 * The matrix bundle collects the five classical (N+1)x(N+1) matrices:
 *   U  eigenmatrix, U[i][j] = K_i(j); symmetric (self-duality);
 *   B  tridiagonal recurrence matrix with rows (c_i, a_i, b_i),
 *      b_i = (i-N)p, c_i = i(p-1), a_i = -b_i - c_i;
 *   D  diag(0..N);
 *   K  diag(k_i) of weights k_i = C(N,i) (p/(1-p))^i;
 *   P  = U K.
 * They satisfy U^t = U, B^t = K B K^{-1}, UD = BU, DU = UB^t and the
 * inversion identity (1-p)^N UKUK = I, along with the P-variants.
 */

#include <string>
#include <utility>
#include <vector>

#include "klp/errors.hpp"
#include "klp/field_util.hpp"
#include "klp/matrix.hpp"
#include "klp/poly.hpp"
#include "klp/report.hpp"

namespace klp {

template <class F>
struct Params {
    using Spec = typename F::Spec;

    long long N;
    F p;

    Params(long long n, F p_value) : N(n), p(std::move(p_value)) {
        const Spec s = p.spec();
        if (!F::feasible(n, s))
            throw invalid_parameter("N = " + std::to_string(n) + " is not feasible for this field");
        if (p.is_zero() || p.is_one())
            throw invalid_parameter("parameter p must avoid 0 and 1");
    }

    Spec spec() const { return p.spec(); }
};

/// K_i(x) for 0 <= i <= N and integer x, by the terminating series with the
/// incremental term update
///   t_{n+1} = t_n * (-i+n)(-x+n) / ((-N+n)(n+1) p).
template <class F>
F kraw_eval(const Params<F>& params, long long i, long long x) {
    if (i < 0 || i > params.N)
        throw invalid_parameter("degree index i must lie in 0..N");
    const auto spec = params.spec();
    F term = F::one(spec);
    F sum = term;
    for (long long n = 0; n < i; ++n) {
        const F numer = F::from_integer(-i + n, spec) * F::from_integer(-x + n, spec);
        const F denom = F::from_integer(-params.N + n, spec) * F::from_integer(n + 1, spec) * params.p;
        term *= numer / denom;
        sum += term;
    }
    return sum;
}

/// K_i as a polynomial in x (degree exactly i, leading coefficient
/// 1 / ((-N)_i p^i)).
template <class F>
DensePoly<F> kraw_coeffs(const Params<F>& params, long long i) {
    if (i < 0 || i > params.N)
        throw invalid_parameter("degree index i must lie in 0..N");
    const auto spec = params.spec();
    DensePoly<F> sum({F::one(spec)}, spec);
    DensePoly<F> falling({F::one(spec)}, spec); // (-x)_n = prod_{k<n} (k - x)
    F c = F::one(spec);
    for (long long n = 0; n < i; ++n) {
        c *= F::from_integer(-i + n, spec) /
             (F::from_integer(-params.N + n, spec) * F::from_integer(n + 1, spec) * params.p);
        falling = falling * DensePoly<F>({F::from_integer(n, spec), -F::one(spec)}, spec);
        sum = sum + c * falling;
    }
    return sum;
}

/// Orthogonality weight k_i = C(N,i) (p/(1-p))^i.
template <class F>
F kraw_weight(const Params<F>& params, long long i) {
    if (i < 0 || i > params.N)
        throw invalid_parameter("weight index i must lie in 0..N");
    const auto spec = params.spec();
    const F one = F::one(spec);
    return field_binomial<F>(params.N, i, spec) * field_pow(params.p / (one - params.p), i);
}

template <class F>
struct KrawtchoukTable {
    Params<F> params;
    ExactMatrix<F> U, B, D, K, P;
};

/// Recurrence coefficients: b_i = (i-N)p, c_i = i(p-1), a_i = -b_i - c_i.
template <class F>
F kraw_b(const Params<F>& params, long long i) {
    return F::from_integer(i - params.N, params.spec()) * params.p;
}
template <class F>
F kraw_c(const Params<F>& params, long long i) {
    return F::from_integer(i, params.spec()) * (params.p - F::one(params.spec()));
}
template <class F>
F kraw_a(const Params<F>& params, long long i) {
    return -kraw_b(params, i) - kraw_c(params, i);
}

template <class F>
KrawtchoukTable<F> build_table(const Params<F>& params) {
    const auto spec = params.spec();
    const auto n = static_cast<std::size_t>(params.N) + 1;
    ExactMatrix<F> u(n, spec), b(n, spec), d(n, spec), k(n, spec);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            u(i, j) = kraw_eval(params, static_cast<long long>(i), static_cast<long long>(j));
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<long long>(i);
        b(i, i) = kraw_a(params, ii);
        if (i + 1 < n) b(i, i + 1) = kraw_b(params, ii);
        if (i > 0) b(i, i - 1) = kraw_c(params, ii);
        d(i, i) = F::from_integer(ii, spec);
        k(i, i) = kraw_weight(params, ii);
    }
    return KrawtchoukTable<F>{params, u, b, d, k, u * k};
}

/// The five eigenmatrix identities: symmetry, similarity, recurrence,
/// difference, inversion.
template <class F>
IdentityReport eigenmatrix_identities(const KrawtchoukTable<F>& t) {
    const auto spec = t.params.spec();
    const auto n = t.U.order();
    const auto id = ExactMatrix<F>::identity(n, spec);
    const F scale = field_pow(F::one(spec) - t.params.p, t.params.N);
    IdentityReport r;
    r.add("U.symmetric", t.U.transpose() == t.U);
    r.add("B.similarity", t.B.transpose() == t.K * t.B * inverse(t.K));
    r.add("recurrence.matrix", t.U * t.D == t.B * t.U);
    r.add("difference.matrix", t.D * t.U == t.U * t.B.transpose());
    r.add("inversion", scale * (t.U * t.K * t.U * t.K) == id);
    return r;
}

/// The same five identities rewritten for P = UK.
template <class F>
IdentityReport product_matrix_identities(const KrawtchoukTable<F>& t) {
    const auto spec = t.params.spec();
    const auto n = t.P.order();
    const auto id = ExactMatrix<F>::identity(n, spec);
    const F scale = field_pow(F::one(spec) - t.params.p, -t.params.N);
    IdentityReport r;
    r.add("P.similarity", t.P.transpose() == t.K * t.P * inverse(t.K));
    r.add("B.similarity", t.B.transpose() == t.K * t.B * inverse(t.K));
    r.add("P.intertwines.recurrence", t.P * t.D == t.B * t.P);
    r.add("P.intertwines.difference", t.P * t.B == t.D * t.P);
    r.add("P.square", t.P * t.P == scale * id);
    return r;
}

/// x K_i(x) - [ c_i K_{i-1}(x) + a_i K_i(x) + b_i K_{i+1}(x) ].  Out-of-range
/// neighbors are never evaluated: their coefficients vanish at the boundary
/// (c_0 = 0, b_N = 0).
template <class F>
F three_term_residual(const Params<F>& params, long long i, long long x) {
    const auto spec = params.spec();
    F rhs = kraw_a(params, i) * kraw_eval(params, i, x);
    const F c = kraw_c(params, i);
    if (!c.is_zero()) rhs += c * kraw_eval(params, i - 1, x);
    const F b = kraw_b(params, i);
    if (!b.is_zero()) rhs += b * kraw_eval(params, i + 1, x);
    return F::from_integer(x, spec) * kraw_eval(params, i, x) - rhs;
}

/// i K_i(x) - [ x(p-1) K_i(x-1) - (x(p-1) + (x-N)p) K_i(x) + (x-N)p K_i(x+1) ],
/// with the same boundary-coefficient convention in x.
template <class F>
F difference_residual(const Params<F>& params, long long i, long long x) {
    const auto spec = params.spec();
    const F left = F::from_integer(x, spec) * (params.p - F::one(spec));
    const F right = F::from_integer(x - params.N, spec) * params.p;
    F rhs = -(left + right) * kraw_eval(params, i, x);
    if (!left.is_zero()) rhs += left * kraw_eval(params, i, x - 1);
    if (!right.is_zero()) rhs += right * kraw_eval(params, i, x + 1);
    return F::from_integer(i, spec) * kraw_eval(params, i, x) - rhs;
}

struct OrthogonalityReport {
    bool sum_over_argument = false; ///< sum_x K_n(x)K_m(x) C(N,x) p^x (1-p)^{N-x}
    bool sum_over_degree = false;   ///< sum_n K_n(i)K_n(j) C(N,n) p^n (1-p)^{N-n}
    bool both() const { return sum_over_argument && sum_over_degree; }
};

/// Both orthogonality sums, exhaustively over all index pairs.
template <class F>
OrthogonalityReport orthogonality_check(const Params<F>& params) {
    const auto spec = params.spec();
    const F one = F::one(spec);
    const long long n = params.N;
    std::vector<F> weight, ratio; // C(N,x) p^x (1-p)^{N-x} and ((1-p)/p)^i / C(N,i)
    for (long long x = 0; x <= n; ++x) {
        weight.push_back(field_binomial<F>(n, x, spec) * field_pow(params.p, x) *
                         field_pow(one - params.p, n - x));
        ratio.push_back(field_pow((one - params.p) / params.p, x) /
                        field_binomial<F>(n, x, spec));
    }
    OrthogonalityReport out;
    out.sum_over_argument = true;
    for (long long a = 0; a <= n; ++a)
        for (long long b = a; b <= n; ++b) {
            F sum = F::zero(spec);
            for (long long x = 0; x <= n; ++x)
                sum += kraw_eval(params, a, x) * kraw_eval(params, b, x) * weight[x];
            const F expected = a == b ? ratio[a] : F::zero(spec);
            if (sum != expected) out.sum_over_argument = false;
        }
    out.sum_over_degree = true;
    for (long long i = 0; i <= n; ++i)
        for (long long j = i; j <= n; ++j) {
            F sum = F::zero(spec);
            for (long long d = 0; d <= n; ++d)
                sum += kraw_eval(params, d, i) * kraw_eval(params, d, j) * weight[d];
            const F expected = i == j ? ratio[i] : F::zero(spec);
            if (sum != expected) out.sum_over_degree = false;
        }
    return out;
}

/// Expands (1 - t(1-p)/p)^x (1+t)^{N-x} by exact convolution and compares the
/// coefficient of t^i with C(N,i) K_i(x), for 0 <= x <= N.
template <class F>
bool generating_function_check(const Params<F>& params, long long x) {
    if (x < 0 || x > params.N)
        throw invalid_parameter("generating-function argument x must lie in 0..N");
    const auto spec = params.spec();
    const F one = F::one(spec);
    using Poly = DensePoly<F>;
    const Poly first({one, -(one - params.p) / params.p}, spec);
    const Poly second({one, one}, spec);
    Poly lhs({one}, spec);
    for (long long k = 0; k < x; ++k) lhs = lhs * first;
    for (long long k = 0; k < params.N - x; ++k) lhs = lhs * second;
    for (long long i = 0; i <= params.N; ++i) {
        const F expected = field_binomial<F>(params.N, i, spec) * kraw_eval(params, i, x);
        if (lhs.coeff(i) != expected) return false;
    }
    return true;
}

/// K_i(j) = K_j(i) for all pairs, via independent evaluations.
template <class F>
bool self_duality_check(const Params<F>& params) {
    for (long long i = 0; i <= params.N; ++i)
        for (long long j = i + 1; j <= params.N; ++j)
            if (kraw_eval(params, i, j) != kraw_eval(params, j, i)) return false;
    return true;
}

} // namespace klp
