#pragma once

/**
 * @file module.hpp
 * @brief The (N+1)-dimensional irreducible sl2 module, realized as matrices
 *        indexed 0..N over the reference (monomial) basis.
 *
 * The generators act by
 *
 *     rep_e: superdiagonal (1, 2, ..., N)        entry (i-1, i) = i
 *     rep_f: subdiagonal   (N, N-1, ..., 1)      entry (i+1, i) = N - i
 *     rep_h: diag(N, N-2, ..., -N),
 *
 * and the starred generators act through their (e,h,f) coordinates.  The
 * distinguished operators are A = (N I - rep_a)/2 and A* = (N I - rep_h)/2 =
 * diag(0..N).
 *
 * Four bases are tracked relative to the reference basis:
 *
 *     MONO       the reference basis itself;
 *     MONO_DUAL  its dual w.r.t. the bilinear form, scaled by k_i (1-p)^N;
 *     STAR       the starred monomials, with matrix K U (1-p)^N;
 *     STAR_DUAL  their dual, with matrix K U K (1-p)^N.
 *
 * The bilinear form on reference coordinates is G0 = diag(1/(k_i (1-p)^N));
 * every other Gram matrix is M_A^t G0 M_B.  The classical facts checked
 * downstream: A acts as B^t, B, D, D w.r.t. (MONO, MONO_DUAL, STAR_DUAL,
 * STAR) while A* acts as D, D, B, B^t; and the Krawtchouk polynomials in A
 * walk the reference basis: K_j(A) applied to the 0th basis vector gives the
 * j-th one.
 */

#include <cstddef>
#include <string>
#include <vector>

#include "klp/errors.hpp"
#include "klp/field_util.hpp"
#include "klp/krawtchouk.hpp"
#include "klp/matrix.hpp"
#include "klp/report.hpp"
#include "klp/sl2.hpp"

namespace klp {

enum class BasisTag { MONO, MONO_DUAL, STAR, STAR_DUAL };

inline std::string to_string(BasisTag t) {
    switch (t) {
        case BasisTag::MONO: return "mono";
        case BasisTag::MONO_DUAL: return "mono_dual";
        case BasisTag::STAR: return "star";
        case BasisTag::STAR_DUAL: return "star_dual";
    }
    return {};
}

inline BasisTag dual_of(BasisTag t) {
    switch (t) {
        case BasisTag::MONO: return BasisTag::MONO_DUAL;
        case BasisTag::MONO_DUAL: return BasisTag::MONO;
        case BasisTag::STAR: return BasisTag::STAR_DUAL;
        case BasisTag::STAR_DUAL: return BasisTag::STAR;
    }
    return BasisTag::MONO;
}

inline const std::vector<BasisTag>& all_basis_tags() {
    static const std::vector<BasisTag> tags{BasisTag::MONO, BasisTag::MONO_DUAL, BasisTag::STAR,
                                            BasisTag::STAR_DUAL};
    return tags;
}

template <class F>
struct ModuleRealization {
    KrawtchoukTable<F> table;
    ExactMatrix<F> rep_e, rep_h, rep_f;
    ExactMatrix<F> rep_es, rep_hs, rep_fs;
    ExactMatrix<F> A, A_star;

    const Params<F>& params() const { return table.params; }
};

/// Matrix of an arbitrary element y = beta e + alpha h + gamma f.
template <class F>
ExactMatrix<F> rep_of(const ModuleRealization<F>& m, const Sl2Element<F>& y) {
    return y.beta() * m.rep_e + y.alpha() * m.rep_h + y.gamma() * m.rep_f;
}

template <class F>
ModuleRealization<F> build_module(const Params<F>& params) {
    const auto spec = params.spec();
    const auto n = static_cast<std::size_t>(params.N) + 1;
    ExactMatrix<F> e(n, spec), h(n, spec), f(n, spec);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        e(i, i + 1) = F::from_integer(static_cast<long long>(i) + 1, spec);
        f(i + 1, i) = F::from_integer(params.N - static_cast<long long>(i), spec);
    }
    for (std::size_t i = 0; i < n; ++i)
        h(i, i) = F::from_integer(params.N - 2 * static_cast<long long>(i), spec);

    ModuleRealization<F> m{build_table(params), e, h, f, e, h, f, e, h};
    const auto starred = starred_basis(params.p);
    m.rep_es = rep_of(m, starred.el[0]);
    m.rep_hs = rep_of(m, starred.el[1]);
    m.rep_fs = rep_of(m, starred.el[2]);

    const F half = F::from_integer(2, spec).inv();
    const auto scaled_id = [&](const ExactMatrix<F>& rep) {
        ExactMatrix<F> ni = ExactMatrix<F>::identity(n, spec);
        return half * (F::from_integer(params.N, spec) * ni - rep);
    };
    m.A = scaled_id(m.rep_hs); // rep_hs is the action of a
    m.A_star = scaled_id(m.rep_h);
    return m;
}

/// Action of y on a coordinate vector.
template <class F>
std::vector<F> act(const Sl2Element<F>& y, const std::vector<F>& v,
                   const ModuleRealization<F>& m) {
    if (v.size() != m.rep_e.order())
        throw invalid_parameter("vector length must be N+1");
    return mat_vec(rep_of(m, y), v);
}

/// Columns of the returned matrix express the tagged basis in reference
/// coordinates.
template <class F>
ExactMatrix<F> basis_in_reference(BasisTag tag, const ModuleRealization<F>& m) {
    const auto spec = m.params().spec();
    const F scale = field_pow(F::one(spec) - m.params().p, m.params().N);
    switch (tag) {
        case BasisTag::MONO: return ExactMatrix<F>::identity(m.table.K.order(), spec);
        case BasisTag::MONO_DUAL: return scale * m.table.K;
        case BasisTag::STAR: return scale * (m.table.K * m.table.U);
        case BasisTag::STAR_DUAL: return scale * (m.table.K * m.table.U * m.table.K);
    }
    throw invalid_parameter("unknown basis tag");
}

/// Transition matrix from tagA to tagB.
template <class F>
ExactMatrix<F> transition(BasisTag a, BasisTag b, const ModuleRealization<F>& m) {
    if (a == BasisTag::MONO) return basis_in_reference(b, m);
    return inverse(basis_in_reference(a, m)) * basis_in_reference(b, m);
}

/// The defining bilinear form on reference coordinates:
/// G0 = diag(1/(k_i (1-p)^N)).
template <class F>
ExactMatrix<F> reference_gram(const ModuleRealization<F>& m) {
    const auto spec = m.params().spec();
    const F scale = field_pow(F::one(spec) - m.params().p, -m.params().N);
    return scale * inverse(m.table.K);
}

/// Gram matrix between two tagged bases: M_A^t G0 M_B.
template <class F>
ExactMatrix<F> gram_matrix(BasisTag a, BasisTag b, const ModuleRealization<F>& m) {
    return basis_in_reference(a, m).transpose() * reference_gram(m) * basis_in_reference(b, m);
}

/// Diagonal scaling from a basis to its dual basis.
template <class F>
ExactMatrix<F> dual_basis_transform(BasisTag tag, const ModuleRealization<F>& m) {
    return transition(tag, dual_of(tag), m);
}

struct DualSumReport {
    bool mono_dual = false; ///< MONO_DUAL vectors sum to the top starred monomial
    bool star_dual = false; ///< STAR_DUAL vectors sum to the 0th reference vector
    bool both() const { return mono_dual && star_dual; }
};

template <class F>
DualSumReport sum_of_dual_basis_check(const ModuleRealization<F>& m) {
    const auto spec = m.params().spec();
    const auto n = m.table.K.order();
    auto column_sums = [&](const ExactMatrix<F>& mat) {
        std::vector<F> sums(n, F::zero(spec));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sums[i] += mat(i, j);
        return sums;
    };
    DualSumReport out;
    const auto mono_dual_sum = column_sums(basis_in_reference(BasisTag::MONO_DUAL, m));
    const auto star = basis_in_reference(BasisTag::STAR, m);
    out.mono_dual = true;
    for (std::size_t i = 0; i < n; ++i)
        if (mono_dual_sum[i] != star(i, 0)) out.mono_dual = false;
    const auto star_dual_sum = column_sums(basis_in_reference(BasisTag::STAR_DUAL, m));
    out.star_dual = true;
    for (std::size_t i = 0; i < n; ++i) {
        const F expected = i == 0 ? F::one(spec) : F::zero(spec);
        if (star_dual_sum[i] != expected) out.star_dual = false;
    }
    return out;
}

/// For each generator y in (e, h, f, e*, h*, f*): rep(y)^t G0 = G0 rep(y^dagger).
template <class F>
bool adjointness_check(const ModuleRealization<F>& m) {
    const auto spec = m.params().spec();
    const auto& p = m.params().p;
    const auto g0 = reference_gram(m);
    std::vector<Sl2Element<F>> generators{Sl2Element<F>::e(spec), Sl2Element<F>::h(spec),
                                          Sl2Element<F>::f(spec)};
    for (const auto& el : starred_basis(p).el) generators.push_back(el);
    for (const auto& y : generators) {
        const auto lhs = rep_of(m, y).transpose() * g0;
        const auto rhs = g0 * rep_of(m, dagger_map(y, p));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

/// K_j(A) maps the 0th reference vector to the j-th; dually, K_j(A*) does the
/// same in STAR coordinates.
template <class F>
bool polynomial_basis_check(const ModuleRealization<F>& m) {
    const auto spec = m.params().spec();
    const auto n = m.table.K.order();
    const auto t = transition(BasisTag::MONO, BasisTag::STAR, m);
    const auto a_star_in_star = inverse(t) * m.A_star * t;
    for (long long j = 0; j < static_cast<long long>(n); ++j) {
        const auto poly = kraw_coeffs(m.params(), j);
        const auto primal = eval_poly_at_matrix(poly, m.A);
        const auto dual = eval_poly_at_matrix(poly, a_star_in_star);
        for (std::size_t i = 0; i < n; ++i) {
            const F expected =
                i == static_cast<std::size_t>(j) ? F::one(spec) : F::zero(spec);
            if (primal(i, 0) != expected || dual(i, 0) != expected) return false;
        }
    }
    return true;
}

/// A acts as (B^t, B, D, D) and A* as (D, D, B, B^t) with respect to
/// (MONO, MONO_DUAL, STAR_DUAL, STAR).
template <class F>
IdentityReport operator_matrix_report(const ModuleRealization<F>& m) {
    auto wrt = [&](const ExactMatrix<F>& op, BasisTag tag) {
        const auto t = transition(BasisTag::MONO, tag, m);
        return inverse(t) * op * t;
    };
    const auto bt = m.table.B.transpose();
    IdentityReport r;
    r.add("A.mono", wrt(m.A, BasisTag::MONO) == bt);
    r.add("A.mono_dual", wrt(m.A, BasisTag::MONO_DUAL) == m.table.B);
    r.add("A.star_dual", wrt(m.A, BasisTag::STAR_DUAL) == m.table.D);
    r.add("A.star", wrt(m.A, BasisTag::STAR) == m.table.D);
    r.add("Astar.mono", wrt(m.A_star, BasisTag::MONO) == m.table.D);
    r.add("Astar.mono_dual", wrt(m.A_star, BasisTag::MONO_DUAL) == m.table.D);
    r.add("Astar.star_dual", wrt(m.A_star, BasisTag::STAR_DUAL) == m.table.B);
    r.add("Astar.star", wrt(m.A_star, BasisTag::STAR) == bt);
    return r;
}

} // namespace klp
