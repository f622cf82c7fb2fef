#pragma once

/**
 * @file sl2.hpp
 * @brief The concrete 2x2 model of sl2 over an exact field of odd
 *        characteristic (or characteristic zero).
 *
 * Elements are traceless 2x2 matrices, written y = beta*e + alpha*h + gamma*f
 * against the basis
 *
 *     e = [[0,1],[0,0]],  h = [[1,0],[0,-1]],  f = [[0,0],[1,0]],
 *
 * so y = [[alpha, beta], [gamma, -alpha]].  The bilinear form is
 * <y,z> = tr(yz)/2 (one eighth of the Killing form).  A normalized
 * semisimple element has det(y) = -1, equivalently |y|^2 = alpha^2 +
 * beta*gamma = 1.
 *
 * For a parameter p outside {0,1} the distinguished pair is
 *
 *     a  = [[1-2p, 2(1-p)], [2p, 2p-1]],   a* = h,
 *
 * with <a,a*> = 1-2p.  Conjugation by R = W*U2 swaps a and a* (the star
 * map); y -> W y^t W^{-1} is the antiautomorphism fixing both (the dagger
 * map).  Three bases are tracked: (e,h,f), (a,a*,[a,a*]) and the starred
 * basis (e*,h*,f*); this header computes their transition matrices, Gram
 * tables and the matrices of ad a, ad a* from first principles, and also
 * carries the closed-form tables for entrywise comparison.
 */

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "klp/errors.hpp"
#include "klp/matrix.hpp"
#include "klp/poly.hpp"
#include "klp/report.hpp"

namespace klp {

template <class F>
class Sl2Element {
public:
    using Spec = typename F::Spec;

    Sl2Element(F beta, F alpha, F gamma)
        : beta_(std::move(beta)), alpha_(std::move(alpha)), gamma_(std::move(gamma)),
          mat_(2, beta_.spec()) {
        mat_(0, 0) = alpha_;
        mat_(0, 1) = beta_;
        mat_(1, 0) = gamma_;
        mat_(1, 1) = -alpha_;
    }

    static Sl2Element from_matrix(const ExactMatrix<F>& m) {
        if (m.order() != 2) throw invalid_parameter("sl2 elements are 2x2");
        if (!(m(0, 0) + m(1, 1)).is_zero()) throw invalid_parameter("sl2 elements are traceless");
        return Sl2Element(m(0, 1), m(0, 0), m(1, 0));
    }

    static Sl2Element zero(const Spec& s) {
        return Sl2Element(F::zero(s), F::zero(s), F::zero(s));
    }
    static Sl2Element e(const Spec& s) {
        return Sl2Element(F::one(s), F::zero(s), F::zero(s));
    }
    static Sl2Element h(const Spec& s) {
        return Sl2Element(F::zero(s), F::one(s), F::zero(s));
    }
    static Sl2Element f(const Spec& s) {
        return Sl2Element(F::zero(s), F::zero(s), F::one(s));
    }

    const F& beta() const { return beta_; }
    const F& alpha() const { return alpha_; }
    const F& gamma() const { return gamma_; }
    const ExactMatrix<F>& mat() const { return mat_; }
    Spec spec() const { return beta_.spec(); }
    std::vector<F> coords() const { return {beta_, alpha_, gamma_}; }

    /// |y|^2 = alpha^2 + beta*gamma = -det(y).
    F norm_sq() const { return alpha_ * alpha_ + beta_ * gamma_; }

    bool is_zero() const { return beta_.is_zero() && alpha_.is_zero() && gamma_.is_zero(); }

    friend Sl2Element operator+(const Sl2Element& y, const Sl2Element& z) {
        return Sl2Element(y.beta_ + z.beta_, y.alpha_ + z.alpha_, y.gamma_ + z.gamma_);
    }
    friend Sl2Element operator-(const Sl2Element& y, const Sl2Element& z) {
        return Sl2Element(y.beta_ - z.beta_, y.alpha_ - z.alpha_, y.gamma_ - z.gamma_);
    }
    Sl2Element operator-() const { return Sl2Element(-beta_, -alpha_, -gamma_); }
    friend Sl2Element operator*(const F& s, const Sl2Element& y) {
        return Sl2Element(s * y.beta_, s * y.alpha_, s * y.gamma_);
    }
    friend bool operator==(const Sl2Element& y, const Sl2Element& z) {
        return y.beta_ == z.beta_ && y.alpha_ == z.alpha_ && y.gamma_ == z.gamma_;
    }
    friend bool operator!=(const Sl2Element& y, const Sl2Element& z) { return !(y == z); }

private:
    F beta_, alpha_, gamma_;
    ExactMatrix<F> mat_;
};

template <class F>
Sl2Element<F> bracket(const Sl2Element<F>& y, const Sl2Element<F>& z) {
    return Sl2Element<F>::from_matrix(commutator(y.mat(), z.mat()));
}

/// <y,z> = tr(yz)/2, the scaled Killing form.
template <class F>
F killing(const Sl2Element<F>& y, const Sl2Element<F>& z) {
    const auto s = y.spec();
    return (y.mat() * z.mat()).trace() / F::from_integer(2, s);
}

/// Matrix of ad y = [y, .] with respect to (e, h, f).
template <class F>
ExactMatrix<F> ad_matrix(const Sl2Element<F>& y) {
    const auto s = y.spec();
    const F two = F::from_integer(2, s);
    ExactMatrix<F> m(3, s);
    m(0, 0) = two * y.alpha();
    m(0, 1) = -two * y.beta();
    m(1, 0) = -y.gamma();
    m(1, 2) = y.beta();
    m(2, 1) = two * y.gamma();
    m(2, 2) = -two * y.alpha();
    return m;
}

/// det(y) = -1, i.e. |y|^2 = 1; over these fields this certifies that y is
/// diagonalizable with eigenvalues +1, -1.
template <class F>
bool is_normalized_semisimple(const Sl2Element<F>& y) {
    return y.norm_sq().is_one();
}

template <class F>
struct Sl2Pair {
    Sl2Element<F> a;
    Sl2Element<F> a_star;
    F p;
};

namespace detail {
template <class F>
void require_nondegenerate(const F& p) {
    if (p.is_zero() || p.is_one())
        throw invalid_parameter("parameter p must avoid 0 and 1");
}
} // namespace detail

/// a = 2(1-p)e + (1-2p)h + 2p f and a* = h.
template <class F>
Sl2Pair<F> standard_pair(const F& p) {
    detail::require_nondegenerate(p);
    const auto s = p.spec();
    const F one = F::one(s);
    const F two = F::from_integer(2, s);
    Sl2Element<F> a(two * (one - p), one - two * p, two * p);
    return Sl2Pair<F>{std::move(a), Sl2Element<F>::h(s), p};
}

/// Gram matrix of <,> on (a, a*, [a,a*]), computed entrywise from the form.
template <class F>
ExactMatrix<F> gram_table(const Sl2Pair<F>& pair) {
    const auto s = pair.p.spec();
    const std::array<Sl2Element<F>, 3> basis{pair.a, pair.a_star, bracket(pair.a, pair.a_star)};
    ExactMatrix<F> g(3, s);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) g(i, j) = killing(basis[i], basis[j]);
    return g;
}

/// [a,[a,a*]] = 4(2p-1)a + 4a*  and  [a*,[a*,a]] = 4(2p-1)a* + 4a.
/// Evaluates on any pair, including degenerate parameters.
template <class F>
bool relations_check(const Sl2Pair<F>& pair) {
    const auto s = pair.p.spec();
    const F four = F::from_integer(4, s);
    const F c = four * (F::from_integer(2, s) * pair.p - F::one(s));
    const auto com = bracket(pair.a, pair.a_star);
    const bool first = bracket(pair.a, com) == c * pair.a + four * pair.a_star;
    const bool second = bracket(pair.a_star, -com) == c * pair.a_star + four * pair.a;
    return first && second;
}

template <class F>
ExactMatrix<F> u2_matrix(const F& p) {
    detail::require_nondegenerate(p);
    const auto s = p.spec();
    ExactMatrix<F> u(2, s);
    u(0, 0) = u(0, 1) = u(1, 0) = F::one(s);
    u(1, 1) = F::one(s) - p.inv();
    return u;
}

template <class F>
ExactMatrix<F> w_matrix(const F& p) {
    detail::require_nondegenerate(p);
    return ExactMatrix<F>::diagonal({F::one(p.spec()) - p, p}, p.spec());
}

/// R = W * U2; satisfies R^2 = (1-p) I.
template <class F>
ExactMatrix<F> r_matrix(const F& p) {
    return w_matrix(p) * u2_matrix(p);
}

/// y* = R y R^{-1}: the automorphism swapping a and a*.
template <class F>
Sl2Element<F> star_map(const Sl2Element<F>& y, const F& p) {
    const auto r = r_matrix(p);
    return Sl2Element<F>::from_matrix(r * y.mat() * inverse(r));
}

/// y^dagger = W y^t W^{-1}: the antiautomorphism fixing a and a*.
template <class F>
Sl2Element<F> dagger_map(const Sl2Element<F>& y, const F& p) {
    const auto w = w_matrix(p);
    return Sl2Element<F>::from_matrix(w * y.mat().transpose() * inverse(w));
}

enum class Sl2BasisTag { EHF, AASTAR, STARRED };

inline std::string to_string(Sl2BasisTag t) {
    switch (t) {
        case Sl2BasisTag::EHF: return "ehf";
        case Sl2BasisTag::AASTAR: return "aastar";
        case Sl2BasisTag::STARRED: return "starred";
    }
    return {};
}

template <class F>
struct Sl2Basis {
    Sl2BasisTag tag;
    std::array<Sl2Element<F>, 3> el;
};

/// Columns are the (beta, alpha, gamma) coordinates of the basis elements.
template <class F>
ExactMatrix<F> coordinate_matrix(const Sl2Basis<F>& basis) {
    const auto s = basis.el[0].spec();
    ExactMatrix<F> c(3, s);
    for (std::size_t j = 0; j < 3; ++j) {
        const auto v = basis.el[j].coords();
        for (std::size_t i = 0; i < 3; ++i) c(i, j) = v[i];
    }
    return c;
}

/// e* = (p-1)e + ph + (p^2/(1-p))f,  h* = a,  f* = (1-p)e + (1-p)h + (p-1)f.
template <class F>
Sl2Basis<F> starred_basis(const F& p) {
    detail::require_nondegenerate(p);
    const auto s = p.spec();
    const F one = F::one(s);
    Sl2Element<F> es(p - one, p, p * p / (one - p));
    Sl2Element<F> fs(one - p, one - p, p - one);
    return Sl2Basis<F>{Sl2BasisTag::STARRED, {std::move(es), standard_pair(p).a, std::move(fs)}};
}

template <class F>
Sl2Basis<F> basis_triple(Sl2BasisTag tag, const F& p) {
    detail::require_nondegenerate(p);
    const auto s = p.spec();
    Sl2Basis<F> out{tag, {Sl2Element<F>::zero(s), Sl2Element<F>::zero(s), Sl2Element<F>::zero(s)}};
    switch (tag) {
        case Sl2BasisTag::EHF:
            out.el = {Sl2Element<F>::e(s), Sl2Element<F>::h(s), Sl2Element<F>::f(s)};
            break;
        case Sl2BasisTag::AASTAR: {
            auto pair = standard_pair(p);
            auto com = bracket(pair.a, pair.a_star);
            out.el = {std::move(pair.a), std::move(pair.a_star), std::move(com)};
            break;
        }
        case Sl2BasisTag::STARRED:
            out = starred_basis(p);
            break;
    }
    if (rank(coordinate_matrix(out)) != 3)
        throw invalid_parameter("basis elements are linearly dependent");
    return out;
}

/// Transition matrix from `from` to `to`: columns express `to`-elements in
/// the `from` basis.
template <class F>
ExactMatrix<F> transition_between(const Sl2Basis<F>& from, const Sl2Basis<F>& to) {
    return inverse(coordinate_matrix(from)) * coordinate_matrix(to);
}

template <class F>
struct TransitionTables {
    ExactMatrix<F> ehf_to_aastar, aastar_to_ehf;
    ExactMatrix<F> starred_to_aastar, aastar_to_starred;
    ExactMatrix<F> ehf_to_starred, starred_to_ehf;
};

/// All six transition matrices, computed by solving coordinates.
template <class F>
TransitionTables<F> transition_tables(const F& p) {
    const auto ehf = basis_triple(Sl2BasisTag::EHF, p);
    const auto aastar = basis_triple(Sl2BasisTag::AASTAR, p);
    const auto starred = basis_triple(Sl2BasisTag::STARRED, p);
    return TransitionTables<F>{
        transition_between(ehf, aastar),     transition_between(aastar, ehf),
        transition_between(starred, aastar), transition_between(aastar, starred),
        transition_between(ehf, starred),    transition_between(starred, ehf)};
}

namespace detail {
template <class F>
ExactMatrix<F> m3(const typename F::Spec& s, std::array<F, 9> entries) {
    ExactMatrix<F> m(3, s);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = entries[3 * i + j];
    return m;
}
} // namespace detail

/// The same six matrices as closed-form tables in p.
template <class F>
TransitionTables<F> transition_tables_closed(const F& p) {
    detail::require_nondegenerate(p);
    const auto s = p.spec();
    const F o = F::one(s);
    const F z = F::zero(s);
    auto n = [&](long long k) { return F::from_integer(k, s); };
    const F q = o - p; // 1 - p
    const ExactMatrix<F> ehf_to_aastar = detail::m3<F>(
        s, {n(2) * q, z, n(4) * (p - o),
            o - n(2) * p, o, z,
            n(2) * p, z, n(4) * p});
    const ExactMatrix<F> aastar_to_ehf = detail::m3<F>(
        s, {(n(4) * q).inv(), z, (n(4) * p).inv(),
            (n(2) * p - o) / (n(4) * q), o, (n(2) * p - o) / (n(4) * p),
            (n(8) * (p - o)).inv(), z, (n(8) * p).inv()});
    const ExactMatrix<F> starred_to_aastar = detail::m3<F>(
        s, {z, n(2) * q, n(4) * q,
            o, o - n(2) * p, z,
            z, n(2) * p, -n(4) * p});
    const ExactMatrix<F> aastar_to_starred = detail::m3<F>(
        s, {(n(2) * p - o) / (n(4) * q), o, (n(2) * p - o) / (n(4) * p),
            (n(4) * q).inv(), z, (n(4) * p).inv(),
            (n(8) * q).inv(), z, -(n(8) * p).inv()});
    const ExactMatrix<F> ehf_to_starred = detail::m3<F>(
        s, {p - o, n(2) * q, q,
            p, o - n(2) * p, q,
            p * p / q, n(2) * p, p - o});
    return TransitionTables<F>{ehf_to_aastar,     aastar_to_ehf, starred_to_aastar,
                               aastar_to_starred, ehf_to_starred, ehf_to_starred};
}

/// Entrywise comparison of computed vs closed-form transitions, inverse
/// pairing, and composition around the triangle of bases.
template <class F>
IdentityReport transition_report(const F& p) {
    const auto got = transition_tables(p);
    const auto want = transition_tables_closed(p);
    const auto id = ExactMatrix<F>::identity(3, p.spec());
    IdentityReport r;
    r.add("ehf.to.aastar", got.ehf_to_aastar == want.ehf_to_aastar);
    r.add("aastar.to.ehf", got.aastar_to_ehf == want.aastar_to_ehf);
    r.add("starred.to.aastar", got.starred_to_aastar == want.starred_to_aastar);
    r.add("aastar.to.starred", got.aastar_to_starred == want.aastar_to_starred);
    r.add("ehf.to.starred", got.ehf_to_starred == want.ehf_to_starred);
    r.add("starred.to.ehf", got.starred_to_ehf == want.starred_to_ehf);
    r.add("inverse.pairs", got.ehf_to_aastar * got.aastar_to_ehf == id &&
                               got.starred_to_aastar * got.aastar_to_starred == id &&
                               got.ehf_to_starred * got.starred_to_ehf == id);
    r.add("triangle.composition",
          got.ehf_to_aastar * got.aastar_to_starred == got.ehf_to_starred &&
              got.starred_to_ehf * got.ehf_to_aastar == got.starred_to_aastar);
    r.add("starred.self.inverse", got.ehf_to_starred == got.starred_to_ehf);
    return r;
}

template <class F>
struct GramTables {
    ExactMatrix<F> ehf, aastar, starred;
    ExactMatrix<F> ehf_starred, ehf_aastar, starred_aastar;
};

/// Gram matrices of <,> for each basis pair, entrywise from the form.
template <class F>
GramTables<F> gram_tables(const F& p) {
    const auto ehf = basis_triple(Sl2BasisTag::EHF, p);
    const auto aastar = basis_triple(Sl2BasisTag::AASTAR, p);
    const auto starred = basis_triple(Sl2BasisTag::STARRED, p);
    auto gram = [&](const Sl2Basis<F>& x, const Sl2Basis<F>& y) {
        ExactMatrix<F> g(3, p.spec());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) g(i, j) = killing(x.el[i], y.el[j]);
        return g;
    };
    return GramTables<F>{gram(ehf, ehf),     gram(aastar, aastar),  gram(starred, starred),
                         gram(ehf, starred), gram(ehf, aastar),     gram(starred, aastar)};
}

template <class F>
GramTables<F> gram_tables_closed(const F& p) {
    detail::require_nondegenerate(p);
    const auto s = p.spec();
    const F o = F::one(s);
    const F z = F::zero(s);
    auto n = [&](long long k) { return F::from_integer(k, s); };
    const F q = o - p;
    const F half = n(2).inv();
    const ExactMatrix<F> ehf = detail::m3<F>(s, {z, z, half, z, o, z, half, z, z});
    const ExactMatrix<F> aastar = detail::m3<F>(
        s, {o, o - n(2) * p, z,
            o - n(2) * p, o, z,
            z, z, -n(16) * p * q});
    const ExactMatrix<F> ehf_starred = detail::m3<F>(
        s, {p * p / (n(2) * q), p, (p - o) * half,
            p, o - n(2) * p, q,
            (p - o) * half, q, q * half});
    const ExactMatrix<F> ehf_aastar = detail::m3<F>(
        s, {p, z, n(2) * p,
            o - n(2) * p, o, z,
            q, z, n(2) * (p - o)});
    const ExactMatrix<F> starred_aastar = detail::m3<F>(
        s, {z, p, -n(2) * p,
            o, o - n(2) * p, z,
            z, q, n(2) * q});
    return GramTables<F>{ehf, aastar, ehf, ehf_starred, ehf_aastar, starred_aastar};
}

template <class F>
IdentityReport gram_report(const F& p) {
    const auto got = gram_tables(p);
    const auto want = gram_tables_closed(p);
    IdentityReport r;
    r.add("ehf", got.ehf == want.ehf);
    r.add("aastar", got.aastar == want.aastar);
    r.add("starred", got.starred == want.starred);
    r.add("ehf.starred", got.ehf_starred == want.ehf_starred);
    r.add("ehf.aastar", got.ehf_aastar == want.ehf_aastar);
    r.add("starred.aastar", got.starred_aastar == want.starred_aastar);
    // G(X,Y) = C_X^t G_ehf C_Y with C the coordinate matrices.
    const auto cs = coordinate_matrix(basis_triple(Sl2BasisTag::STARRED, p));
    const auto ca = coordinate_matrix(basis_triple(Sl2BasisTag::AASTAR, p));
    r.add("congruence.consistency",
          got.starred_aastar == cs.transpose() * got.ehf * ca &&
              got.aastar == ca.transpose() * got.ehf * ca);
    // det of the (a, a*, [a,a*]) table: -64 p^2 (1-p)^2, nonzero off {0,1}.
    const auto& g = got.aastar;
    const F det = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) -
                  g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0)) +
                  g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
    const F q = F::one(p.spec()) - p;
    r.add("aastar.determinant",
          det == F::from_integer(-64, p.spec()) * p * p * q * q);
    return r;
}

template <class F>
struct AdTables {
    ExactMatrix<F> a_wrt_aastar, astar_wrt_aastar;
    ExactMatrix<F> a_wrt_ehf, astar_wrt_ehf;
    ExactMatrix<F> a_wrt_starred, astar_wrt_starred;
};

/// Matrices of ad a and ad a* with respect to each basis, built column by
/// column from brackets.
template <class F>
AdTables<F> ad_tables(const F& p) {
    const auto pair = standard_pair(p);
    auto wrt = [&](const Sl2Element<F>& y, const Sl2Basis<F>& basis) {
        const auto cinv = inverse(coordinate_matrix(basis));
        ExactMatrix<F> m(3, p.spec());
        for (std::size_t j = 0; j < 3; ++j) {
            const auto col = mat_vec(cinv, bracket(y, basis.el[j]).coords());
            for (std::size_t i = 0; i < 3; ++i) m(i, j) = col[i];
        }
        return m;
    };
    const auto ehf = basis_triple(Sl2BasisTag::EHF, p);
    const auto aastar = basis_triple(Sl2BasisTag::AASTAR, p);
    const auto starred = basis_triple(Sl2BasisTag::STARRED, p);
    return AdTables<F>{wrt(pair.a, aastar),  wrt(pair.a_star, aastar),
                       wrt(pair.a, ehf),     wrt(pair.a_star, ehf),
                       wrt(pair.a, starred), wrt(pair.a_star, starred)};
}

template <class F>
AdTables<F> ad_tables_closed(const F& p) {
    detail::require_nondegenerate(p);
    const auto s = p.spec();
    const F o = F::one(s);
    const F z = F::zero(s);
    auto n = [&](long long k) { return F::from_integer(k, s); };
    const ExactMatrix<F> a_wrt_aastar = detail::m3<F>(
        s, {z, z, n(4) * (n(2) * p - o),
            z, z, n(4),
            z, o, z});
    const ExactMatrix<F> astar_wrt_aastar = detail::m3<F>(
        s, {z, z, -n(4),
            z, z, n(4) * (o - n(2) * p),
            -o, z, z});
    const ExactMatrix<F> a_wrt_ehf = detail::m3<F>(
        s, {n(2) * (o - n(2) * p), n(4) * (p - o), z,
            -n(2) * p, z, n(2) * (o - p),
            z, n(4) * p, n(2) * (n(2) * p - o)});
    const ExactMatrix<F> diag202 =
        ExactMatrix<F>::diagonal({n(2), z, -n(2)}, s);
    return AdTables<F>{a_wrt_aastar, astar_wrt_aastar, a_wrt_ehf, diag202, diag202, a_wrt_ehf};
}

template <class F>
IdentityReport ad_report(const F& p) {
    const auto got = ad_tables(p);
    const auto want = ad_tables_closed(p);
    IdentityReport r;
    r.add("a.wrt.aastar", got.a_wrt_aastar == want.a_wrt_aastar);
    r.add("astar.wrt.aastar", got.astar_wrt_aastar == want.astar_wrt_aastar);
    r.add("a.wrt.ehf", got.a_wrt_ehf == want.a_wrt_ehf);
    r.add("astar.wrt.ehf", got.astar_wrt_ehf == want.astar_wrt_ehf);
    r.add("a.wrt.starred", got.a_wrt_starred == want.a_wrt_starred);
    r.add("astar.wrt.starred", got.astar_wrt_starred == want.astar_wrt_starred);
    const auto t = transition_tables(p);
    r.add("change.of.basis",
          got.a_wrt_aastar == t.aastar_to_ehf * got.a_wrt_ehf * t.ehf_to_aastar &&
              got.astar_wrt_starred ==
                  t.starred_to_ehf * got.astar_wrt_ehf * t.ehf_to_starred);
    return r;
}

} // namespace klp
