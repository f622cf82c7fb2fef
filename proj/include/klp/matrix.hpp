#pragma once

/**
 * @file matrix.hpp
 * @brief Dense square matrices over an exact field, with the exact kernels
 *        the rest of the library is built on: Gauss-Jordan inverse, null
 *        spaces, Berkowitz characteristic polynomials, and the
 *        multiplicity-free spectral test.
 *
 * Elimination is deterministic: pivots are always the first row with a
 * nonzero entry in the current column.  Over an exact field this is exact;
 * no pivot-size heuristics are needed or wanted, because downstream golden
 * outputs (eigenvectors, change-of-basis matrices) must be reproducible.
 */

#include <cstddef>
#include <string>
#include <vector>

#include "klp/errors.hpp"
#include "klp/poly.hpp"

namespace klp {

template <class F>
class ExactMatrix {
public:
    using Spec = typename F::Spec;

    /// n x n zero matrix.
    ExactMatrix(std::size_t n, const Spec& spec)
        : spec_(spec), n_(n), e_(n * n, F::zero(spec)) {
        if (n == 0) throw invalid_parameter("matrix order must be positive");
    }

    ExactMatrix(std::size_t n, std::vector<F> entries, const Spec& spec)
        : spec_(spec), n_(n), e_(std::move(entries)) {
        if (n == 0) throw invalid_parameter("matrix order must be positive");
        if (e_.size() != n * n) throw invalid_parameter("entry count does not match matrix order");
        for (const F& x : e_)
            if (!(x.spec() == spec_)) throw mixed_field_error("matrix entry from another field");
    }

    static ExactMatrix identity(std::size_t n, const Spec& spec) {
        ExactMatrix m(n, spec);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F::one(spec);
        return m;
    }

    static ExactMatrix diagonal(const std::vector<F>& d, const Spec& spec) {
        ExactMatrix m(d.size(), spec);
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t order() const { return n_; }
    const Spec& spec() const { return spec_; }

    F& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    F trace() const {
        F t = F::zero(spec_);
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_zero() const {
        for (const F& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    ExactMatrix transpose() const {
        ExactMatrix r(n_, spec_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                r(j, i) = (*this)(i, j);
        return r;
    }

    ExactMatrix operator-() const {
        ExactMatrix r(n_, spec_);
        for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = -e_[k];
        return r;
    }

    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
        a.check(b);
        ExactMatrix r = a;
        for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] += b.e_[k];
        return r;
    }
    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
        a.check(b);
        ExactMatrix r = a;
        for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] -= b.e_[k];
        return r;
    }
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        a.check(b);
        ExactMatrix r(a.n_, a.spec_);
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t k = 0; k < a.n_; ++k) {
                const F& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < a.n_; ++j)
                    r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend ExactMatrix operator*(const F& s, const ExactMatrix& a) {
        ExactMatrix r = a;
        for (F& x : r.e_) x = s * x;
        return r;
    }

    bool operator==(const ExactMatrix& o) const {
        check(o);
        return e_ == o.e_;
    }
    bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

private:
    void check(const ExactMatrix& o) const {
        if (!(spec_ == o.spec_)) throw mixed_field_error("matrices over different fields");
        if (n_ != o.n_) throw invalid_parameter("matrix orders differ");
    }

    Spec spec_;
    std::size_t n_;
    std::vector<F> e_;
};

template <class F>
ExactMatrix<F> commutator(const ExactMatrix<F>& x, const ExactMatrix<F>& y) {
    return x * y - y * x;
}

/// Matrix-vector product.
template <class F>
std::vector<F> mat_vec(const ExactMatrix<F>& m, const std::vector<F>& v) {
    if (v.size() != m.order()) throw invalid_parameter("vector length does not match matrix order");
    std::vector<F> r(m.order(), F::zero(m.spec()));
    for (std::size_t i = 0; i < m.order(); ++i)
        for (std::size_t j = 0; j < m.order(); ++j)
            if (!m(i, j).is_zero()) r[i] += m(i, j) * v[j];
    return r;
}

/// Rank-one matrix u v^t.
template <class F>
ExactMatrix<F> outer(const std::vector<F>& u, const std::vector<F>& v,
                     const typename F::Spec& spec) {
    if (u.size() != v.size()) throw invalid_parameter("outer product needs equal lengths");
    ExactMatrix<F> r(u.size(), spec);
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            r(i, j) = u[i] * v[j];
    return r;
}

template <class F>
bool vec_is_zero(const std::vector<F>& v) {
    for (const F& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// Exact inverse by Gauss-Jordan elimination with first-nonzero pivoting.
template <class F>
ExactMatrix<F> inverse(const ExactMatrix<F>& m) {
    const std::size_t n = m.order();
    ExactMatrix<F> a = m;
    ExactMatrix<F> inv = ExactMatrix<F>::identity(n, m.spec());
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col).is_zero()) ++piv;
        if (piv == n) throw singular_matrix();
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const F d = a(col, col).inv();
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) = d * a(col, j);
            inv(col, j) = d * inv(col, j);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col).is_zero()) continue;
            const F f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

template <class F>
std::size_t rank(ExactMatrix<F> a) {
    const std::size_t n = a.order();
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < n; ++col) {
        std::size_t piv = r;
        while (piv < n && a(piv, col).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != r)
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(r, j));
        const F d = a(r, col).inv();
        for (std::size_t j = col; j < n; ++j) a(r, j) = d * a(r, j);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || a(i, col).is_zero()) continue;
            const F f = a(i, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

/// Basis of the null space, from the reduced row echelon form.  Deterministic:
/// one vector per free column, with that coordinate set to 1.
template <class F>
std::vector<std::vector<F>> null_space(const ExactMatrix<F>& m) {
    const std::size_t n = m.order();
    ExactMatrix<F> a = m;
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && a(piv, col).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != row)
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(row, j));
        const F d = a(row, col).inv();
        for (std::size_t j = col; j < n; ++j) a(row, j) = d * a(row, j);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || a(i, col).is_zero()) continue;
            const F f = a(i, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<F> v(n, F::zero(m.spec()));
        v[free] = F::one(m.spec());
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            v[pivot_col[r]] = -a(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Characteristic polynomial det(xI - X), monic, by the Berkowitz method.
/// Division-free, hence exact over every supported field including F_q with
/// q <= order.
template <class F>
DensePoly<F> char_poly(const ExactMatrix<F>& x) {
    const std::size_t n = x.order();
    const auto& spec = x.spec();
    // prev holds the coefficients of det(tI - X_k) by descending degree.
    std::vector<F> prev{F::one(spec)};
    for (std::size_t k = 1; k <= n; ++k) {
        // Leading principal (k-1)x(k-1) block M, bordered by row r, column c,
        // and corner a = X[k-1][k-1].
        const F a = x(k - 1, k - 1);
        // toep[m] holds the m-th Toeplitz coefficient: 1, -a, -(r M^{m-2} c).
        std::vector<F> toep(k + 1, F::zero(spec));
        toep[0] = F::one(spec);
        toep[1] = -a;
        if (k >= 2) {
            std::vector<F> w(k - 1, F::zero(spec));
            for (std::size_t i = 0; i < k - 1; ++i) w[i] = x(i, k - 1);
            for (std::size_t m = 2; m <= k; ++m) {
                F dot = F::zero(spec);
                for (std::size_t j = 0; j < k - 1; ++j) dot += x(k - 1, j) * w[j];
                toep[m] = -dot;
                if (m == k) break;
                std::vector<F> w2(k - 1, F::zero(spec));
                for (std::size_t i = 0; i < k - 1; ++i)
                    for (std::size_t j = 0; j < k - 1; ++j)
                        if (!x(i, j).is_zero()) w2[i] += x(i, j) * w[j];
                w = std::move(w2);
            }
        }
        std::vector<F> cur(k + 1, F::zero(spec));
        for (std::size_t i = 0; i <= k; ++i)
            for (std::size_t j = 0; j < k && j <= i; ++j)
                cur[i] += toep[i - j] * prev[j];
        prev = std::move(cur);
    }
    std::vector<F> ascending(n + 1, F::zero(spec));
    for (std::size_t i = 0; i <= n; ++i) ascending[n - i] = prev[i];
    return DensePoly<F>(std::move(ascending), spec);
}

/// Evaluates a polynomial at a matrix argument (Horner).
template <class F>
ExactMatrix<F> eval_poly_at_matrix(const DensePoly<F>& f, const ExactMatrix<F>& x) {
    const std::size_t n = x.order();
    if (!(f.spec() == x.spec())) throw mixed_field_error("polynomial and matrix fields differ");
    ExactMatrix<F> acc(n, x.spec());
    if (f.is_zero()) return acc;
    const ExactMatrix<F> id = ExactMatrix<F>::identity(n, x.spec());
    for (long long k = f.degree(); k >= 0; --k) {
        acc = acc * x;
        acc = acc + f.coeff(k) * id;
    }
    return acc;
}

enum class SpectrumDefect { none, wrong_spectrum, not_diagonalizable };

inline std::string to_string(SpectrumDefect d) {
    switch (d) {
        case SpectrumDefect::none: return "none";
        case SpectrumDefect::wrong_spectrum: return "wrong-spectrum";
        case SpectrumDefect::not_diagonalizable: return "not-diagonalizable";
    }
    return "?";
}

template <class F>
struct SpectrumSplit {
    bool multiplicity_free = false;
    SpectrumDefect defect = SpectrumDefect::none;
    /// One spanning eigenvector per candidate eigenvalue, in candidate order.
    std::vector<std::vector<F>> eigenvectors;
};

/// Tests that X is diagonalizable with simple spectrum exactly `candidates`.
/// Dual route by design: the characteristic polynomial must equal
/// prod(x - theta), and the annihilating product prod(X - theta I) must
/// vanish.  Candidates must be pairwise distinct (precondition).
template <class F>
SpectrumSplit<F> is_multiplicity_free(const ExactMatrix<F>& x, const std::vector<F>& candidates) {
    const std::size_t n = x.order();
    const auto& spec = x.spec();
    if (candidates.size() != n)
        throw invalid_parameter("candidate count must equal the matrix order");
    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (std::size_t j = i + 1; j < candidates.size(); ++j)
            if (candidates[i] == candidates[j])
                throw invalid_parameter("candidate eigenvalues must be pairwise distinct");

    SpectrumSplit<F> out;

    // Cheap necessary conditions first: power sums of degree 1 and 2.
    F t1 = F::zero(spec), t2 = F::zero(spec), s1 = F::zero(spec), s2 = F::zero(spec);
    for (std::size_t i = 0; i < n; ++i) {
        t1 += x(i, i);
        for (std::size_t j = 0; j < n; ++j) t2 += x(i, j) * x(j, i);
    }
    for (const F& th : candidates) {
        s1 += th;
        s2 += th * th;
    }
    if (t1 != s1 || t2 != s2) {
        out.defect = SpectrumDefect::wrong_spectrum;
        return out;
    }

    if (char_poly(x) != DensePoly<F>::from_roots(candidates, spec)) {
        out.defect = SpectrumDefect::wrong_spectrum;
        return out;
    }

    const ExactMatrix<F> id = ExactMatrix<F>::identity(n, spec);
    ExactMatrix<F> prod = id;
    for (const F& th : candidates)
        prod = prod * (x - th * id);
    if (!prod.is_zero()) {
        out.defect = SpectrumDefect::not_diagonalizable;
        return out;
    }

    for (const F& th : candidates) {
        auto basis = null_space(x - th * id);
        if (basis.size() != 1) {
            out.defect = SpectrumDefect::not_diagonalizable;
            out.eigenvectors.clear();
            return out;
        }
        out.eigenvectors.push_back(std::move(basis.front()));
    }
    out.multiplicity_free = true;
    return out;
}

} // namespace klp
