#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "klp/errors.hpp"
#include "klp/krawtchouk.hpp"
#include "klp/matrix.hpp"
#include "klp/report.hpp"

namespace klp {

/// Primitive idempotents of a multiplicity-free matrix, in the order of the
/// given eigenvalues:
///
///   E_i = prod_{j != i} (X - theta_j I) / (theta_i - theta_j).
///
/// Each E_i is idempotent of trace 1 (rank one) and the family is pairwise
/// orthogonal and sums to the identity.
template <class F>
std::vector<ExactMatrix<F>> primitive_idempotents(const ExactMatrix<F>& x,
                                                  const std::vector<F>& thetas) {
    const std::size_t n = x.order();
    const auto& spec = x.spec();
    if (thetas.size() != n)
        throw invalid_parameter("eigenvalue count must equal the matrix order");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (thetas[i] == thetas[j]) throw invalid_parameter("repeated eigenvalue");

    const ExactMatrix<F> id = ExactMatrix<F>::identity(n, spec);
    std::vector<ExactMatrix<F>> e;
    e.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ExactMatrix<F> prod = id;
        F denom = F::one(spec);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            prod = prod * (x - thetas[j] * id);
            denom *= thetas[i] - thetas[j];
        }
        e.push_back(denom.inv() * prod);
    }
    // The products are genuine spectral projectors exactly when prod(x - theta)
    // annihilates X and each eigenvalue is simple (trace E_i = multiplicity).
    ExactMatrix<F> ann = e.back() * (x - thetas.back() * id);
    if (!ann.is_zero()) throw invalid_parameter("spectrum mismatch: matrix not annihilated");
    const F one = F::one(spec);
    for (const auto& ei : e)
        if (ei.trace() != one) throw invalid_parameter("spectrum mismatch: eigenvalue not simple");
    return e;
}

enum class PathDefect { none, branching, cycle, disconnected };

inline std::string to_string(PathDefect d) {
    switch (d) {
        case PathDefect::none: return "none";
        case PathDefect::branching: return "branching";
        case PathDefect::cycle: return "cycle";
        case PathDefect::disconnected: return "disconnected";
    }
    return "?";
}

/// Outcome of ordering an idempotent family along its support graph.
struct IdempotentOrdering {
    PathDefect defect = PathDefect::none;
    /// Positions into the input family; empty unless the graph is a path.
    std::vector<std::size_t> order;

    bool ok() const { return defect == PathDefect::none; }
};

namespace detail {

/// Decides whether an undirected support graph is a simple path and, if so,
/// produces the traversal order.  Tie break: start from the endpoint with the
/// smaller input index.
inline IdempotentOrdering analyze_support_path(const std::vector<std::vector<bool>>& adj) {
    const std::size_t n = adj.size();
    IdempotentOrdering out;
    if (n == 1) {
        out.order = {0};
        return out;
    }
    std::vector<std::size_t> degree(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && adj[i][j]) ++degree[i];
    std::vector<std::size_t> endpoints;
    for (std::size_t i = 0; i < n; ++i) {
        if (degree[i] > 2) {
            out.defect = PathDefect::branching;
            return out;
        }
        if (degree[i] == 0) {
            out.defect = PathDefect::disconnected;
            return out;
        }
        if (degree[i] == 1) endpoints.push_back(i);
    }
    if (endpoints.empty()) {
        // Every vertex has degree 2: a cycle, or several disjoint cycles.
        std::vector<bool> seen(n, false);
        std::size_t cur = 0, prev = n, count = 0;
        while (!seen[cur]) {
            seen[cur] = true;
            ++count;
            std::size_t next = n;
            for (std::size_t j = 0; j < n; ++j)
                if (j != cur && j != prev && adj[cur][j]) {
                    next = j;
                    break;
                }
            if (next == n) break;
            prev = cur;
            cur = next;
        }
        out.defect = count == n ? PathDefect::cycle : PathDefect::disconnected;
        return out;
    }
    if (endpoints.size() != 2) {
        out.defect = PathDefect::disconnected;
        return out;
    }
    std::vector<std::size_t> order;
    order.reserve(n);
    std::size_t prev = n, cur = endpoints.front();
    order.push_back(cur);
    while (order.size() < n) {
        std::size_t next = n;
        for (std::size_t j = 0; j < n; ++j)
            if (j != cur && j != prev && adj[cur][j]) {
                next = j;
                break;
            }
        if (next == n) break;
        prev = cur;
        cur = next;
        order.push_back(cur);
    }
    if (order.size() != n) {
        out.defect = PathDefect::disconnected;
        return out;
    }
    out.order = std::move(order);
    return out;
}

/// Right eigenvectors u_i and left eigenvectors v_i of a multiplicity-free
/// matrix, scaled so that v_i . u_i = 1.  Then E_i = u_i v_i^t.
template <class F>
struct RankOneFactors {
    std::vector<std::vector<F>> u;
    std::vector<std::vector<F>> v;
};

template <class F>
std::optional<RankOneFactors<F>> rank_one_factors(const ExactMatrix<F>& x,
                                                  const std::vector<F>& thetas,
                                                  SpectrumDefect& defect) {
    auto split = is_multiplicity_free(x, thetas);
    if (!split.multiplicity_free) {
        defect = split.defect;
        return std::nullopt;
    }
    const std::size_t n = x.order();
    const auto& spec = x.spec();
    const ExactMatrix<F> xt = x.transpose();
    const ExactMatrix<F> id = ExactMatrix<F>::identity(n, spec);
    RankOneFactors<F> out;
    out.u = std::move(split.eigenvectors);
    out.v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto basis = null_space(xt - thetas[i] * id);
        if (basis.size() != 1) {
            defect = SpectrumDefect::not_diagonalizable;
            return std::nullopt;
        }
        std::vector<F> v = std::move(basis.front());
        F dot = F::zero(spec);
        for (std::size_t k = 0; k < n; ++k) dot += v[k] * out.u[i][k];
        if (dot.is_zero()) {
            defect = SpectrumDefect::not_diagonalizable;
            return std::nullopt;
        }
        const F scale = dot.inv();
        for (F& entry : v) entry *= scale;
        out.v.push_back(std::move(v));
    }
    defect = SpectrumDefect::none;
    return out;
}

/// Scalar matrix s_ij = v_i^t M u_j, so that E_i M E_j = s_ij u_i v_j^t.
/// Off-diagonal zero pattern of s is the support graph; the diagonal carries
/// the compression coefficients tr(M E_i).
template <class F>
ExactMatrix<F> sandwich_scalars(const RankOneFactors<F>& fac, const ExactMatrix<F>& m) {
    const std::size_t n = m.order();
    ExactMatrix<F> s(n, m.spec());
    std::vector<std::vector<F>> mu;
    mu.reserve(n);
    for (std::size_t j = 0; j < n; ++j) mu.push_back(mat_vec(m, fac.u[j]));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            F dot = F::zero(m.spec());
            for (std::size_t k = 0; k < n; ++k) dot += fac.v[i][k] * mu[j][k];
            s(i, j) = dot;
        }
    return s;
}

template <class F>
std::vector<std::vector<bool>> support_graph(const ExactMatrix<F>& scalars) {
    const std::size_t n = scalars.order();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && !scalars(i, j).is_zero()) adj[i][j] = true;
    return adj;
}

} // namespace detail

/// Orders a family of primitive idempotents of A so that E_i A* E_j = 0
/// whenever |i - j| > 1.  The support graph (edge iff E_i A* E_j != 0) must be
/// a simple path; traversal starts from the endpoint with the smaller input
/// index, so exactly two orderings exist and the reported one is canonical.
template <class F>
IdempotentOrdering order_idempotents(const ExactMatrix<F>& a, const ExactMatrix<F>& a_star,
                                     const std::vector<ExactMatrix<F>>& e_unordered) {
    const std::size_t n = a.order();
    if (a_star.order() != n) throw invalid_parameter("matrix orders differ");
    if (e_unordered.size() != n) throw invalid_parameter("idempotent count must equal the order");
    ExactMatrix<F> sum(n, a.spec());
    for (const auto& e : e_unordered) sum = sum + e;
    if (sum != ExactMatrix<F>::identity(n, a.spec()))
        throw invalid_parameter("idempotents do not sum to the identity");

    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            adj[i][j] = !(e_unordered[i] * a_star * e_unordered[j]).is_zero();
        }
    return detail::analyze_support_path(adj);
}

/// A Leonard system: a multiplicity-free pair with both idempotent families
/// ordered so each operator acts tridiagonally on the other's eigenspaces.
template <class F>
struct LeonardSystem {
    ExactMatrix<F> A;
    ExactMatrix<F> A_star;
    std::vector<ExactMatrix<F>> E;
    std::vector<ExactMatrix<F>> E_star;
    std::vector<F> theta;
    std::vector<F> theta_star;
    /// a_i = tr(A E*_i) and a*_i = tr(A* E_i).
    std::vector<F> a_diag;
    std::vector<F> a_star_diag;

    std::size_t order() const { return A.order(); }
    long long diameter() const { return static_cast<long long>(A.order()) - 1; }
    const typename F::Spec& spec() const { return A.spec(); }
};

enum class RecognitionError { none, not_multiplicity_free, not_tridiagonalizable, tridiagonal_but_reducible };

inline std::string to_string(RecognitionError e) {
    switch (e) {
        case RecognitionError::none: return "none";
        case RecognitionError::not_multiplicity_free: return "not-multiplicity-free";
        case RecognitionError::not_tridiagonalizable: return "not-tridiagonalizable";
        case RecognitionError::tridiagonal_but_reducible: return "tridiagonal-but-reducible";
    }
    return "?";
}

template <class F>
struct RecognitionResult {
    RecognitionError error = RecognitionError::none;
    /// Spectrum defects, populated when error == not_multiplicity_free.
    SpectrumDefect primal_defect = SpectrumDefect::none;
    SpectrumDefect dual_defect = SpectrumDefect::none;
    std::optional<LeonardSystem<F>> system;

    bool ok() const { return error == RecognitionError::none; }
};

namespace detail {

inline RecognitionError ordering_error(PathDefect d) {
    return d == PathDefect::disconnected ? RecognitionError::tridiagonal_but_reducible
                                         : RecognitionError::not_tridiagonalizable;
}

template <class T>
std::vector<T> permuted(const std::vector<T>& v, const std::vector<std::size_t>& order) {
    std::vector<T> out;
    out.reserve(order.size());
    for (std::size_t k : order) out.push_back(v[k]);
    return out;
}

} // namespace detail

/// Recognizes a Leonard system from a candidate pair and its two candidate
/// spectra.  Both matrices must be multiplicity-free with the given
/// eigenvalues; each support graph must be a simple path, which fixes the
/// idempotent orderings up to the canonical tie break.
template <class F>
RecognitionResult<F> recognize_leonard_system(const ExactMatrix<F>& a, const ExactMatrix<F>& a_star,
                                              const std::vector<F>& thetas,
                                              const std::vector<F>& thetas_star) {
    const std::size_t n = a.order();
    if (a_star.order() != n) throw invalid_parameter("matrix orders differ");
    if (thetas.size() != n || thetas_star.size() != n)
        throw invalid_parameter("eigenvalue count must equal the matrix order");

    RecognitionResult<F> out;
    auto repeated = [](const std::vector<F>& t) {
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = i + 1; j < t.size(); ++j)
                if (t[i] == t[j]) return true;
        return false;
    };
    if (repeated(thetas)) {
        out.error = RecognitionError::not_multiplicity_free;
        out.primal_defect = SpectrumDefect::wrong_spectrum;
        return out;
    }
    if (repeated(thetas_star)) {
        out.error = RecognitionError::not_multiplicity_free;
        out.dual_defect = SpectrumDefect::wrong_spectrum;
        return out;
    }

    auto fac = detail::rank_one_factors(a, thetas, out.primal_defect);
    if (!fac) {
        out.error = RecognitionError::not_multiplicity_free;
        return out;
    }
    auto fac_star = detail::rank_one_factors(a_star, thetas_star, out.dual_defect);
    if (!fac_star) {
        out.error = RecognitionError::not_multiplicity_free;
        return out;
    }

    // E_i A* E_j = s_ij u_i v_j^t, so the tridiagonality conditions reduce to
    // the scalar matrices.
    const ExactMatrix<F> s = detail::sandwich_scalars(*fac, a_star);
    const ExactMatrix<F> s_star = detail::sandwich_scalars(*fac_star, a);
    const IdempotentOrdering primal = detail::analyze_support_path(detail::support_graph(s));
    if (!primal.ok()) {
        out.error = detail::ordering_error(primal.defect);
        return out;
    }
    const IdempotentOrdering dual = detail::analyze_support_path(detail::support_graph(s_star));
    if (!dual.ok()) {
        out.error = detail::ordering_error(dual.defect);
        return out;
    }

    LeonardSystem<F> sys{a, a_star, {}, {}, {}, {}, {}, {}};
    sys.E.reserve(n);
    sys.E_star.reserve(n);
    for (std::size_t k : primal.order) {
        sys.E.push_back(outer(fac->u[k], fac->v[k], a.spec()));
        sys.theta.push_back(thetas[k]);
        sys.a_star_diag.push_back(s(k, k));
    }
    for (std::size_t k : dual.order) {
        sys.E_star.push_back(outer(fac_star->u[k], fac_star->v[k], a.spec()));
        sys.theta_star.push_back(thetas_star[k]);
        sys.a_diag.push_back(s_star(k, k));
    }
    out.system = std::move(sys);
    return out;
}

/// Re-derives the defining properties of a Leonard system from its stored
/// matrices alone.  Every row must hold for a valid system.
template <class F>
IdentityReport validate_system(const LeonardSystem<F>& sys) {
    IdentityReport report;
    const std::size_t n = sys.order();
    const auto& spec = sys.spec();

    bool shape = sys.A_star.order() == n && sys.E.size() == n && sys.E_star.size() == n &&
                 sys.theta.size() == n && sys.theta_star.size() == n && sys.a_diag.size() == n &&
                 sys.a_star_diag.size() == n;
    report.add("shape", shape);
    if (!shape) return report;

    bool distinct = true;
    for (std::size_t i = 0; i < n && distinct; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (sys.theta[i] == sys.theta[j] || sys.theta_star[i] == sys.theta_star[j]) {
                distinct = false;
                break;
            }
    report.add("eigenvalues.distinct", distinct);

    bool products = true;
    for (std::size_t i = 0; i < n && products; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const ExactMatrix<F> ee = sys.E[i] * sys.E[j];
            const ExactMatrix<F> ff = sys.E_star[i] * sys.E_star[j];
            if (i == j ? (ee != sys.E[i] || ff != sys.E_star[i]) : (!ee.is_zero() || !ff.is_zero())) {
                products = false;
                break;
            }
        }
    report.add("idempotent.products", products);

    ExactMatrix<F> sum(n, spec), sum_star(n, spec);
    for (std::size_t i = 0; i < n; ++i) {
        sum = sum + sys.E[i];
        sum_star = sum_star + sys.E_star[i];
    }
    const ExactMatrix<F> id = ExactMatrix<F>::identity(n, spec);
    report.add("resolution.of.identity", sum == id && sum_star == id);

    ExactMatrix<F> spectral(n, spec), spectral_star(n, spec);
    for (std::size_t i = 0; i < n; ++i) {
        spectral = spectral + sys.theta[i] * sys.E[i];
        spectral_star = spectral_star + sys.theta_star[i] * sys.E_star[i];
    }
    report.add("spectral.decomposition", spectral == sys.A && spectral_star == sys.A_star);

    auto tridiagonal = [n](const std::vector<ExactMatrix<F>>& e, const ExactMatrix<F>& m) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const bool zero = (e[i] * m * e[j]).is_zero();
                const std::size_t gap = i > j ? i - j : j - i;
                if (zero == (gap == 1)) return false;
            }
        return true;
    };
    report.add("support.tridiagonal", tridiagonal(sys.E, sys.A_star));
    report.add("support.tridiagonal.dual", tridiagonal(sys.E_star, sys.A));

    bool compression = true;
    for (std::size_t i = 0; i < n && compression; ++i) {
        if (sys.E_star[i] * sys.A * sys.E_star[i] != sys.a_diag[i] * sys.E_star[i]) compression = false;
        if (sys.E[i] * sys.A_star * sys.E[i] != sys.a_star_diag[i] * sys.E[i]) compression = false;
    }
    report.add("diagonal.compression", compression);
    return report;
}

enum class SystemRelative { ID, DOWN, DDOWN, STAR };

inline std::string to_string(SystemRelative r) {
    switch (r) {
        case SystemRelative::ID: return "id";
        case SystemRelative::DOWN: return "down";
        case SystemRelative::DDOWN: return "ddown";
        case SystemRelative::STAR: return "star";
    }
    return "?";
}

/// The relative of a Leonard system: DOWN reverses the dual idempotent
/// ordering, DDOWN reverses the primal one, STAR exchanges the two sides.
/// The result is re-validated before being returned.
template <class F>
LeonardSystem<F> relatives(const LeonardSystem<F>& sys, SystemRelative which) {
    LeonardSystem<F> out = sys;
    auto reverse_all = [](auto&... seqs) { (std::reverse(seqs.begin(), seqs.end()), ...); };
    switch (which) {
        case SystemRelative::ID: break;
        case SystemRelative::DOWN:
            reverse_all(out.E_star, out.theta_star, out.a_diag);
            break;
        case SystemRelative::DDOWN:
            reverse_all(out.E, out.theta, out.a_star_diag);
            break;
        case SystemRelative::STAR:
            std::swap(out.A, out.A_star);
            std::swap(out.E, out.E_star);
            std::swap(out.theta, out.theta_star);
            std::swap(out.a_diag, out.a_star_diag);
            break;
    }
    IdentityReport check = validate_system(out);
    if (!check.all_hold())
        throw invalid_parameter("relative is not a Leonard system: " + check.first_failure());
    return out;
}

/// Verifies the interplay identities between a Leonard system's operators,
/// idempotents, eigenvalues and diagonal coefficients.  The endpoint and
/// corner rows need order at least 2 and are skipped for 1x1 systems.
template <class F>
IdentityReport verify_cross_relations(const LeonardSystem<F>& sys) {
    IdentityReport report;
    const std::size_t n = sys.order();
    const auto N = static_cast<std::size_t>(sys.diameter());
    const auto& spec = sys.spec();

    std::vector<ExactMatrix<F>> pow;
    pow.reserve(n);
    pow.push_back(ExactMatrix<F>::identity(n, spec));
    for (std::size_t r = 1; r <= N; ++r) pow.push_back(pow.back() * sys.A);
    std::vector<ExactMatrix<F>> pow_star;
    pow_star.reserve(n);
    pow_star.push_back(ExactMatrix<F>::identity(n, spec));
    for (std::size_t r = 1; r <= N; ++r) pow_star.push_back(pow_star.back() * sys.A_star);

    // E*_i A^r E*_j vanishes for r < |i-j| and is nonzero at r = |i-j|.
    auto power_pattern = [n](const std::vector<ExactMatrix<F>>& e,
                             const std::vector<ExactMatrix<F>>& powers) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t gap = i > j ? i - j : j - i;
                for (std::size_t r = 0; r <= gap; ++r) {
                    const bool zero = (e[i] * powers[r] * e[j]).is_zero();
                    if (zero != (r < gap)) return false;
                }
            }
        return true;
    };
    report.add("power.pattern", power_pattern(sys.E_star, pow));
    report.add("power.pattern.dual", power_pattern(sys.E, pow_star));

    bool compression = true;
    for (std::size_t i = 0; i < n && compression; ++i) {
        if (sys.E_star[i] * sys.A * sys.E_star[i] != sys.a_diag[i] * sys.E_star[i]) compression = false;
        if (sys.E[i] * sys.A_star * sys.E[i] != sys.a_star_diag[i] * sys.E[i]) compression = false;
    }
    report.add("diagonal.compression", compression);

    if (N == 0) return report;

    const auto& th = sys.theta;
    const auto& ths = sys.theta_star;
    const auto& a = sys.a_diag;
    const auto& as = sys.a_star_diag;

    {
        const ExactMatrix<F> ae0 = sys.A * sys.E_star[0];
        const ExactMatrix<F> aeN = sys.A * sys.E_star[N];
        const ExactMatrix<F> e0a = sys.E[0] * sys.A_star;
        const ExactMatrix<F> eNa = sys.E[N] * sys.A_star;
        bool endpoint = sys.A_star * ae0 == ths[1] * ae0 + (a[0] * (ths[0] - ths[1])) * sys.E_star[0];
        endpoint = endpoint &&
                   sys.A_star * aeN == ths[N - 1] * aeN + (a[N] * (ths[N] - ths[N - 1])) * sys.E_star[N];
        endpoint = endpoint &&
                   e0a * sys.A == th[1] * e0a + (as[0] * (th[0] - th[1])) * sys.E[0];
        endpoint = endpoint &&
                   eNa * sys.A == th[N - 1] * eNa + (as[N] * (th[N] - th[N - 1])) * sys.E[N];
        report.add("endpoint.relations", endpoint);
    }

    const ExactMatrix<F> a2 = sys.A * sys.A;

    {
        const ExactMatrix<F> e0e = sys.E[0] * sys.E_star[0];
        const ExactMatrix<F> lhs1 = sys.E[0] * sys.A_star * sys.A * sys.E_star[0];
        const F c1 = (a[0] - th[0]) * (ths[0] - ths[1]) + th[0] * ths[0];
        bool corner = lhs1 == c1 * e0e;
        const ExactMatrix<F> lhs2 = sys.E[0] * sys.A_star * a2 * sys.E_star[0];
        corner = corner && lhs2 == (th[0] + th[1]) * lhs1 - (th[0] * th[1] * ths[0]) * e0e;
        report.add("corner.products", corner);
    }

    {
        const ExactMatrix<F> eNe = sys.E_star[N] * sys.E[N];
        const ExactMatrix<F> lhs1 = sys.E_star[N] * sys.A * sys.A_star * sys.E[N];
        const F c1 = (as[N] - ths[N]) * (th[N] - th[N - 1]) + th[N] * ths[N];
        bool corner = lhs1 == c1 * eNe;
        const ExactMatrix<F> lhs2 = sys.E_star[N] * a2 * sys.A_star * sys.E[N];
        corner = corner && lhs2 == (th[N - 1] + th[N]) * lhs1 - (th[N - 1] * th[N] * ths[N]) * eNe;
        report.add("corner.products.dual", corner);
    }

    report.add("endpoint.scalar",
               a[0] * (ths[0] - ths[1]) + as[N] * (th[N - 1] - th[N]) ==
                   ths[0] * th[N - 1] - ths[1] * th[N]);
    return report;
}

namespace detail {

/// Rank of a list of n x n matrices, flattened to rows of an m x m system
/// (m = n^2) and eliminated.
template <class F>
std::size_t flattened_rank(const std::vector<ExactMatrix<F>>& mats, const typename F::Spec& spec) {
    if (mats.empty()) return 0;
    const std::size_t n = mats.front().order();
    const std::size_t m = n * n;
    ExactMatrix<F> flat(m, spec);
    for (std::size_t r = 0; r < mats.size() && r < m; ++r)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) flat(r, i * n + j) = mats[r](i, j);
    return rank(flat);
}

/// Writes a rank-one matrix as u v^t with a canonical choice of factors, or
/// returns nothing when the rank exceeds one.
template <class F>
std::optional<std::pair<std::vector<F>, std::vector<F>>> rank_one_split(const ExactMatrix<F>& m) {
    const std::size_t n = m.order();
    std::size_t pr = n, pc = n;
    for (std::size_t i = 0; i < n && pr == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!m(i, j).is_zero()) {
                pr = i;
                pc = j;
                break;
            }
    if (pr == n) return std::nullopt;
    std::vector<F> u, v;
    u.reserve(n);
    v.reserve(n);
    const F d = m(pr, pc).inv();
    for (std::size_t i = 0; i < n; ++i) u.push_back(m(i, pc));
    for (std::size_t j = 0; j < n; ++j) v.push_back(d * m(pr, j));
    if (m != outer(u, v, m.spec())) return std::nullopt;
    return std::make_pair(std::move(u), std::move(v));
}

/// Independence of a doubly indexed family of rank-one matrices x_r y_s^t:
/// their flattenings are y_s (x) x_r, so the family has full rank exactly when
/// both factor lists do.
template <class F>
bool rank_one_grid_independent(const std::vector<std::vector<F>>& xs,
                               const std::vector<std::vector<F>>& ys,
                               const typename F::Spec& spec) {
    const std::size_t n = xs.size();
    ExactMatrix<F> mx(n, spec), my(n, spec);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i) {
            mx(i, c) = xs[c][i];
            my(i, c) = ys[c][i];
        }
    return rank(mx) == n && rank(my) == n;
}

} // namespace detail

/// Checks that the (N+1)^2 matrices A^r E*_0 A^s are linearly independent,
/// and likewise the matrices E_i E*_0 E_j.  Either family spanning forces the
/// other properties of a Leonard system, so both ranks must be full.
template <class F>
bool verify_basis_theorem(const LeonardSystem<F>& sys) {
    const std::size_t n = sys.order();
    const auto& spec = sys.spec();

    // E*_0 has rank one, so A^r E*_0 A^s = (A^r u)((A^t)^s v)^t and the rank
    // computation splits into the two vector families.
    if (auto split = detail::rank_one_split(sys.E_star[0])) {
        const ExactMatrix<F> at = sys.A.transpose();
        std::vector<std::vector<F>> xs{split->first}, ys{split->second};
        for (std::size_t r = 1; r < n; ++r) {
            xs.push_back(mat_vec(sys.A, xs.back()));
            ys.push_back(mat_vec(at, ys.back()));
        }
        if (!detail::rank_one_grid_independent(xs, ys, spec)) return false;
        std::vector<std::vector<F>> xe, ye;
        for (std::size_t i = 0; i < n; ++i) {
            xe.push_back(mat_vec(sys.E[i], split->first));
            ye.push_back(mat_vec(sys.E[i].transpose(), split->second));
        }
        return detail::rank_one_grid_independent(xe, ye, spec);
    }

    std::vector<ExactMatrix<F>> pow;
    pow.reserve(n);
    pow.push_back(ExactMatrix<F>::identity(n, spec));
    for (std::size_t r = 1; r < n; ++r) pow.push_back(pow.back() * sys.A);

    std::vector<ExactMatrix<F>> fam;
    fam.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        const ExactMatrix<F> left = pow[r] * sys.E_star[0];
        for (std::size_t s = 0; s < n; ++s) fam.push_back(left * pow[s]);
    }
    if (detail::flattened_rank(fam, spec) != n * n) return false;
    fam.clear();
    for (std::size_t i = 0; i < n; ++i) {
        const ExactMatrix<F> left = sys.E[i] * sys.E_star[0];
        for (std::size_t j = 0; j < n; ++j) fam.push_back(left * sys.E[j]);
    }
    return detail::flattened_rank(fam, spec) == n * n;
}

enum class ClassificationVerdict { krawtchouk_type, leonard_but_not_krawtchouk, not_leonard };

inline std::string to_string(ClassificationVerdict v) {
    switch (v) {
        case ClassificationVerdict::krawtchouk_type: return "krawtchouk-type";
        case ClassificationVerdict::leonard_but_not_krawtchouk: return "leonard-but-not-krawtchouk";
        case ClassificationVerdict::not_leonard: return "not-leonard";
    }
    return "?";
}

enum class ClassificationError {
    none,
    wrong_spectrum,
    not_leonard,
    relation_coefficient_mismatch,
    degenerate_parameter,
};

inline std::string to_string(ClassificationError e) {
    switch (e) {
        case ClassificationError::none: return "none";
        case ClassificationError::wrong_spectrum: return "wrong-spectrum";
        case ClassificationError::not_leonard: return "not-leonard";
        case ClassificationError::relation_coefficient_mismatch: return "relation-coefficient-mismatch";
        case ClassificationError::degenerate_parameter: return "degenerate-parameter";
    }
    return "?";
}

template <class F>
struct ClassificationResult {
    ClassificationVerdict verdict = ClassificationVerdict::not_leonard;
    ClassificationError error = ClassificationError::none;
    std::vector<std::string> failures;
    std::optional<F> p;
    std::optional<F> alpha1;
    std::optional<F> alpha1_star;
    /// Candidate eigenvalue sequences N, N-2, ..., -N.
    std::vector<F> theta;
    std::vector<F> theta_star;
    std::optional<LeonardSystem<F>> system;
    /// Change of basis S with S^-1 A S and S^-1 A* S the reference pair.
    std::optional<ExactMatrix<F>> iso;

    bool ok() const { return verdict == ClassificationVerdict::krawtchouk_type; }
};

namespace detail {

/// Solves M = c X for the scalar c, reading c off the first nonzero entry of
/// X in row-major order.  Returns nothing when no scalar works.
template <class F>
std::optional<F> scalar_quotient(const ExactMatrix<F>& m, const ExactMatrix<F>& x) {
    const std::size_t n = x.order();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!x(i, j).is_zero()) {
                const F c = m(i, j) / x(i, j);
                if (m == c * x) return c;
                return std::nullopt;
            }
    return std::nullopt;
}

} // namespace detail

/// Decides whether a pair of matrices is a Leonard pair of Krawtchouk type,
/// i.e. both spectra are N, N-2, ..., -N, the pair is a Leonard system, and
/// the cubic bracket relations hold with a shared coefficient alpha_1 =
/// 4(2p - 1) for some parameter p outside {0, 1}.  On success the result
/// carries p together with a change of basis onto the reference module.
template <class F>
ClassificationResult<F> classify_krawtchouk(const ExactMatrix<F>& a, const ExactMatrix<F>& a_star) {
    const std::size_t n = a.order();
    if (a_star.order() != n) throw invalid_parameter("matrix orders differ");
    const auto& spec = a.spec();
    const long long N = static_cast<long long>(n) - 1;
    if (!F::feasible(N, spec))
        throw invalid_parameter("matrix order is not feasible for this field");

    ClassificationResult<F> out;
    std::vector<F> candidates;
    candidates.reserve(n);
    for (long long i = 0; i <= N; ++i) candidates.push_back(F::from_integer(N - 2 * i, spec));
    out.theta = candidates;
    out.theta_star = candidates;

    auto rec = recognize_leonard_system(a, a_star, candidates, candidates);
    if (!rec.ok()) {
        if (rec.error == RecognitionError::not_multiplicity_free &&
            (rec.primal_defect == SpectrumDefect::wrong_spectrum ||
             rec.dual_defect == SpectrumDefect::wrong_spectrum)) {
            out.error = ClassificationError::wrong_spectrum;
            out.failures.push_back(std::string("wrong-spectrum: ") +
                                   (rec.primal_defect == SpectrumDefect::wrong_spectrum ? "primal"
                                                                                        : "dual") +
                                   " spectrum is not N, N-2, ..., -N");
            out.failures.push_back(
                "hint: for arithmetic spectra, affine_normalize gives the affine change of "
                "variable onto N, N-2, ..., -N (spectra 0..N need a -> N*I - 2*A)");
        } else {
            out.error = ClassificationError::not_leonard;
            out.failures.push_back(rec.error == RecognitionError::not_multiplicity_free
                                       ? "not diagonalizable over the base field"
                                       : to_string(rec.error));
        }
        out.verdict = ClassificationVerdict::not_leonard;
        return out;
    }
    out.system = std::move(rec.system);

    const F four = F::from_integer(4, spec);
    const ExactMatrix<F> com = commutator(a, a_star);
    if (commutator(a, commutator(a, com)) != four * com ||
        commutator(a_star, commutator(a_star, -com)) != -(four * com)) {
        out.verdict = ClassificationVerdict::leonard_but_not_krawtchouk;
        out.error = ClassificationError::relation_coefficient_mismatch;
        out.failures.push_back("cubic bracket relation [x,[x,[x,y]]] = 4[x,y] fails");
        return out;
    }

    out.alpha1 = detail::scalar_quotient(commutator(a, com) - four * a_star, a);
    out.alpha1_star = detail::scalar_quotient(commutator(a_star, -com) - four * a, a_star);
    if (!out.alpha1 || !out.alpha1_star) {
        if (a.is_zero() && a_star.is_zero()) {
            out.verdict = ClassificationVerdict::leonard_but_not_krawtchouk;
            out.error = ClassificationError::degenerate_parameter;
            out.failures.push_back("parameter is indeterminate for the zero pair");
            return out;
        }
        out.verdict = ClassificationVerdict::leonard_but_not_krawtchouk;
        out.error = ClassificationError::relation_coefficient_mismatch;
        out.failures.push_back("double bracket is not a scalar multiple of the operator");
        return out;
    }
    if (*out.alpha1 != *out.alpha1_star) {
        out.verdict = ClassificationVerdict::leonard_but_not_krawtchouk;
        out.error = ClassificationError::relation_coefficient_mismatch;
        out.failures.push_back("relation coefficients differ between the two operators");
        return out;
    }

    // alpha_1 = 4(2p - 1).
    const F one = F::one(spec);
    const F two = F::from_integer(2, spec);
    const F p = (*out.alpha1 / four + one) / two;
    if (p.is_zero() || p == one) {
        out.verdict = ClassificationVerdict::leonard_but_not_krawtchouk;
        out.error = ClassificationError::degenerate_parameter;
        out.failures.push_back("recovered parameter lies in {0, 1}");
        return out;
    }
    out.p = p;

    // a = 2(1-p)e + (1-2p)h + 2pf with h = a*, so e and f are recovered from
    // a, a* and their bracket.
    const F eight = F::from_integer(8, spec);
    const ExactMatrix<F> base = two * a + (two * (two * p - one)) * a_star;
    const ExactMatrix<F> e_op = (eight * (one - p)).inv() * (base - com);
    const ExactMatrix<F> f_op = (eight * p).inv() * (base + com);
    const ExactMatrix<F>& h_op = a_star;
    if (commutator(h_op, e_op) != two * e_op || commutator(h_op, f_op) != -(two * f_op) ||
        commutator(e_op, f_op) != h_op) {
        out.verdict = ClassificationVerdict::leonard_but_not_krawtchouk;
        out.error = ClassificationError::relation_coefficient_mismatch;
        out.failures.push_back("reconstructed generators do not satisfy the defining relations");
        return out;
    }

    // Highest weight vector: the theta* = N eigenvector of a*, killed by e.
    // Pushing it down with f and normalizing reproduces the reference basis.
    const ExactMatrix<F> id = ExactMatrix<F>::identity(n, spec);
    auto top = null_space(a_star - F::from_integer(N, spec) * id);
    bool module_ok = top.size() == 1 && vec_is_zero(mat_vec(e_op, top.front()));
    std::vector<std::vector<F>> w;
    if (module_ok) {
        w.push_back(std::move(top.front()));
        for (long long i = 1; i <= N && module_ok; ++i) {
            std::vector<F> next = mat_vec(f_op, w.back());
            const F scale = F::from_integer(N - i + 1, spec).inv();
            for (F& c : next) c *= scale;
            std::vector<F> lowered = mat_vec(e_op, next);
            const F fi = F::from_integer(i, spec);
            for (std::size_t k = 0; k < n; ++k)
                if (lowered[k] != fi * w.back()[k]) {
                    module_ok = false;
                    break;
                }
            w.push_back(std::move(next));
        }
        module_ok = module_ok && vec_is_zero(mat_vec(f_op, w.back()));
    }
    if (!module_ok) {
        out.verdict = ClassificationVerdict::leonard_but_not_krawtchouk;
        out.error = ClassificationError::relation_coefficient_mismatch;
        out.failures.push_back("highest weight vector does not generate a reference module");
        return out;
    }

    ExactMatrix<F> s(n, spec);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) s(r, c) = w[c][r];
    const ExactMatrix<F> s_inv = inverse(s);
    const KrawtchoukTable<F> table = build_table(Params<F>(N, p));
    const F nn = F::from_integer(N, spec);
    const ExactMatrix<F> ref_a = nn * id - two * table.B.transpose();
    const ExactMatrix<F> ref_a_star = nn * id - two * table.D;
    if (s_inv * a * s != ref_a || s_inv * a_star * s != ref_a_star) {
        out.verdict = ClassificationVerdict::leonard_but_not_krawtchouk;
        out.error = ClassificationError::relation_coefficient_mismatch;
        out.failures.push_back("change of basis does not reach the reference pair");
        return out;
    }

    out.verdict = ClassificationVerdict::krawtchouk_type;
    out.iso = std::move(s);
    return out;
}

/// Affine change of variable carrying both eigenvalue sequences onto the
/// Krawtchouk form N, N-2, ..., -N.  Each input must be an arithmetic
/// progression of distinct scalars; a single point is normalized by
/// translation alone.
template <class F>
struct AffineNormalization {
    F alpha;
    F beta;
    F alpha_star;
    F beta_star;
};

template <class F>
std::optional<AffineNormalization<F>> affine_normalize(const std::vector<F>& thetas,
                                                       const std::vector<F>& thetas_star) {
    if (thetas.empty() || thetas.size() != thetas_star.size())
        throw invalid_parameter("eigenvalue sequences must be nonempty and of equal length");
    auto repeated = [](const std::vector<F>& t) {
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = i + 1; j < t.size(); ++j)
                if (t[i] == t[j]) return true;
        return false;
    };
    if (repeated(thetas) || repeated(thetas_star))
        throw invalid_parameter("eigenvalue sequences must consist of distinct scalars");

    const auto& spec = thetas.front().spec();
    const long long N = static_cast<long long>(thetas.size()) - 1;
    const F fn = F::from_integer(N, spec);
    const F two = F::from_integer(2, spec);

    // With common difference s, alpha = -2/s and beta = N + 2 theta_0 / s.
    auto solve = [&](const std::vector<F>& t) -> std::optional<std::pair<F, F>> {
        if (N == 0) return std::make_pair(F::one(spec), -t[0]);
        const F step = t[1] - t[0];
        for (std::size_t i = 1; i + 1 < t.size(); ++i)
            if (t[i + 1] - t[i] != step) return std::nullopt;
        const F alpha = -(two / step);
        const F beta = fn + two * t[0] / step;
        return std::make_pair(alpha, beta);
    };
    auto primal = solve(thetas);
    auto dual = solve(thetas_star);
    if (!primal || !dual) return std::nullopt;
    return AffineNormalization<F>{primal->first, primal->second, dual->first, dual->second};
}

} // namespace klp
