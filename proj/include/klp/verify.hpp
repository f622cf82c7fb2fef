#pragma once

/*
 * Whole-suite identity sweep backing the command-line verifier.  One report is
 * produced per (N, p) grid point, plus one per p for the checks that do not
 * depend on N; a summary tallies pass counts per identity and remembers the
 * first failing instance in sweep order (N ascending, then the p list order),
 * so a reported failure is always a minimal one.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "klp/errors.hpp"
#include "klp/krawtchouk.hpp"
#include "klp/leonard.hpp"
#include "klp/matrix.hpp"
#include "klp/module.hpp"
#include "klp/report.hpp"
#include "klp/sl2.hpp"

namespace klp {

template <class F>
struct VerifyOptions {
    long long n_max = 8;
    std::vector<F> p_values;
    int jobs = 1;
    std::uint64_t seed = 0x6b6c70;
    long long fuzz_trials = 3; ///< perturbation rejections per grid point
};

namespace detail {

inline void fold_prefixed(IdentityReport& into, const std::string& prefix,
                          const IdentityReport& from) {
    for (const auto& [name, ok] : from.checks) into.add(prefix + name, ok);
}

template <class F>
F random_unit(std::mt19937_64& rng, const typename F::Spec& spec) {
    if constexpr (F::is_prime_field) {
        std::uniform_int_distribution<std::uint64_t> d(1, spec.modulus - 1);
        return F::from_integer(static_cast<long long>(d(rng)), spec);
    } else {
        std::uniform_int_distribution<int> num(-9, 9);
        std::uniform_int_distribution<int> den(1, 9);
        for (;;) {
            const F x =
                F::from_integer(num(rng), spec) / F::from_integer(den(rng), spec);
            if (!x.is_zero()) return x;
        }
    }
}

} // namespace detail

/// Checks that depend only on p: the 2x2 model around the standard pair.
template <class F>
IdentityReport parameter_report(const F& p) {
    IdentityReport r;
    r.add("sl2.relations", relations_check(standard_pair(p)));
    detail::fold_prefixed(r, "sl2.transition.", transition_report(p));
    detail::fold_prefixed(r, "sl2.gram.", gram_report(p));
    detail::fold_prefixed(r, "sl2.ad.", ad_report(p));
    return r;
}

/// Every N-dependent identity suite at one grid point.
template <class F>
IdentityReport grid_point_report(const Params<F>& params, std::uint64_t seed,
                                 long long fuzz_trials) {
    const auto spec = params.spec();
    const F one = F::one(spec);
    const long long n = params.N;
    IdentityReport r;

    const auto t = build_table(params);
    detail::fold_prefixed(r, "eigenmatrix.", eigenmatrix_identities(t));
    detail::fold_prefixed(r, "product.", product_matrix_identities(t));

    bool recurrence = true, difference = true;
    for (long long i = 0; i <= n; ++i)
        for (long long x = 0; x <= n; ++x) {
            if (!three_term_residual(params, i, x).is_zero()) recurrence = false;
            if (!difference_residual(params, i, x).is_zero()) difference = false;
        }
    r.add("recurrence.residual", recurrence);
    r.add("difference.residual", difference);

    const auto orth = orthogonality_check(params);
    r.add("orthogonality.sum_over_argument", orth.sum_over_argument);
    r.add("orthogonality.sum_over_degree", orth.sum_over_degree);
    r.add("self.duality", self_duality_check(params));
    bool generating = true;
    for (long long x = 0; x <= n; ++x)
        if (!generating_function_check(params, x)) generating = false;
    r.add("generating.function", generating);

    const auto m = build_module(params);
    r.add("module.adjointness", adjointness_check(m));
    const auto dual = sum_of_dual_basis_check(m);
    r.add("module.dual.sum.mono", dual.mono_dual);
    r.add("module.dual.sum.star", dual.star_dual);
    r.add("module.polynomial.walk", polynomial_basis_check(m));
    r.add("module.gram.reference",
          reference_gram(m) == field_pow(one - params.p, -n) * inverse(t.K));
    detail::fold_prefixed(r, "module.", operator_matrix_report(m));

    if (n >= 1) {
        const auto id = ExactMatrix<F>::identity(t.U.order(), spec);
        const F nn = F::from_integer(n, spec);
        const F two = F::from_integer(2, spec);
        const ExactMatrix<F> a = nn * id - two * t.B.transpose();
        const ExactMatrix<F> a_star = nn * id - two * t.D;
        const auto res = classify_krawtchouk(a, a_star);
        r.add("leonard.classification", res.ok() && res.p && *res.p == params.p);
        if (res.system) {
            detail::fold_prefixed(r, "leonard.", verify_cross_relations(*res.system));
            r.add("leonard.basis.theorem", verify_basis_theorem(*res.system));
        }
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, t.U.order() - 1);
        bool all_rejected = true;
        for (long long trial = 0; trial < fuzz_trials; ++trial) {
            ExactMatrix<F> perturbed = a;
            perturbed(pick(rng), pick(rng)) += detail::random_unit<F>(rng, spec);
            const auto fuzzed = classify_krawtchouk(perturbed, a_star);
            if (fuzzed.ok() || fuzzed.error == ClassificationError::none)
                all_rejected = false;
        }
        r.add("leonard.fuzz.rejected", all_rejected);
    }
    return r;
}

struct IdentityTally {
    std::size_t passes = 0;
    std::size_t runs = 0;
    std::string first_failure;
};

struct VerifySummary {
    std::map<std::string, IdentityTally> tallies;
    std::size_t points = 0;

    bool all_pass() const {
        for (const auto& [name, t] : tallies)
            if (t.passes != t.runs) return false;
        return true;
    }

    void fold(const IdentityReport& r, const std::string& instance) {
        for (const auto& [name, ok] : r.checks) {
            auto& t = tallies[name];
            ++t.runs;
            if (ok)
                ++t.passes;
            else if (t.first_failure.empty())
                t.first_failure = instance;
        }
    }

    std::string format() const {
        std::ostringstream out;
        for (const auto& [name, t] : tallies)
            out << name << ": " << t.passes << "/" << t.runs << "\n";
        for (const auto& [name, t] : tallies)
            if (t.passes != t.runs) out << "FAIL " << name << " at " << t.first_failure << "\n";
        return out.str();
    }
};

/// Full sweep over N = 0..n_max and the given p list.  Validates the grid up
/// front; with jobs > 1, points are evaluated concurrently and folded back in
/// sweep order, so the summary does not depend on scheduling.
template <class F>
VerifySummary run_verify(const VerifyOptions<F>& opt, const typename F::Spec& spec) {
    if (opt.n_max < 0) throw invalid_parameter("Nmax must be nonnegative");
    if (opt.p_values.empty()) throw invalid_parameter("at least one p value is required");
    if (!F::feasible(opt.n_max, spec))
        throw invalid_parameter("Nmax is not a feasible degree bound for this field");
    const F zero = F::zero(spec), one = F::one(spec);
    for (const F& p : opt.p_values)
        if (p == zero || p == one) throw invalid_parameter("p must avoid 0 and 1");

    struct Task {
        std::string instance;
        std::function<IdentityReport()> run;
    };
    std::vector<Task> tasks;
    for (std::size_t ip = 0; ip < opt.p_values.size(); ++ip) {
        const F p = opt.p_values[ip];
        tasks.push_back({"p=" + p.str(), [p] { return parameter_report(p); }});
    }
    for (long long n = 0; n <= opt.n_max; ++n)
        for (std::size_t ip = 0; ip < opt.p_values.size(); ++ip) {
            const F p = opt.p_values[ip];
            const Params<F> params(n, p);
            const std::uint64_t point_seed = opt.seed ^
                (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n + 1)) ^
                (0xbf58476d1ce4e5b9ULL * static_cast<std::uint64_t>(ip + 1));
            const long long fuzz = opt.fuzz_trials;
            tasks.push_back({"N=" + std::to_string(n) + " p=" + p.str(),
                             [params, point_seed, fuzz] {
                                 return grid_point_report(params, point_seed, fuzz);
                             }});
        }

    VerifySummary summary;
    summary.points = tasks.size();
    const std::size_t width = opt.jobs > 1 ? static_cast<std::size_t>(opt.jobs) : 1;
    if (width <= 1) {
        for (const auto& task : tasks) summary.fold(task.run(), task.instance);
        return summary;
    }
    for (std::size_t base = 0; base < tasks.size(); base += width) {
        const std::size_t stop = std::min(tasks.size(), base + width);
        std::vector<std::future<IdentityReport>> wave;
        for (std::size_t i = base; i < stop; ++i)
            wave.push_back(std::async(std::launch::async, tasks[i].run));
        for (std::size_t i = base; i < stop; ++i)
            summary.fold(wave[i - base].get(), tasks[i].instance);
    }
    return summary;
}

} // namespace klp
