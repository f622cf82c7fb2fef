#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "klp/errors.hpp"
#include "klp/krawtchouk.hpp"
#include "klp/leonard.hpp"
#include "klp/matrix.hpp"
#include "klp/module.hpp"
#include "klp/prime_field.hpp"
#include "klp/rational.hpp"
#include "klp/sl2.hpp"

namespace klp {

/// Wire format notes.  Scalars travel as canonical strings ("num/den" with the
/// denominator omitted when 1; prime residues as decimals).  Objects serialize
/// with sorted keys, so identical data produces identical bytes.

inline nlohmann::json field_to_json(const Rational::Spec&) {
    return nlohmann::json{{"kind", "rational"}};
}

inline nlohmann::json field_to_json(const Fp::Spec& s) {
    return nlohmann::json{{"kind", "prime"}, {"modulus", s.modulus}};
}

inline void require_field(const nlohmann::json& j, const Rational::Spec&) {
    if (!j.is_object() || j.value("kind", std::string{}) != "rational")
        throw parse_error("expected field {\"kind\":\"rational\"}");
}

inline void require_field(const nlohmann::json& j, const Fp::Spec& s) {
    if (!j.is_object() || j.value("kind", std::string{}) != "prime" || !j.contains("modulus") ||
        !j["modulus"].is_number_integer() || j["modulus"].get<std::int64_t>() <= 0 ||
        j["modulus"].get<std::uint64_t>() != s.modulus)
        throw parse_error("field spec does not match the requested prime field");
}

template <class F>
nlohmann::json scalars_to_json(const std::vector<F>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const F& x : v) arr.push_back(x.str());
    return arr;
}

template <class F>
nlohmann::json matrix_to_json(const ExactMatrix<F>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.order(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.order(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return nlohmann::json{
        {"field", field_to_json(m.spec())}, {"n", m.order()}, {"entries", std::move(rows)}};
}

template <class F>
ExactMatrix<F> matrix_from_json(const nlohmann::json& j, const typename F::Spec& spec) {
    if (!j.is_object() || !j.contains("field") || !j.contains("n") || !j.contains("entries"))
        throw parse_error("matrix JSON needs the keys field, n and entries");
    require_field(j["field"], spec);
    if (!j["n"].is_number_integer() || j["n"].get<std::int64_t>() <= 0)
        throw parse_error("matrix order must be a positive integer");
    const std::size_t n = j["n"].get<std::size_t>();
    const auto& entries = j["entries"];
    if (!entries.is_array() || entries.size() != n)
        throw parse_error("matrix entries must hold one row per line");
    ExactMatrix<F> m(n, spec);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = entries[i];
        if (!row.is_array() || row.size() != n) throw parse_error("ragged matrix entries");
        for (std::size_t jj = 0; jj < n; ++jj) {
            if (!row[jj].is_string()) throw parse_error("matrix entries must be scalar strings");
            m(i, jj) = F::parse(row[jj].get<std::string>(), spec);
        }
    }
    return m;
}

template <class F>
nlohmann::json params_to_json(const Params<F>& params, const typename F::Spec& spec) {
    return nlohmann::json{{"N", params.N}, {"p", params.p.str()}, {"field", field_to_json(spec)}};
}

template <class F>
nlohmann::json table_to_json(const KrawtchoukTable<F>& t) {
    return nlohmann::json{{"params", params_to_json(t.params, t.U.spec())},
                          {"U", matrix_to_json(t.U)},
                          {"B", matrix_to_json(t.B)},
                          {"D", matrix_to_json(t.D)},
                          {"K", matrix_to_json(t.K)},
                          {"P", matrix_to_json(t.P)}};
}

template <class F>
nlohmann::json module_to_json(const ModuleRealization<F>& m) {
    nlohmann::json rep{{"e", matrix_to_json(m.rep_e)},   {"h", matrix_to_json(m.rep_h)},
                       {"f", matrix_to_json(m.rep_f)},   {"es", matrix_to_json(m.rep_es)},
                       {"hs", matrix_to_json(m.rep_hs)}, {"fs", matrix_to_json(m.rep_fs)}};
    nlohmann::json gram, transitions;
    for (BasisTag a : all_basis_tags())
        for (BasisTag b : all_basis_tags()) {
            const std::string key = to_string(a) + ":" + to_string(b);
            gram[key] = matrix_to_json(gram_matrix(a, b, m));
            transitions[key] = matrix_to_json(transition(a, b, m));
        }
    return nlohmann::json{{"params", params_to_json(m.params(), m.A.spec())},
                          {"rep", std::move(rep)},
                          {"A", matrix_to_json(m.A)},
                          {"Astar", matrix_to_json(m.A_star)},
                          {"gram", std::move(gram)},
                          {"transitions", std::move(transitions)}};
}

template <class F>
nlohmann::json sl2_to_json(const Sl2Element<F>& y) {
    return nlohmann::json{{"coords", scalars_to_json(y.coords())}};
}

template <class F>
Sl2Element<F> sl2_from_json(const nlohmann::json& j, const typename F::Spec& spec) {
    if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array() ||
        j["coords"].size() != 3)
        throw parse_error("sl2 element JSON needs a 3-entry coords array");
    std::vector<F> c;
    for (const auto& entry : j["coords"]) {
        if (!entry.is_string()) throw parse_error("sl2 coords must be scalar strings");
        c.push_back(F::parse(entry.get<std::string>(), spec));
    }
    return Sl2Element<F>(c[0], c[1], c[2]);
}

/// Input for classification: either a bare pair {"A":…, "Astar":…} or a full
/// table bundle, from which the pair (B^t, D) is taken.
template <class F>
std::pair<ExactMatrix<F>, ExactMatrix<F>> classify_input_from_json(
    const nlohmann::json& j, const typename F::Spec& spec) {
    if (!j.is_object()) throw parse_error("classification input must be a JSON object");
    if (j.contains("A") && j.contains("Astar"))
        return {matrix_from_json<F>(j["A"], spec), matrix_from_json<F>(j["Astar"], spec)};
    if (j.contains("B") && j.contains("D"))
        return {matrix_from_json<F>(j["B"], spec).transpose(), matrix_from_json<F>(j["D"], spec)};
    throw parse_error("classification input needs A/Astar matrices or a table bundle");
}

template <class F>
nlohmann::json classification_to_json(const ClassificationResult<F>& r) {
    nlohmann::json out{{"verdict", to_string(r.verdict)},
                       {"theta", scalars_to_json(r.theta)},
                       {"thetaStar", scalars_to_json(r.theta_star)},
                       {"failures", r.failures},
                       {"alpha1", r.alpha1 ? nlohmann::json(r.alpha1->str()) : nlohmann::json()}};
    if (r.p) out["p"] = r.p->str();
    if (r.iso) out["iso"] = matrix_to_json(*r.iso);
    return out;
}

} // namespace klp
