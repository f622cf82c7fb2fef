/*
 * klp: exact Krawtchouk polynomial and Leonard pair toolkit.
 *
 * Commands
 *   eval      evaluate K_i at a point and print the scalar
 *   table     export the eigenmatrix bundle (U, B, D, K, P) as JSON
 *   module    export the (N+1)-dimensional module bundle as JSON
 *   verify    sweep every identity suite over an (N, p) grid
 *   classify  decide whether a matrix pair is a Krawtchouk Leonard pair
 *
 * Exit codes: 0 success (classify: krawtchouk-type), 1 verify found a failing
 * identity, 2 classify: leonard-but-not-krawtchouk, 3 classify: not-leonard,
 * 4 input error, 5 I/O error.  Identical inputs produce identical bytes.
 */

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "klp/errors.hpp"
#include "klp/json_io.hpp"
#include "klp/krawtchouk.hpp"
#include "klp/leonard.hpp"
#include "klp/module.hpp"
#include "klp/poly.hpp"
#include "klp/prime_field.hpp"
#include "klp/rational.hpp"
#include "klp/verify.hpp"

namespace {

struct IoFailure {
    std::string message;
};

struct FieldChoice {
    bool prime = false;
    std::uint64_t modulus = 0;
};

FieldChoice parse_field_text(const std::string& text) {
    if (text == "rational") return {};
    const std::string prefix = "prime:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string digits = text.substr(prefix.size());
        if (digits.empty() || digits.size() > 19 ||
            digits.find_first_not_of("0123456789") != std::string::npos)
            throw klp::parse_error("--field prime:q needs a decimal modulus");
        return {true, std::stoull(digits)};
    }
    throw klp::parse_error("--field must be rational or prime:q");
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw IoFailure{"cannot write to stdout"};
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw IoFailure{"cannot open " + out_path};
    f << text;
    f.flush();
    if (!f) throw IoFailure{"cannot write " + out_path};
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoFailure{"cannot read " + path};
    std::ostringstream buffer;
    buffer << f.rdbuf();
    if (f.bad()) throw IoFailure{"cannot read " + path};
    try {
        return nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::exception& e) {
        throw klp::parse_error(path + ": " + e.what());
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string piece;
    std::istringstream in(text);
    while (std::getline(in, piece, ',')) out.push_back(piece);
    return out;
}

struct Options {
    std::string field = "rational";
    std::string out;
    std::uint64_t seed = 0x6b6c70;
    int jobs = 1;

    long long n = 0;
    std::string p;
    long long i = 0;
    std::string x;

    long long n_max = 8;
    std::string p_list;

    std::string in_path;
    bool shift = false;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--field", o.field, "coefficient field: rational or prime:q")
        ->capture_default_str();
    sub->add_option("--out", o.out, "write the output to this path instead of stdout");
    sub->add_option("--seed", o.seed, "seed for randomized rejection checks")
        ->capture_default_str();
    sub->add_option("--jobs", o.jobs, "worker threads for grid sweeps")->capture_default_str();
}

template <class F>
int cmd_eval(const typename F::Spec& spec, const Options& o) {
    const klp::Params<F> params(o.n, F::parse(o.p, spec));
    if (o.i < 0 || o.i > o.n) throw klp::invalid_parameter("degree i must lie in 0..N");
    const F value = klp::kraw_coeffs(params, o.i).eval(F::parse(o.x, spec));
    emit(o.out, value.str() + "\n");
    return 0;
}

template <class F>
int cmd_table(const typename F::Spec& spec, const Options& o) {
    const auto table = klp::build_table(klp::Params<F>(o.n, F::parse(o.p, spec)));
    emit(o.out, klp::table_to_json(table).dump(2) + "\n");
    return 0;
}

template <class F>
int cmd_module(const typename F::Spec& spec, const Options& o) {
    const auto m = klp::build_module(klp::Params<F>(o.n, F::parse(o.p, spec)));
    emit(o.out, klp::module_to_json(m).dump(2) + "\n");
    return 0;
}

template <class F>
int cmd_verify(const typename F::Spec& spec, const Options& o) {
    klp::VerifyOptions<F> opt;
    opt.n_max = o.n_max;
    opt.jobs = o.jobs;
    opt.seed = o.seed;
    for (const auto& piece : split_list(o.p_list)) opt.p_values.push_back(F::parse(piece, spec));
    const auto summary = klp::run_verify(opt, spec);
    emit(o.out, summary.format());
    return summary.all_pass() ? 0 : 1;
}

template <class F>
int cmd_classify(const typename F::Spec& spec, const nlohmann::json& doc, const Options& o) {
    auto [a, a_star] = klp::classify_input_from_json<F>(doc, spec);
    if (o.shift) {
        if (a.order() != a_star.order())
            throw klp::invalid_parameter("matrix orders differ");
        const auto id = klp::ExactMatrix<F>::identity(a.order(), spec);
        const F nn = F::from_integer(static_cast<long long>(a.order()) - 1, spec);
        const F two = F::from_integer(2, spec);
        a = nn * id - two * a;
        a_star = nn * id - two * a_star;
    }
    const auto res = klp::classify_krawtchouk(a, a_star);
    emit(o.out, klp::classification_to_json(res).dump(2) + "\n");
    switch (res.verdict) {
        case klp::ClassificationVerdict::krawtchouk_type: return 0;
        case klp::ClassificationVerdict::leonard_but_not_krawtchouk: return 2;
        case klp::ClassificationVerdict::not_leonard: return 3;
    }
    return 3;
}

/// The field of a classification input is read off the file itself; an
/// explicit --field must agree with it.
FieldChoice detect_classify_field(const nlohmann::json& doc, bool field_given,
                                  const FieldChoice& requested) {
    const char* key = doc.is_object() && doc.contains("A") ? "A" : "B";
    if (!doc.is_object() || !doc.contains(key) || !doc[key].is_object() ||
        !doc[key].contains("field") || !doc[key]["field"].is_object() ||
        !doc[key]["field"].contains("kind"))
        throw klp::parse_error("classification input carries no field spec");
    const auto& fj = doc[key]["field"];
    FieldChoice detected;
    if (fj["kind"] == "prime") {
        if (!fj.contains("modulus") || !fj["modulus"].is_number_integer() ||
            fj["modulus"].get<std::int64_t>() <= 0)
            throw klp::parse_error("prime field spec needs a positive modulus");
        detected = {true, fj["modulus"].get<std::uint64_t>()};
    } else if (fj["kind"] != "rational") {
        throw klp::parse_error("unknown field kind in classification input");
    }
    if (field_given &&
        (requested.prime != detected.prime || requested.modulus != detected.modulus))
        throw klp::invalid_parameter("--field disagrees with the input file");
    return detected;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Krawtchouk polynomial and Leonard pair toolkit"};
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "evaluate K_i at a point");
    eval->add_option("--N", o.n, "degree bound N")->required();
    eval->add_option("--p", o.p, "parameter p (not 0 or 1)")->required();
    eval->add_option("--i", o.i, "polynomial index in 0..N")->required();
    eval->add_option("--x", o.x, "evaluation point, any field element")->required();
    add_common(eval, o);

    auto* table = app.add_subcommand("table", "export the eigenmatrix bundle as JSON");
    table->add_option("--N", o.n, "degree bound N")->required();
    table->add_option("--p", o.p, "parameter p (not 0 or 1)")->required();
    add_common(table, o);

    auto* module = app.add_subcommand("module", "export the module bundle as JSON");
    module->add_option("--N", o.n, "degree bound N")->required();
    module->add_option("--p", o.p, "parameter p (not 0 or 1)")->required();
    add_common(module, o);

    auto* verify = app.add_subcommand("verify", "sweep every identity suite over a grid");
    verify->add_option("--Nmax", o.n_max, "largest N in the sweep")->capture_default_str();
    verify->add_option("--p", o.p_list, "comma-separated p values")->required();
    add_common(verify, o);

    auto* classify = app.add_subcommand("classify", "test a matrix pair for Krawtchouk type");
    classify->add_option("--in", o.in_path, "JSON file with A/Astar or a table bundle")
        ->required();
    classify->add_flag("--shift", o.shift, "apply a -> N*I - 2a to both matrices first");
    add_common(classify, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 4;
    }

    try {
        if (classify->parsed()) {
            const nlohmann::json doc = read_json_file(o.in_path);
            const bool field_given = classify->count("--field") > 0;
            const FieldChoice requested =
                field_given ? parse_field_text(o.field) : FieldChoice{};
            const FieldChoice field = detect_classify_field(doc, field_given, requested);
            return field.prime ? cmd_classify<klp::Fp>(klp::Fp::Spec(field.modulus), doc, o)
                               : cmd_classify<klp::Rational>({}, doc, o);
        }
        const FieldChoice field = parse_field_text(o.field);
        const klp::Fp::Spec prime_spec =
            field.prime ? klp::Fp::Spec(field.modulus) : klp::Fp::Spec{};
        if (eval->parsed())
            return field.prime ? cmd_eval<klp::Fp>(prime_spec, o) : cmd_eval<klp::Rational>({}, o);
        if (table->parsed())
            return field.prime ? cmd_table<klp::Fp>(prime_spec, o)
                               : cmd_table<klp::Rational>({}, o);
        if (module->parsed())
            return field.prime ? cmd_module<klp::Fp>(prime_spec, o)
                               : cmd_module<klp::Rational>({}, o);
        if (verify->parsed())
            return field.prime ? cmd_verify<klp::Fp>(prime_spec, o)
                               : cmd_verify<klp::Rational>({}, o);
        std::cerr << "klp: no command given\n";
        return 4;
    } catch (const IoFailure& e) {
        std::cerr << "klp: " << e.message << "\n";
        return 5;
    } catch (const klp::error& e) {
        std::cerr << "klp: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "klp: " << e.what() << "\n";
        return 4;
    }
}
