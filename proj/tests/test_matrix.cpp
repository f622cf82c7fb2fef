// Exact dense linear algebra: inverses, characteristic polynomials, null
// spaces, and the multiplicity-free spectral test.
#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using klp::DensePoly;
using klp::ExactMatrix;
using klp::Fp;
using klp::Rational;
using klp_test::cofactor_char_poly;
using klp_test::random_invertible;
using klp_test::random_matrix;

namespace {

using QMat = ExactMatrix<Rational>;
using QPoly = DensePoly<Rational>;
const Rational::Spec kQ{};

QMat qmat(std::size_t n, std::vector<long long> entries) {
    std::vector<Rational> e;
    e.reserve(entries.size());
    for (long long v : entries) e.emplace_back(v);
    return QMat(n, std::move(e), kQ);
}

} // namespace

TEST_CASE("polynomial basics") {
    const QPoly zero(kQ);
    CHECK(zero.degree() == -1);
    CHECK(zero.eval(Rational(5)) == Rational(0));

    const QPoly f({Rational(1), Rational(-1)}, kQ); // 1 - x
    CHECK(f.degree() == 1);
    CHECK(f.eval(Rational(3)) == Rational(-2));
    CHECK((f - f).degree() == -1);
    CHECK(f * zero == zero);

    const auto g = QPoly::from_roots({Rational(1), Rational(2)}, kQ);
    CHECK(g == QPoly({Rational(2), Rational(-3), Rational(1)}, kQ));
    CHECK(g.eval(Rational(1)).is_zero());

    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        std::vector<Rational> ac, bc;
        for (int k = 0; k < 4; ++k) {
            ac.push_back(klp_test::random_scalar<Rational>(rng, kQ));
            bc.push_back(klp_test::random_scalar<Rational>(rng, kQ));
        }
        const QPoly a(ac, kQ), b(bc, kQ);
        CHECK(a * b == b * a);
        const Rational x = klp_test::random_scalar<Rational>(rng, kQ);
        CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
        CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
    }
}

TEST_CASE("matrix construction and arithmetic") {
    const auto a = qmat(2, {1, 2, 3, 4});
    const auto b = qmat(2, {0, 1, 1, 0});
    CHECK(a * b == qmat(2, {2, 1, 4, 3}));
    CHECK(b * a == qmat(2, {3, 4, 1, 2}));
    CHECK(a + b == qmat(2, {1, 3, 4, 4}));
    CHECK(a.transpose() == qmat(2, {1, 3, 2, 4}));
    CHECK(Rational(2) * a == qmat(2, {2, 4, 6, 8}));
    CHECK(a.trace() == Rational(5));
    CHECK(klp::commutator(a, b) == -(klp::commutator(b, a)));

    CHECK_THROWS_AS(a + qmat(3, std::vector<long long>(9, 0)), klp::invalid_parameter);
    const Fp::Spec f7(7), f11(11);
    const ExactMatrix<Fp> m7(2, f7), m11(2, f11);
    CHECK_THROWS_AS(m7 + m11, klp::mixed_field_error);
    CHECK_THROWS_AS(QMat(0, kQ), klp::invalid_parameter);
}

TEST_CASE("jacobi identity for the matrix bracket") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 25; ++t) {
        const auto x = random_matrix<Rational>(rng, 3, kQ);
        const auto y = random_matrix<Rational>(rng, 3, kQ);
        const auto z = random_matrix<Rational>(rng, 3, kQ);
        const auto lhs = klp::commutator(x, klp::commutator(y, z)) +
                         klp::commutator(y, klp::commutator(z, x)) +
                         klp::commutator(z, klp::commutator(x, y));
        CHECK(lhs.is_zero());
    }
}

TEST_CASE("inverse: known value and round trips") {
    // 2x2 with rows (1-p, 1-p | p, p-1) at p = 1/3 inverts to rows
    // (1, 1 | p/(1-p), -1).
    const Rational p(1, 3), one(1);
    const QMat r(2, {one - p, one - p, p, p - one}, kQ);
    const QMat r_inv_expected(2, {one, one, p / (one - p), -one}, kQ);
    CHECK(klp::inverse(r) == r_inv_expected);

    std::mt19937_64 rng(13);
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto m = random_invertible<Rational>(rng, n, kQ);
        CHECK(m * klp::inverse(m) == QMat::identity(n, kQ));
        CHECK(klp::inverse(m) * m == QMat::identity(n, kQ));
    }
    const Fp::Spec f13(13);
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto m = random_invertible<Fp>(rng, n, f13);
        CHECK(m * klp::inverse(m) == ExactMatrix<Fp>::identity(n, f13));
    }

    CHECK_THROWS_AS(klp::inverse(qmat(2, {1, 2, 2, 4})), klp::singular_matrix);
    CHECK_THROWS_AS(klp::inverse(QMat(3, kQ)), klp::singular_matrix);
}

TEST_CASE("rank") {
    CHECK(klp::rank(qmat(3, {1, 2, 3, 2, 4, 6, 0, 0, 1})) == 2);
    CHECK(klp::rank(QMat(4, kQ)) == 0);
    CHECK(klp::rank(QMat::identity(4, kQ)) == 4);
}

TEST_CASE("characteristic polynomial: frozen values") {
    // Tridiagonal recurrence matrix at N=2, p=1/2 has spectrum {0,1,2}.
    const Rational h(1, 2);
    const QMat b(3, {Rational(1), Rational(-1), Rational(0),
                     -h, Rational(1), -h,
                     Rational(0), Rational(-1), Rational(1)}, kQ);
    CHECK(klp::char_poly(b) ==
          QPoly({Rational(0), Rational(2), Rational(-3), Rational(1)}, kQ));

    CHECK(klp::char_poly(qmat(1, {5})) == QPoly({Rational(-5), Rational(1)}, kQ));
    CHECK(klp::char_poly(qmat(2, {0, 1, 0, 0})) ==
          QPoly({Rational(0), Rational(0), Rational(1)}, kQ));
}

TEST_CASE("characteristic polynomial agrees with the cofactor oracle") {
    std::mt19937_64 rng(17);
    for (std::size_t n = 1; n <= 5; ++n) {
        for (int t = 0; t < 8; ++t) {
            const auto m = random_matrix<Rational>(rng, n, kQ);
            CHECK(klp::char_poly(m) == cofactor_char_poly(m));
        }
    }
    const Fp::Spec f13(13);
    for (std::size_t n = 1; n <= 5; ++n) {
        for (int t = 0; t < 8; ++t) {
            const auto m = random_matrix<Fp>(rng, n, f13);
            CHECK(klp::char_poly(m) == cofactor_char_poly(m));
        }
    }
}

TEST_CASE("characteristic polynomial is similarity-invariant") {
    std::mt19937_64 rng(19);
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto x = random_matrix<Rational>(rng, n, kQ);
        const auto t = random_invertible<Rational>(rng, n, kQ);
        CHECK(klp::char_poly(klp::inverse(t) * x * t) == klp::char_poly(x));
    }
}

TEST_CASE("cayley-hamilton holds exactly up to order 8") {
    std::mt19937_64 rng(23);
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto x = random_matrix<Rational>(rng, n, kQ);
        CHECK(klp::eval_poly_at_matrix(klp::char_poly(x), x).is_zero());
    }
    const Fp::Spec f11(11);
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto x = random_matrix<Fp>(rng, n, f11);
        CHECK(klp::eval_poly_at_matrix(klp::char_poly(x), x).is_zero());
    }
}

TEST_CASE("polynomial evaluation at a matrix") {
    const QPoly f({Rational(1), Rational(-1)}, kQ); // 1 - x
    const auto d = QMat::diagonal({Rational(0), Rational(1), Rational(2)}, kQ);
    CHECK(klp::eval_poly_at_matrix(f, d) ==
          QMat::diagonal({Rational(1), Rational(0), Rational(-1)}, kQ));
    CHECK(klp::eval_poly_at_matrix(QPoly(kQ), d) == QMat(3, kQ));
}

TEST_CASE("null space") {
    const auto m = qmat(3, {1, 2, 3, 2, 4, 6, 0, 0, 1});
    const auto basis = klp::null_space(m);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == std::vector<Rational>{Rational(-2), Rational(1), Rational(0)});
    for (const auto& v : basis) CHECK(klp::vec_is_zero(klp::mat_vec(m, v)));

    CHECK(klp::null_space(QMat::identity(3, kQ)).empty());
    CHECK(klp::null_space(QMat(2, kQ)).size() == 2);
}

TEST_CASE("multiplicity-free spectral test") {
    const auto d = QMat::diagonal({Rational(2), Rational(0), Rational(-2)}, kQ);
    const std::vector<Rational> cands{Rational(2), Rational(0), Rational(-2)};

    SECTION("diagonal matrix with its own spectrum") {
        const auto split = klp::is_multiplicity_free(d, cands);
        REQUIRE(split.multiplicity_free);
        CHECK(split.defect == klp::SpectrumDefect::none);
        REQUIRE(split.eigenvectors.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(klp::vec_is_zero(
                klp::mat_vec(d - cands[i] * QMat::identity(3, kQ), split.eigenvectors[i])));
            CHECK_FALSE(klp::vec_is_zero(split.eigenvectors[i]));
        }
    }

    SECTION("tridiagonal realization with spectrum N-2i") {
        const auto s = qmat(3, {0, 1, 0, 2, 0, 2, 0, 1, 0});
        const auto split = klp::is_multiplicity_free(s, cands);
        REQUIRE(split.multiplicity_free);
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(klp::vec_is_zero(
                klp::mat_vec(s - cands[i] * QMat::identity(3, kQ), split.eigenvectors[i])));
    }

    SECTION("wrong candidate spectrum is flagged") {
        const auto split = klp::is_multiplicity_free(
            d, {Rational(1), Rational(0), Rational(-1)});
        CHECK_FALSE(split.multiplicity_free);
        CHECK(split.defect == klp::SpectrumDefect::wrong_spectrum);
    }

    SECTION("nilpotent block with repeated candidates violates the precondition") {
        const auto jordan = qmat(2, {0, 1, 0, 0});
        CHECK_THROWS_AS(klp::is_multiplicity_free(jordan, {Rational(0), Rational(0)}),
                        klp::invalid_parameter);
        // Distinct-but-wrong candidates: the spectrum check reports the defect.
        const auto split = klp::is_multiplicity_free(jordan, {Rational(0), Rational(1)});
        CHECK(split.defect == klp::SpectrumDefect::wrong_spectrum);
    }

    SECTION("candidate count must match the order") {
        CHECK_THROWS_AS(klp::is_multiplicity_free(d, {Rational(1)}), klp::invalid_parameter);
    }
}
