#include "voacert/linalg.hpp"
#include "voacert/scalar.hpp"

#include <doctest.h>

using namespace voacert;

TEST_CASE("rational arithmetic and parsing") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, 6).str() == "-1/2");
    CHECK(Rational::parse("5/2") == Rational(5, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational(5, 2) * Rational(2, 5) == Rational(1));
    CHECK(Rational(1, 3).pow(3) == Rational(1, 27));
    CHECK(Rational(-1, 2).pow(2) == Rational(1, 4));
    CHECK(Rational(7, 2).floor() == BigInt(3));
    CHECK(Rational(-7, 2).floor() == BigInt(-4));
    CHECK(Rational(-7, 2).ceil() == BigInt(-3));
    CHECK(Rational(3, 4).is_integer() == false);
    CHECK(Rational(8, 4).is_integer());
    CHECK_THROWS_AS(Rational::parse("1/0"), Error);
    CHECK_THROWS_AS(Rational::parse("x"), UsageError);
}

TEST_CASE("binomial coefficients at rational arguments") {
    CHECK(binomial(Rational(5), 2) == Rational(10));
    CHECK(binomial(Rational(3), 5) == Rational(0));
    CHECK(binomial(Rational(-1), 3) == Rational(-1));
    CHECK(binomial(Rational(-1, 2), 2) == Rational(3, 8));
    CHECK(binomial(Rational(1, 2), 2) == Rational(-1, 8));
    CHECK(binomial(Rational(7, 3), 0) == Rational(1));
}

TEST_CASE("roots of unity multiply exactly") {
    Scalar one(Rational(1));
    CHECK(Scalar::root_of_unity(Rational(1, 2)) * Scalar::root_of_unity(Rational(1, 2)) == one);
    CHECK(Scalar::root_of_unity(Rational(1, 2)) == Scalar(Rational(-1)));
    Scalar z3 = Scalar::root_of_unity(Rational(1, 3));
    CHECK(z3 * z3 * z3 == one);
    CHECK(z3 + z3 * z3 == Scalar(Rational(-1)));
    Scalar z8 = Scalar::root_of_unity(Rational(1, 8));
    Scalar acc = one;
    for (int i = 0; i < 8; ++i) acc = acc * z8;
    CHECK(acc == one);
    CHECK(z8 * z8 * z8 * z8 == Scalar(Rational(-1)));
    CHECK(Scalar::root_of_unity(Rational(5, 4)) == Scalar::root_of_unity(Rational(1, 4)));
}

TEST_CASE("the logarithm symbol is transcendental over the cyclotomics") {
    Scalar t = Scalar::tau();
    CHECK(t.is_rational() == false);
    CHECK(t * t == Scalar::tau(2));
    Scalar mix = Scalar(Rational(2)) + t;
    CHECK(!(mix == Scalar(Rational(2))));
    CHECK(mix - t == Scalar(Rational(2)));
    CHECK((Scalar::root_of_unity(Rational(1, 3)) * t).is_rational() == false);
    CHECK(Scalar(Rational(0)).is_rational());
    CHECK(Scalar(Rational(-5, 3)).rational_value() == Rational(-5, 3));
}

TEST_CASE("jordan-chevalley decomposition over the rationals") {
    RatMatrix m(2, 2);
    m(0, 0) = Rational(1);
    m(0, 1) = Rational(1);
    m(1, 1) = Rational(1);
    auto jc = jordan_chevalley(m);
    REQUIRE(jc.eigenvalues.size() == 1);
    CHECK(jc.eigenvalues[0].first == Rational(1));
    CHECK(jc.eigenvalues[0].second == 2);
    CHECK(jc.semisimple == RatMatrix::identity(2));
    CHECK(jc.nilpotent(0, 1) == Rational(1));
    CHECK(jc.nilpotent(0, 0) == Rational(0));
    RatMatrix sum(2, 2);
    sum += jc.semisimple;
    sum += jc.nilpotent;
    CHECK(sum == m);
    CHECK(jc.projectors.size() == 1);
    CHECK(jc.projectors[0] == RatMatrix::identity(2));
}

TEST_CASE("distinct rational eigenvalues give orthogonal projectors") {
    RatMatrix m(2, 2);
    m(0, 0) = Rational(2);
    m(1, 1) = Rational(-1, 3);
    m(0, 1) = Rational(7);
    auto jc = jordan_chevalley(m);
    REQUIRE(jc.eigenvalues.size() == 2);
    CHECK(jc.eigenvalues[0].first == Rational(-1, 3));
    CHECK(jc.eigenvalues[1].first == Rational(2));
    RatMatrix psum(2, 2);
    for (const auto& pr : jc.projectors) psum += pr;
    CHECK(psum == RatMatrix::identity(2));
    CHECK(jc.nilpotent == RatMatrix(2, 2));
    CHECK(jc.projectors[0] * jc.projectors[1] == RatMatrix(2, 2));
}

TEST_CASE("irrational spectra are refused") {
    RatMatrix m(2, 2);
    m(0, 1) = Rational(1);
    m(1, 0) = Rational(1);
    m(1, 1) = Rational(1);
    CHECK_THROWS_AS(jordan_chevalley(m), IrrationalSpectrumError);
}

TEST_CASE("nilpotency index and the exponential group law") {
    RatMatrix n(3, 3);
    n(0, 1) = Rational(1);
    n(1, 2) = Rational(1);
    ScalarMatrix ns(3, 3);
    ns(0, 1) = Scalar(Rational(1));
    ns(1, 2) = Scalar(Rational(1));
    CHECK(nilpotency_index(ns) == 3);
    CHECK(nilpotency_index(ScalarMatrix(2, 2)) == 1);
    CHECK(nilpotency_index(ScalarMatrix(0, 0)) == 0);
    ScalarMatrix bad(1, 1);
    bad(0, 0) = Scalar(Rational(1));
    CHECK_THROWS_AS(nilpotency_index(bad), NotNilpotentError);

    ScalarMatrix e1 = exp_nilpotent(n, Scalar(Rational(1)));
    ScalarMatrix e2 = exp_nilpotent(n, Scalar(Rational(2)));
    CHECK(e1 * e1 == e2);
    ScalarMatrix em = exp_nilpotent(n, Scalar(Rational(-1)));
    CHECK(e1 * em == ScalarMatrix::identity(3));
    CHECK(e2(0, 2) == Scalar(Rational(2)));
}
