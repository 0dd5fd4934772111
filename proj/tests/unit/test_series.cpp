#include "voacert/series.hpp"

#include <doctest.h>

using namespace voacert;

using S = LogSeries<Scalar>;

namespace {
Scalar sc(long n, long d = 1) { return Scalar(Rational(n, d)); }
}  // namespace

TEST_CASE("window certification and truncation") {
    S s{Window{Rational(-1), Rational(2)}};
    s.add_term(Rational(0), 0, sc(3));
    s.add_term(Rational(5), 0, sc(9));
    CHECK(s.coefficient(Rational(0)) == sc(3));
    CHECK(s.coefficient(Rational(1)) == Scalar());
    CHECK_THROWS_AS(s.coefficient(Rational(3)), TruncatedError);
    CHECK(s.terms().size() == 1);

    S t = s;
    t.add_term(Rational(2), 0, sc(1));
    auto shrunk = t.truncated(Rational(1));
    CHECK(shrunk.terms().size() == 1);
    CHECK_THROWS_AS(shrunk.coefficient(Rational(2)), TruncatedError);
}

TEST_CASE("terms cancel exactly and zero slots vanish") {
    S s;
    s.add_term(Rational(1, 2), 0, sc(1, 3));
    s.add_term(Rational(1, 2), 0, sc(-1, 3));
    CHECK(s.is_zero());
    CHECK(s.is_exact_zero());
    CHECK(s.coefficient(Rational(1, 2)) == Scalar());
}

TEST_CASE("differentiation handles fractional powers and logs") {
    S s;
    s.add_term(Rational(1, 2), 0, sc(1));
    S d = s.ddx();
    CHECK(d.coefficient(Rational(-1, 2)) == Scalar(Rational(1, 2)));

    S xl;
    xl.add_term(Rational(1), 1, sc(1));
    S dl = xl.ddx();
    CHECK(dl.coefficient(Rational(0), 1) == sc(1));
    CHECK(dl.coefficient(Rational(0), 0) == sc(1));

    S li;
    li.add_term(Rational(0), 1, sc(1));
    CHECK(li.ddx().coefficient(Rational(-1), 0) == sc(1));
}

TEST_CASE("integration from the origin inverts differentiation away from x^-1") {
    S s;
    s.add_term(Rational(2), 0, sc(5));
    s.add_term(Rational(-3), 0, sc(7));
    S back = s.integrate0().ddx();
    CHECK(back.coefficient(Rational(2)) == sc(5));
    CHECK(back.coefficient(Rational(-3)) == sc(7));

    S pole;
    pole.add_term(Rational(-1), 0, sc(1));
    CHECK_THROWS_AS(pole.integrate0(), IntegralUndefinedError);
}

TEST_CASE("monodromy substitution multiplies by phases and shifts logs") {
    S s;
    s.add_term(Rational(1, 2), 0, sc(1));
    S m = s.monodromy_substituted();
    CHECK(m.coefficient(Rational(1, 2)) == sc(-1));

    S xl;
    xl.add_term(Rational(1), 1, sc(1));
    S ml = xl.monodromy_substituted();
    CHECK(ml.coefficient(Rational(1), 1) == sc(1));
    CHECK(ml.coefficient(Rational(1), 0) == Scalar::tau());
}

TEST_CASE("certified mapping backs off at the first failure") {
    S s{Window{Rational(0), Rational(3)}};
    s.add_term(Rational(0), 0, sc(1));
    s.add_term(Rational(1), 0, sc(2));
    s.add_term(Rational(2), 0, sc(3));
    auto out = map_certified(s, [](const Scalar& c) -> std::optional<Scalar> {
        if (c == Scalar(Rational(3))) return std::nullopt;
        return c * Scalar(Rational(10));
    });
    REQUIRE(out.window().hi.has_value());
    CHECK(*out.window().hi == Rational(1));
    CHECK(out.coefficient(Rational(1)) == sc(20));
    CHECK_THROWS_AS(out.coefficient(Rational(2)), TruncatedError);
}

TEST_CASE("binomial expansion of a shifted power matches its defining coefficients") {
    auto e = expand_binomial(Rational(1, 2), ExpandIn::FirstLarge, 3);
    CHECK(e.coefficient(Rational(0)).coefficient(Rational(1, 2)) == sc(1));
    CHECK(e.coefficient(Rational(1)).coefficient(Rational(-1, 2)) == Scalar(Rational(1, 2)));
    CHECK(e.coefficient(Rational(2)).coefficient(Rational(-3, 2)) == Scalar(Rational(-1, 8)));
    CHECK(e.coefficient(Rational(3)).coefficient(Rational(-5, 2)) == Scalar(Rational(1, 16)));
}

TEST_CASE("series comparison respects the certified intersection") {
    S a{Window{Rational(0), Rational(2)}};
    a.add_term(Rational(0), 0, sc(1));
    S b{Window{Rational(0), Rational(4)}};
    b.add_term(Rational(0), 0, sc(1));
    b.add_term(Rational(3), 0, sc(9));
    MatchResult m = match_in_window(a, b, "agree ");
    CHECK(m.mismatch.empty());
    CHECK(m.compared >= 1);

    b.add_term(Rational(1), 0, sc(4));
    MatchResult bad = match_in_window(a, b, "differ ");
    CHECK(!bad.mismatch.empty());
}
