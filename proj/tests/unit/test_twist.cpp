#include "voacert/twist.hpp"

#include <doctest.h>

using namespace voacert;

namespace {

Algebra make(Variant v, long p, long q, long n, const Rational& cutoff) {
    AlgebraConfig cfg;
    cfg.variant = v;
    cfg.p = p;
    cfg.q = q;
    cfg.even_n = n;
    cfg.cutoff = cutoff;
    return Algebra(cfg);
}

Twist make_twist(Algebra& alg, TwistSpec::Kind kind, const Rational& coeff = Rational(0)) {
    TwistSpec spec;
    spec.kind = kind;
    spec.coeff = coeff;
    return Twist::make(alg, spec);
}

}  // namespace

TEST_CASE("twist names round trip") {
    TwistSpec heis;
    heis.kind = TwistSpec::Kind::Heisenberg;
    heis.coeff = Rational(1, 4);
    CHECK(twist_name(heis) == "heisenberg(1/4)");
    CHECK(parse_twist("heisenberg(1/4)").coeff == Rational(1, 4));
    CHECK(parse_twist("none").kind == TwistSpec::Kind::None);
    CHECK(parse_twist("Q-screen").kind == TwistSpec::Kind::QScreen);
    CHECK(parse_twist("Qtilde-screen").kind == TwistSpec::Kind::QtildeScreen);
    CHECK_THROWS_AS(parse_twist("spin"), UsageError);
}

TEST_CASE("the screening twist is unipotent with no self-pairing") {
    Algebra alg = make(Variant::Vpq, 2, 1, 1, Rational(3));
    Twist tw = make_twist(alg, TwistSpec::Kind::QScreen);
    CHECK(tw.mu() == Rational(0));
    CHECK(tw.log_index() == 2);
    CHECK(!tw.finite_order());
    CHECK_THROWS_AS(tw.order(), RequiresFiniteOrderError);
    CHECK(tw.spectrum() == std::vector<Rational>{Rational(0)});
}

TEST_CASE("the screening twist operator series carries exact polar and log parts") {
    Algebra alg = make(Variant::Vpq, 2, 1, 1, Rational(3));
    Twist tw = make_twist(alg, TwistSpec::Kind::QScreen);
    const FockSpace& sp = alg.space();
    auto em1 = sp.find(FockBasisElement{{}, -1, 0});
    REQUIRE(em1.has_value());
    const auto& d = tw.delta_basis(*em1);

    auto tag2_vac = sp.find(FockBasisElement{{}, -1, 2});
    REQUIRE(tag2_vac.has_value());
    CHECK(d.coefficient(Rational(-3)).coeff(*tag2_vac) == Scalar(Rational(1, 3)));

    auto tag2_g1 = sp.find(FockBasisElement{{1}, -1, 2});
    REQUIRE(tag2_g1.has_value());
    CHECK(d.coefficient(Rational(-2)).coeff(*tag2_g1) == Scalar(Rational(-1, 2)));

    CHECK(d.coefficient(Rational(0)).coeff(*em1) == Scalar(Rational(1)));
    CHECK(d.max_log_power() == 1);

    auto c3 = sp.find(FockBasisElement{{1, 1, 1}, -1, 2});
    REQUIRE(c3.has_value());
    CHECK(d.coefficient(Rational(0), 1).coeff(*c3) == Scalar(Rational(1, 6)));
}

TEST_CASE("the trivial twist leaves every vertex operator alone") {
    Algebra alg = make(Variant::Vpq, 2, 1, 1, Rational(2));
    Twist tw = make_twist(alg, TwistSpec::Kind::None);
    CHECK(tw.trivial());
    CHECK(tw.finite_order());
    CHECK(tw.order() == 1);
    const FockSpace& sp = alg.space();
    for (long v = 0; v < sp.dim(); ++v) {
        const auto& d = tw.delta_basis(v);
        CHECK(d.coefficient(Rational(0)) == sp.basis_vec(v));
        CHECK(d.terms().size() == 1);
    }
    MatchResult m = match_in_window(tw.twisted_vertex_basis(3, 4),
                                    alg.engine().vertex_series(3, 4), "trivial ");
    CHECK(m.mismatch.empty());
}

TEST_CASE("the half-lattice heisenberg twist acts with order two") {
    Algebra alg = make(Variant::VLStandard, 2, 1, 1, Rational(5, 2));
    Twist tw = make_twist(alg, TwistSpec::Kind::Heisenberg, Rational(1, 4));
    CHECK(tw.mu() == Rational(1, 8));
    CHECK(tw.finite_order());
    CHECK(tw.order() == 2);
    CHECK(tw.log_index() == 1);
    CHECK(tw.spectrum() == std::vector<Rational>{Rational(-1, 2), Rational(0), Rational(1, 2)});

    const FockSpace& sp = alg.space();
    auto e1 = sp.find(FockBasisElement{{}, 1, 0});
    REQUIRE(e1.has_value());
    CHECK(tw.apply_g(sp.basis_vec(*e1)) == sp.basis_vec(*e1).scaled(Scalar(Rational(-1))));
    CHECK(tw.eigen_alpha(*e1) == Rational(1, 2));

    const auto& d = tw.delta_basis(*e1);
    CHECK(d.terms().size() == 1);
    CHECK(d.coefficient(Rational(1, 2)) == sp.basis_vec(*e1));

    auto s = tw.twisted_vertex_basis(*e1, *e1);
    CHECK(s.is_zero());
    CHECK(s.window().lo == Rational(-3, 2));
    REQUIRE(s.window().hi.has_value());
    CHECK(*s.window().hi == Rational(1));

    Rational depth;
    auto dims = tw.twisted_dims(depth);
    CHECK(depth == Rational(33, 16));
    std::map<Rational, long> want = {{Rational(1, 16), 1},
                                     {Rational(9, 16), 1},
                                     {Rational(17, 16), 1},
                                     {Rational(25, 16), 2},
                                     {Rational(33, 16), 2}};
    CHECK(dims == want);
    CHECK(tw.new_weight(*e1) == Rational(25, 16));
    auto em1 = sp.find(FockBasisElement{{}, -1, 0});
    REQUIRE(em1.has_value());
    CHECK(tw.new_weight(*em1) == Rational(9, 16));
}

TEST_CASE("spectral projections select the claimed monodromy eigenvectors") {
    Algebra alg = make(Variant::VLStandard, 2, 1, 1, Rational(5, 2));
    Twist tw = make_twist(alg, TwistSpec::Kind::Heisenberg, Rational(1, 4));
    const FockSpace& sp = alg.space();
    auto e1 = sp.find(FockBasisElement{{}, 1, 0});
    REQUIRE(e1.has_value());
    Vec v = sp.basis_vec(*e1);
    CHECK(tw.project_mod1(Rational(1, 2), v) == v);
    CHECK(tw.project_mod1(Rational(0), v).is_zero());
    CHECK(tw.project_mod1(Rational(3, 2), v) == v);

    auto split = tw.eigen_split(v);
    REQUIRE(split.size() == 1);
    CHECK(split[0].first == Rational(1, 2));
    CHECK(split[0].second == v);
}

TEST_CASE("twisting vectors must be weight-one primary null vectors") {
    Algebra alg = make(Variant::VLStandard, 2, 1, 1, Rational(5, 2));
    TwistSpec spec;
    spec.kind = TwistSpec::Kind::Heisenberg;
    spec.coeff = Rational(0);
    CHECK(Twist::make(alg, spec).trivial());
}
