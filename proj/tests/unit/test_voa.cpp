#include "voacert/voa.hpp"

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

}  // namespace

TEST_CASE("central charges of the shifted and standard conformal vectors") {
    CHECK(make(Variant::Vpq, 2, 1, 1, Rational(3)).central_charge() == Rational(-2));
    CHECK(make(Variant::VLShifted, 2, 1, 1, Rational(3)).central_charge() == Rational(-2));
    CHECK(make(Variant::VLStandard, 2, 1, 1, Rational(3)).central_charge() == Rational(1));
    CHECK(make(Variant::Vpq, 3, 2, 1, Rational(3)).central_charge() == Rational(0));
    CHECK(make(Variant::V0, 3, 1, 1, Rational(3)).central_charge() == Rational(-7));
}

TEST_CASE("variant names round trip") {
    for (Variant v : {Variant::VLShifted, Variant::VLStandard, Variant::V0, Variant::V0o,
                      Variant::Vpq})
        CHECK(parse_variant(variant_name(v)) == v);
    CHECK_THROWS_AS(parse_variant("bogus"), UsageError);
}

TEST_CASE("screening currents exist exactly where the cosets do") {
    Algebra vpq = make(Variant::Vpq, 2, 1, 1, Rational(3));
    CHECK(vpq.space().weight(vpq.screening_current(ScreenKind::Q)) == Rational(1));
    CHECK(vpq.space().weight(vpq.screening_current(ScreenKind::Qtilde)) == Rational(1));

    Algebra v0 = make(Variant::V0, 2, 1, 1, Rational(3));
    CHECK_THROWS_AS(v0.screening_current(ScreenKind::Q), GeneratorAbsentError);
    CHECK(v0.space().weight(v0.screening_current(ScreenKind::Qtilde)) == Rational(1));

    Algebra std1 = make(Variant::VLStandard, 2, 1, 1, Rational(3));
    CHECK_THROWS_AS(std1.screening_current(ScreenKind::Q), GeneratorAbsentError);
}

TEST_CASE("the screening operator is a square-zero derivation-like map") {
    Algebra alg = make(Variant::Vpq, 2, 1, 1, Rational(3));
    GradedOperator Q = alg.screening(ScreenKind::Q);
    CHECK(Q.apply(alg.space(), alg.vacuum()).is_zero());
    CHECK(Q.apply(alg.space(), alg.conformal()).is_zero());
    CHECK(Q.compose(Q).is_zero());
    GradedOperator Qt = alg.screening(ScreenKind::Qtilde);
    CHECK(Qt.compose(Qt).is_zero());
}

TEST_CASE("smallest separating commutator powers on the rank-one lattice") {
    Algebra alg = make(Variant::VLShifted, 2, 1, 1, Rational(4));
    AxiomReport r = alg.check_weak_commutativity(12);
    CHECK(r.passed());
    CHECK(r.data.at("N(g(-1)e(0)|g(-1)e(0))") == "2");
    CHECK(r.data.at("N(e(1)|e(-1))") == "4");
    CHECK(r.data.at("N(e(0)|e(1))") == "0");
    CHECK(r.data.at("N_max_observed") == "8");
}

TEST_CASE("untwisted identities hold on a small three-coset space") {
    Algebra alg = make(Variant::Vpq, 2, 1, 1, Rational(2));
    CHECK(alg.check_identity().passed());
    CHECK(alg.check_creation().passed());
    CHECK(alg.check_translation().passed());
    CHECK(alg.check_skew_symmetry().passed());
    CHECK(alg.check_commutator_formula(1, 500).passed());
    CHECK(alg.check_weak_associativity(1, 500).passed());
    CHECK(alg.check_virasoro_bracket().passed());
}

TEST_CASE("virasoro bracket for the standard quadratic conformal vector") {
    Algebra alg = make(Variant::VLStandard, 2, 1, 1, Rational(3));
    CHECK(alg.check_virasoro_bracket().passed());
    CHECK(alg.check_identity().passed());
    CHECK(alg.check_skew_symmetry().passed());
}

TEST_CASE("cutoffs below the conformal weight are rejected") {
    CHECK_THROWS_AS(make(Variant::Vpq, 2, 1, 1, Rational(1)), CalibrationError);
}
