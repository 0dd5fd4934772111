#include "voacert/suites.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

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

std::vector<long> block_sizes(const FockSpace& sp) {
    std::vector<long> out;
    for (const auto& [h, idxs] : sp.blocks()) out.push_back(static_cast<long>(idxs.size()));
    return out;
}

}  // namespace

TEST_CASE("graded dimensions of the single-coset and three-coset spaces") {
    Algebra vl = make(Variant::VLShifted, 2, 1, 1, Rational(4));
    CHECK(block_sizes(vl.space()) == std::vector<long>{1, 2, 3, 6, 9});
    CHECK(vl.space().dim() == 21);

    Algebra vpq = make(Variant::Vpq, 2, 1, 1, Rational(4));
    CHECK(block_sizes(vpq.space()) == std::vector<long>{3, 6, 9, 18, 27});
    CHECK(vpq.space().dim() == 63);

    Algebra std1 = make(Variant::VLStandard, 2, 1, 1, Rational(3));
    CHECK(std1.space().dim() == 15);
    Algebra half = make(Variant::VLStandard, 2, 1, 1, Rational(5, 2));
    CHECK(half.space().dim() == 8);
}

TEST_CASE("the shifted weight law on lattice points") {
    Algebra alg = make(Variant::Vpq, 2, 1, 1, Rational(4));
    const FockSpace& sp = alg.space();
    auto e1 = sp.find(FockBasisElement{{}, 1, 0});
    REQUIRE(e1.has_value());
    CHECK(sp.weight(*e1) == Rational(1));
    auto em1 = sp.find(FockBasisElement{{}, -1, 0});
    REQUIRE(em1.has_value());
    CHECK(sp.weight(*em1) == Rational(3));
    CHECK(!sp.find(FockBasisElement{{}, 2, 0}).has_value());
}

TEST_CASE("the residue of a lattice exponential lands on exact Schur-type coefficients") {
    Algebra alg = make(Variant::Vpq, 2, 1, 1, Rational(4));
    const FockSpace& sp = alg.space();
    long q_cur = alg.screening_current(ScreenKind::Q);
    auto target = sp.find(FockBasisElement{{}, -1, 0});
    REQUIRE(target.has_value());
    Vec img = alg.engine().mode(sp.basis_vec(q_cur), Rational(0), sp.basis_vec(*target));
    auto c3 = sp.find(FockBasisElement{{1, 1, 1}, -1, 2});
    auto c21 = sp.find(FockBasisElement{{2, 1}, -1, 2});
    auto c111 = sp.find(FockBasisElement{{3}, -1, 2});
    REQUIRE(c3.has_value());
    REQUIRE(c21.has_value());
    REQUIRE(c111.has_value());
    CHECK(img.coeff(*c3) == Scalar(Rational(1, 6)));
    CHECK(img.coeff(*c21) == Scalar(Rational(1, 2)));
    CHECK(img.coeff(*c111) == Scalar(Rational(1, 3)));
    CHECK(img.entries.size() == 3);
}

TEST_CASE("pairing truncation kills products across the two nontrivial cosets") {
    Algebra alg = make(Variant::Vpq, 2, 1, 1, Rational(3));
    const FockSpace& sp = alg.space();
    long q_cur = alg.screening_current(ScreenKind::Q);
    long qt_cur = alg.screening_current(ScreenKind::Qtilde);
    CHECK(sp.element(q_cur).tag != 0);
    CHECK(sp.element(qt_cur).tag != 0);
    CHECK(sp.element(q_cur).tag != sp.element(qt_cur).tag);
    auto s = alg.engine().vertex_series(sp.basis_vec(q_cur), sp.basis_vec(qt_cur));
    CHECK(s.is_zero());
}

TEST_CASE("mode cache round trip is byte stable and reproduces the series") {
    Algebra alg = make(Variant::Vpq, 2, 1, 1, Rational(3));
    RunConfig rc;
    rc.variant = Variant::Vpq;
    rc.p = 2;
    rc.q = 1;
    rc.cutoff = Rational(3);
    const std::string header = cache_header(rc, alg.space());
    const std::string path = "/tmp/voacert-test-cache.txt";

    auto s0 = alg.engine().vertex_series(3, 4);
    auto name = alg.space().name(3) + "|" + alg.space().name(4);
    alg.engine().save_cache(path, header);
    std::ifstream in1(path, std::ios::binary);
    std::stringstream buf1;
    buf1 << in1.rdbuf();

    Algebra fresh = make(Variant::Vpq, 2, 1, 1, Rational(3));
    CHECK(fresh.engine().load_cache(path, header));
    auto s1 = fresh.engine().vertex_series(3, 4);
    MatchResult m = match_in_window(s0, s1, name);
    CHECK(m.mismatch.empty());
    fresh.engine().save_cache(path, header);
    std::ifstream in2(path, std::ios::binary);
    std::stringstream buf2;
    buf2 << in2.rdbuf();
    CHECK(buf1.str() == buf2.str());

    Algebra other = make(Variant::Vpq, 2, 1, 1, Rational(3));
    CHECK(!other.engine().load_cache(path, "different header"));
    std::remove(path.c_str());
}

TEST_CASE("basis hashes identify the basis order") {
    Algebra a = make(Variant::Vpq, 2, 1, 1, Rational(3));
    Algebra b = make(Variant::Vpq, 2, 1, 1, Rational(3));
    Algebra c = make(Variant::Vpq, 2, 1, 1, Rational(4));
    CHECK(a.space().basis_hash() == b.space().basis_hash());
    CHECK(a.space().basis_hash() != c.space().basis_hash());
}
