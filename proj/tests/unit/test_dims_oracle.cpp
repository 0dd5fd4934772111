#include "voacert/voa.hpp"

#include "../oracle_dims.hpp"

#include <doctest.h>

using namespace voacert;
using voacert::testing::oracle_dims;
using voacert::testing::partition_table;

TEST_CASE("partition numbers up to ten") {
    auto p = partition_table(10);
    CHECK(p == std::vector<long>{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42});
}

TEST_CASE("block sizes agree with the partition-and-coset oracle") {
    struct Case {
        Variant v;
        long p, q, n;
        Rational cutoff;
    };
    for (const Case& c : {Case{Variant::Vpq, 2, 1, 1, Rational(4)},
                          Case{Variant::VLStandard, 2, 1, 2, Rational(3)},
                          Case{Variant::V0o, 2, 1, 1, Rational(3)}}) {
        AlgebraConfig cfg;
        cfg.variant = c.v;
        cfg.p = c.p;
        cfg.q = c.q;
        cfg.even_n = c.n;
        cfg.cutoff = c.cutoff;
        Algebra alg(cfg);
        std::map<Rational, long> got;
        for (const auto& [h, idxs] : alg.space().blocks())
            got[h] = static_cast<long>(idxs.size());
        CHECK(got == oracle_dims(c.v, c.p, c.q, c.n, c.cutoff));
    }
}
