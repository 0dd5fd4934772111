#pragma once

#include "voacert/voa.hpp"

#include <map>
#include <vector>

namespace voacert::testing {

/** Partition numbers p(0..n) by the usual DP over part sizes. */
inline std::vector<long> partition_table(long n) {
    std::vector<long> p(static_cast<size_t>(n) + 1, 0);
    p[0] = 1;
    for (long part = 1; part <= n; ++part)
        for (long s = part; s <= n; ++s)
            p[static_cast<size_t>(s)] += p[static_cast<size_t>(s - part)];
    return p;
}

/**
 * Graded dimensions recomputed from scratch: each variant is a sum of lattice cosets, each
 * lattice point carries its quadratic-plus-linear weight, and a full partition's worth of
 * creation operators sits on top. Nothing here touches FockSpace.
 */
inline std::map<Rational, long> oracle_dims(Variant variant, long p, long q, long n,
                                            const Rational& cutoff) {
    Rational quad, lin;
    std::vector<Rational> offsets;
    if (variant == Variant::VLStandard) {
        quad = Rational(n);
        lin = Rational(0);
        offsets = {Rational(0)};
    } else {
        quad = Rational(p * q);
        lin = Rational(-(p - q));
        offsets = {Rational(0)};
        if (variant == Variant::V0 || variant == Variant::Vpq) offsets.push_back(Rational(-1, p));
        if (variant == Variant::V0o || variant == Variant::Vpq) offsets.push_back(Rational(1, q));
    }
    auto ptab = partition_table(cutoff.floor().convert_to<long>());
    std::map<Rational, long> dims;
    for (const Rational& d : offsets) {
        for (long m = -64; m <= 64; ++m) {
            Rational lam = Rational(m) + d;
            Rational h0 = quad * lam * lam + lin * lam;
            if (h0 > cutoff) continue;
            for (long k = 0; h0 + Rational(k) <= cutoff; ++k)
                dims[h0 + Rational(k)] += ptab[static_cast<size_t>(k)];
        }
    }
    return dims;
}

}  // namespace voacert::testing
