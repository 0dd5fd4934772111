#include "voacert/voa.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "voacert/errors.hpp"

namespace voacert {

namespace {

long floor_long(const Rational& r) { return r.floor().convert_to<long>(); }
long ceil_long(const Rational& r) { return r.ceil().convert_to<long>(); }

void absorb_match(AxiomReport& r, const MatchResult& m) {
    r.compared += m.compared;
    if (!m.ok) r.fail_with(m.mismatch);
}

}  // namespace

Variant parse_variant(const std::string& name) {
    if (name == "VL") return Variant::VLShifted;
    if (name == "VL-standard") return Variant::VLStandard;
    if (name == "V0") return Variant::V0;
    if (name == "V0o") return Variant::V0o;
    if (name == "Vpq") return Variant::Vpq;
    throw UsageError("unknown variant '" + name + "' (expected VL, VL-standard, V0, V0o, Vpq)");
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::VLShifted: return "VL";
        case Variant::VLStandard: return "VL-standard";
        case Variant::V0: return "V0";
        case Variant::V0o: return "V0o";
        case Variant::Vpq: return "Vpq";
    }
    return "?";
}

LatticeShape Algebra::make_shape(const AlgebraConfig& cfg) {
    LatticeShape s;
    if (cfg.variant == Variant::VLStandard) {
        s.gram = Rational(2 * cfg.even_n);
        s.wt_quad = Rational(cfg.even_n);
        s.wt_lin = Rational(0);
        s.offsets = {Rational(0)};
        s.truncated = false;
        return s;
    }
    const long p = cfg.p, q = cfg.q;
    if (p <= 0 || q <= 0) throw UsageError("p and q must be positive");
    s.gram = Rational(2 * p * q);
    s.wt_quad = Rational(p * q);
    s.wt_lin = Rational(-(p - q));
    switch (cfg.variant) {
        case Variant::VLShifted:
            s.offsets = {Rational(0)};
            s.truncated = false;
            break;
        case Variant::V0:
            s.offsets = {Rational(0), Rational(-1, p)};
            s.truncated = true;
            break;
        case Variant::V0o:
            s.offsets = {Rational(0), Rational(1, q)};
            s.truncated = true;
            break;
        default:
            s.offsets = {Rational(0), Rational(-1, p), Rational(1, q)};
            s.truncated = true;
            break;
    }
    return s;
}

Algebra::Algebra(AlgebraConfig cfg)
    : cfg_(std::move(cfg)), space_(make_shape(cfg_), cfg_.cutoff), engine_(space_) {
    if (cfg_.cutoff < Rational(2))
        throw CalibrationError("cutoff must be at least 2 so the conformal vector is materialized");

    auto vac = space_.find(FockBasisElement{{}, 0, 0});
    if (!vac) throw CalibrationError("vacuum is not materialized");
    vacuum_ = *vac;

    auto quad = space_.find(FockBasisElement{{1, 1}, 0, 0});
    auto lin = space_.find(FockBasisElement{{2}, 0, 0});
    if (!quad || !lin) throw CalibrationError("weight-2 vacuum descendants are not materialized");
    omega_.add(*quad, Scalar(Rational(1) / (Rational(2) * space_.shape().gram)));
    if (cfg_.variant != Variant::VLStandard && cfg_.p != cfg_.q)
        omega_.add(*lin, Scalar(Rational(cfg_.p - cfg_.q, 2 * cfg_.p * cfg_.q)));

    calibrate();
}

const GradedOperator& Algebra::virasoro(long n) {
    auto it = virasoro_.find(n);
    if (it != virasoro_.end()) return it->second;
    auto op = GradedOperator::from_action(space_, Rational(-n), [&](long idx) {
        return engine_.mode(omega_, Rational(n + 1), space_.basis_vec(idx));
    });
    return virasoro_.emplace(n, std::move(op)).first->second;
}

GradedOperator Algebra::mode_operator(const Vec& u, long n) {
    auto w = weight_of(space_, u);
    Rational deg = w ? *w - Rational(n) - Rational(1) : Rational(0);
    return GradedOperator::from_action(space_, deg, [&](long idx) {
        return engine_.mode(u, Rational(n), space_.basis_vec(idx));
    });
}

Vec Algebra::apply_l(long n, const Vec& v) { return engine_.mode(omega_, Rational(n + 1), v); }

long Algebra::screening_current(ScreenKind which) const {
    const auto& sh = space_.shape();
    Rational want = which == ScreenKind::Q ? Rational(1, cfg_.q) : Rational(-1, cfg_.p);
    if (cfg_.variant == Variant::VLStandard)
        throw GeneratorAbsentError("no screening cosets in the standard even-lattice algebra");
    for (long tag = 0; tag < static_cast<long>(sh.offsets.size()); ++tag) {
        if (tag == 0) continue;
        if (sh.offsets[tag] == want) {
            auto idx = space_.find(FockBasisElement{{}, 0, tag});
            if (idx) return *idx;
        }
    }
    throw GeneratorAbsentError(std::string("the coset of ") +
                               (which == ScreenKind::Q ? "e(1/q)" : "e(-1/p)") +
                               " is not part of variant " + variant_name(cfg_.variant));
}

GradedOperator Algebra::screening(ScreenKind which) {
    long cur = screening_current(which);
    return GradedOperator::from_action(space_, Rational(0),
                                       [&](long idx) { return engine_.mode_basis(cur, 0, idx); });
}

Rational Algebra::central_charge() {
    Vec v = engine_.mode(omega_, Rational(3), omega_);
    for (const auto& [idx, c] : v.entries)
        if (idx != vacuum_) throw CalibrationError("L(2) of the conformal vector is not a vacuum multiple");
    Scalar c2 = v.coeff(vacuum_) * Scalar(Rational(2));
    if (!c2.is_rational()) throw CalibrationError("central charge is not rational");
    return c2.rational_value();
}

void Algebra::calibrate() {
    if (!(space_.weight(vacuum_) == Rational(0)))
        throw CalibrationError("vacuum weight is not zero");
    if (!engine_.mode(omega_, Rational(0), vacuum()).is_zero())
        throw CalibrationError("L(-1) does not annihilate the vacuum");
    for (long idx = 0; idx < space_.dim(); ++idx) {
        Vec got = engine_.mode(omega_, Rational(1), space_.basis_vec(idx));
        Vec want = space_.basis_vec(idx).scaled(Scalar(space_.weight(idx)));
        if (!(got == want))
            throw CalibrationError("L(0) disagrees with the weight grading on " + space_.name(idx));
    }
    for (ScreenKind k : {ScreenKind::Q, ScreenKind::Qtilde}) {
        long cur;
        try {
            cur = screening_current(k);
        } catch (const GeneratorAbsentError&) {
            continue;
        }
        if (!(space_.weight(cur) == Rational(1)))
            throw CalibrationError("screening current " + space_.name(cur) + " does not have weight 1");
        if (!apply_l(1, space_.basis_vec(cur)).is_zero())
            throw CalibrationError("L(1) does not annihilate " + space_.name(cur));
    }
}

std::vector<std::tuple<long, long, long>> Algebra::sample_triples(long seed, long max_triples) const {
    std::vector<std::tuple<long, long, long>> out;
    const long d = space_.dim();
    if (d * d * d <= max_triples) {
        out.reserve(static_cast<size_t>(d) * d * d);
        for (long a = 0; a < d; ++a)
            for (long b = 0; b < d; ++b)
                for (long c = 0; c < d; ++c) out.emplace_back(a, b, c);
        return out;
    }
    std::mt19937_64 eng(static_cast<unsigned long long>(seed));
    out.reserve(static_cast<size_t>(max_triples));
    for (long i = 0; i < max_triples; ++i) {
        long a = static_cast<long>(eng() % static_cast<unsigned long long>(d));
        long b = static_cast<long>(eng() % static_cast<unsigned long long>(d));
        long c = static_cast<long>(eng() % static_cast<unsigned long long>(d));
        out.emplace_back(a, b, c);
    }
    return out;
}

AxiomReport Algebra::check_identity() {
    AxiomReport r("identity", "all basis vectors");
    for (long idx = 0; idx < space_.dim(); ++idx) {
        auto s = engine_.vertex_series(vacuum_, idx);
        auto expected = LogSeries<Vec>::monomial(Rational(0), 0, space_.basis_vec(idx));
        MatchResult m = match_in_window(s, expected, "Y(1,x)" + space_.name(idx));
        absorb_match(r, m);
    }
    return r;
}

AxiomReport Algebra::check_creation() {
    AxiomReport r("creation", "all basis vectors");
    for (long idx = 0; idx < space_.dim(); ++idx) {
        auto s = engine_.vertex_series(idx, vacuum_);
        for (const auto& [key, c] : s.terms()) {
            if (key.x_exponent < Rational(0))
                r.fail_with("Y(" + space_.name(idx) + ",x)1 has a pole at exponent " + key.x_exponent.str());
            if (key.log_power != 0)
                r.fail_with("Y(" + space_.name(idx) + ",x)1 has a log term");
        }
        MatchResult m0;
        match_coeff(s.coefficient(Rational(0)), space_.basis_vec(idx), m0,
                    "x^0 of Y(" + space_.name(idx) + ",x)1");
        absorb_match(r, m0);
        if (space_.weight(idx) + Rational(1) <= space_.cutoff()) {
            MatchResult m1;
            match_coeff(s.coefficient(Rational(1)), apply_l(-1, space_.basis_vec(idx)), m1,
                        "x^1 of Y(" + space_.name(idx) + ",x)1 against L(-1)");
            absorb_match(r, m1);
        }
    }
    return r;
}

AxiomReport Algebra::check_translation() {
    AxiomReport r("translation", "d/dx Y(u,x)v = Y(L(-1)u,x)v");
    long skipped = 0;
    for (long u = 0; u < space_.dim(); ++u) {
        if (space_.weight(u) + Rational(1) > space_.cutoff()) {
            ++skipped;
            continue;
        }
        Vec du = apply_l(-1, space_.basis_vec(u));
        for (long v = 0; v < space_.dim(); ++v) {
            auto lhs = engine_.vertex_series(u, v).ddx();
            auto rhs = engine_.vertex_series(du, space_.basis_vec(v));
            MatchResult m = match_in_window(lhs, rhs, "u=" + space_.name(u) + " v=" + space_.name(v));
            absorb_match(r, m);
        }
    }
    r.data["u_skipped_at_cutoff"] = std::to_string(skipped);
    return r;
}

AxiomReport Algebra::check_skew_symmetry() {
    AxiomReport r("skew-symmetry", "all pairs, all materialized modes");
    const Rational F = space_.global_floor();
    const Rational W = space_.cutoff();
    for (long u = 0; u < space_.dim(); ++u) {
        for (long v = 0; v < space_.dim(); ++v) {
            Rational s = space_.weight(u) + space_.weight(v) - Rational(1);
            for (long n = ceil_long(s - W); n <= floor_long(s - F); ++n) {
                Vec lhs = engine_.mode_basis(u, n, v);
                Vec rhs;
                long jmax = floor_long(s - Rational(n) - F);
                for (long j = 0; j <= jmax; ++j) {
                    Vec t = engine_.mode_basis(v, n + j, u);
                    for (long i = 0; i < j; ++i) t = apply_l(-1, t);
                    Rational coeff = Rational(1) / Rational(BigInt(factorial(j)));
                    if ((n + j + 1) % 2 != 0) coeff = -coeff;
                    rhs += t.scaled(Scalar(coeff));
                }
                MatchResult m;
                match_coeff(lhs, rhs, m,
                            "Y_" + std::to_string(n) + "(" + space_.name(u) + ")" + space_.name(v));
                absorb_match(r, m);
            }
        }
    }
    return r;
}

AxiomReport Algebra::check_commutator_formula(long seed, long max_triples) {
    AxiomReport r("commutator-formula",
                  "[Y_a(u),Y_b(v)]w against iterates, certified mode boxes");
    const Rational F = space_.global_floor();
    const Rational W = space_.cutoff();
    auto triples = sample_triples(seed, max_triples);
    long skipped = 0;
    for (auto [u, v, w] : triples) {
        Rational wu = space_.weight(u), wv = space_.weight(v), ww = space_.weight(w);
        if (wu + wv - Rational(1) > W) {
            ++skipped;
            continue;
        }
        Vec uvec = space_.basis_vec(u), vvec = space_.basis_vec(v);
        Rational S = wu + wv + ww;
        long a_lo = ceil_long(wu + ww - Rational(1) - W);
        long b_lo = ceil_long(wv + ww - Rational(1) - W);
        long ab_hi = floor_long(S - Rational(2) - F);
        long kmax = floor_long(wu + wv - Rational(1) - F);
        for (long a = a_lo; a + b_lo <= ab_hi; ++a) {
            for (long b = std::max(b_lo, ceil_long(S - Rational(2) - W) - a); a + b <= ab_hi; ++b) {
                Vec lhs = engine_.mode(uvec, Rational(a), engine_.mode_basis(v, b, w));
                Vec tmp = engine_.mode(vvec, Rational(b), engine_.mode_basis(u, a, w));
                lhs += tmp.scaled(Scalar(Rational(-1)));
                Vec rhs;
                for (long k = 0; k <= kmax; ++k) {
                    Rational bin = binomial(Rational(a), k);
                    if (bin.is_zero()) continue;
                    Vec inner = engine_.mode_basis(u, k, v);
                    if (inner.is_zero()) continue;
                    Vec t = engine_.mode(inner, Rational(a + b - k), space_.basis_vec(w));
                    rhs += t.scaled(Scalar(bin));
                }
                MatchResult m;
                match_coeff(lhs, rhs, m,
                            "(a,b)=(" + std::to_string(a) + "," + std::to_string(b) + ") u=" +
                                space_.name(u) + " v=" + space_.name(v) + " w=" + space_.name(w));
                absorb_match(r, m);
            }
        }
    }
    r.data["triples_swept"] = std::to_string(static_cast<long>(triples.size()) - skipped);
    r.data["triples_outside_window"] = std::to_string(skipped);
    if (static_cast<long>(space_.dim()) * space_.dim() * space_.dim() > max_triples)
        r.data["sampled_seed"] = std::to_string(seed);
    return r;
}

AxiomReport Algebra::check_weak_commutativity(long n_max) {
    AxiomReport r("weak-commutativity",
                  "least N with (x1-x2)^N [Y(u,x1),Y(v,x2)] = 0 in the certified box");
    const Rational F = space_.global_floor();
    const Rational W = space_.cutoff();
    long n_worst = 0;
    for (long u = 0; u < space_.dim(); ++u) {
        for (long v = 0; v < space_.dim(); ++v) {
            Rational wu = space_.weight(u), wv = space_.weight(v);
            Vec uvec = space_.basis_vec(u), vvec = space_.basis_vec(v);
            long found = -1;
            long found_compared = 0;
            for (long N = 0; N <= n_max && found < 0; ++N) {
                bool ok = true;
                long compared = 0;
                for (long w = 0; w < space_.dim() && ok; ++w) {
                    Rational ww = space_.weight(w);
                    Rational S = wu + wv + ww;
                    long a_lo = ceil_long(wu + ww - Rational(1) - W);
                    long b_lo = ceil_long(wv + ww - Rational(1) - W);
                    long ab_hi = floor_long(S - Rational(N) - Rational(2) - F);
                    for (long a = a_lo; a + b_lo <= ab_hi && ok; ++a) {
                        for (long b = std::max(b_lo, ceil_long(S - Rational(N) - Rational(2) - W) - a);
                             a + b <= ab_hi && ok; ++b) {
                            Vec acc;
                            for (long i = 0; i <= N; ++i) {
                                Rational bin = binomial(Rational(N), i);
                                if (i % 2 != 0) bin = -bin;
                                Vec term =
                                    engine_.mode(uvec, Rational(a + N - i), engine_.mode_basis(v, b + i, w));
                                Vec other =
                                    engine_.mode(vvec, Rational(b + i), engine_.mode_basis(u, a + N - i, w));
                                term += other.scaled(Scalar(Rational(-1)));
                                acc += term.scaled(Scalar(bin));
                            }
                            ++compared;
                            if (!acc.is_zero()) ok = false;
                        }
                    }
                }
                if (ok) {
                    found = N;
                    found_compared = compared;
                }
            }
            if (found < 0) {
                r.fail_with("no N <= " + std::to_string(n_max) + " for u=" + space_.name(u) +
                            " v=" + space_.name(v));
            } else {
                r.compared += found_compared;
                n_worst = std::max(n_worst, found);
                r.data["N(" + space_.name(u) + "|" + space_.name(v) + ")"] = std::to_string(found);
            }
        }
    }
    r.data["N_max_observed"] = std::to_string(n_worst);
    return r;
}

AxiomReport Algebra::check_weak_associativity(long seed, long max_triples) {
    AxiomReport r("weak-associativity",
                  "(x0+x2)^M Y(u,x0+x2)Y(v,x2)w against the iterate, certified boxes");
    const Rational F = space_.global_floor();
    const Rational W = space_.cutoff();
    auto triples = sample_triples(seed, max_triples);
    long m_worst = 0;
    for (auto [u, v, w] : triples) {
        Rational wu = space_.weight(u), wv = space_.weight(v), ww = space_.weight(w);
        Vec uvec = space_.basis_vec(u);
        long M = std::max<long>(0, ceil_long(wu + ww - F));
        m_worst = std::max(m_worst, M);
        Rational S = wu + wv + ww;
        long a_lo = ceil_long(F - wu - wv), a_hi = floor_long(W - wu - wv);
        long b_lo = ceil_long(F - wv - ww), b_hi = floor_long(W - wv - ww);
        for (long A = a_lo; A <= a_hi; ++A) {
            for (long B = b_lo; B <= b_hi; ++B) {
                Rational fin = S + Rational(A + B - M);
                if (fin < F || fin > W) continue;
                Vec lhs;
                long l_hi = std::min(M, floor_long(Rational(A) + wu + wv - F));
                for (long l = 0; l <= l_hi; ++l) {
                    Rational bin = binomial(Rational(M), l);
                    if (bin.is_zero()) continue;
                    Vec inner = engine_.mode_basis(u, l - A - 1, v);
                    if (inner.is_zero()) continue;
                    Vec t = engine_.mode(inner, Rational(M - l - B - 1), space_.basis_vec(w));
                    lhs += t.scaled(Scalar(bin));
                }
                Vec rhs;
                long j_hi = floor_long(Rational(B) + wv + ww - F);
                for (long j = 0; j <= j_hi; ++j) {
                    Vec inner = engine_.mode_basis(v, j - B - 1, w);
                    if (inner.is_zero()) continue;
                    long n = M - j - A - 1;
                    Rational coeff(0);
                    for (long l = 0; l <= std::min(j, M); ++l)
                        coeff += binomial(Rational(M), l) * binomial(Rational(-n - 1), j - l);
                    if (coeff.is_zero()) continue;
                    Vec t = engine_.mode(uvec, Rational(n), inner);
                    rhs += t.scaled(Scalar(coeff));
                }
                MatchResult m;
                match_coeff(lhs, rhs, m,
                            "(A,B)=(" + std::to_string(A) + "," + std::to_string(B) + ") u=" +
                                space_.name(u) + " v=" + space_.name(v) + " w=" + space_.name(w) +
                                " M=" + std::to_string(M));
                absorb_match(r, m);
            }
        }
    }
    r.data["M_max"] = std::to_string(m_worst);
    r.data["triples_swept"] = std::to_string(triples.size());
    if (static_cast<long>(space_.dim()) * space_.dim() * space_.dim() > max_triples)
        r.data["sampled_seed"] = std::to_string(seed);
    return r;
}

AxiomReport Algebra::check_virasoro_bracket() {
    AxiomReport r("virasoro-bracket",
                  "[L(m),L(n)] = (m-n)L(m+n) + c/12 (m^3-m) delta on certified blocks");
    Rational c = central_charge();
    r.data["central_charge"] = c.str();
    const long R = floor_long(space_.cutoff()) + 1;
    auto identity = GradedOperator::from_action(space_, Rational(0),
                                                [&](long idx) { return space_.basis_vec(idx); });
    for (long m = -R; m <= R; ++m) {
        for (long n = -R; n <= R; ++n) {
            GradedOperator lhs = virasoro(m).compose(virasoro(n));
            GradedOperator rl = virasoro(n).compose(virasoro(m));
            rl.scale(Scalar(Rational(-1)));
            lhs += rl;
            GradedOperator rhs = virasoro(m + n);
            rhs.scale(Scalar(Rational(m - n)));
            if (m + n == 0) {
                GradedOperator central = identity;
                central.scale(Scalar(c * Rational(m * m * m - m) / Rational(12)));
                rhs += central;
            }
            for (const auto& [h, blk] : lhs.blocks) {
                auto it = rhs.blocks.find(h);
                if (it == rhs.blocks.end()) {
                    r.fail_with("missing target block at weight " + h.str());
                    continue;
                }
                ++r.compared;
                if (!(blk == it->second))
                    r.fail_with("[L(" + std::to_string(m) + "),L(" + std::to_string(n) +
                                ")] mismatch on block " + h.str());
            }
        }
    }
    return r;
}

}  // namespace voacert
