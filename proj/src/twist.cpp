#include "voacert/twist.hpp"

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

/** Shift a series by x^d (log x)^bump. */
LogSeries<Vec> shifted_log(const LogSeries<Vec>& s, const Rational& d, long bump) {
    LogSeries<Vec> out{s.window().shifted(d)};
    for (const auto& [key, c] : s.terms()) out.add_term(key.x_exponent + d, key.log_power + bump, c);
    return out;
}

std::string matrix_str(const ScalarMatrix& m) {
    std::ostringstream out;
    out << "[";
    for (long i = 0; i < m.rows(); ++i) {
        if (i) out << "; ";
        for (long j = 0; j < m.cols(); ++j) {
            if (j) out << ", ";
            out << m(i, j).str();
        }
    }
    out << "]";
    return out.str();
}

}  // namespace

TwistSpec parse_twist(const std::string& name) {
    TwistSpec s;
    if (name == "none") return s;
    if (name == "Q-screen") {
        s.kind = TwistSpec::Kind::QScreen;
        return s;
    }
    if (name == "Qtilde-screen") {
        s.kind = TwistSpec::Kind::QtildeScreen;
        return s;
    }
    if (name.rfind("heisenberg(", 0) == 0 && name.size() > 12 && name.back() == ')') {
        s.kind = TwistSpec::Kind::Heisenberg;
        s.coeff = Rational::parse(name.substr(11, name.size() - 12));
        return s;
    }
    throw UsageError("unknown twist '" + name +
                     "' (expected none, Q-screen, Qtilde-screen, heisenberg(<rational>))");
}

std::string twist_name(const TwistSpec& spec) {
    switch (spec.kind) {
        case TwistSpec::Kind::None: return "none";
        case TwistSpec::Kind::QScreen: return "Q-screen";
        case TwistSpec::Kind::QtildeScreen: return "Qtilde-screen";
        case TwistSpec::Kind::Heisenberg: return "heisenberg(" + spec.coeff.str() + ")";
    }
    return "?";
}

Twist Twist::make(Algebra& alg, const TwistSpec& spec) {
    Vec u;
    switch (spec.kind) {
        case TwistSpec::Kind::None:
            break;
        case TwistSpec::Kind::QScreen:
            u = alg.space().basis_vec(alg.screening_current(ScreenKind::Q));
            break;
        case TwistSpec::Kind::QtildeScreen:
            u = alg.space().basis_vec(alg.screening_current(ScreenKind::Qtilde));
            break;
        case TwistSpec::Kind::Heisenberg: {
            auto idx = alg.space().find(FockBasisElement{{1}, 0, 0});
            if (!idx) throw UsageError("heisenberg twist needs gamma(-1) materialized");
            u = alg.space().basis_vec(*idx).scaled(Scalar(spec.coeff));
            break;
        }
    }
    return Twist(alg, std::move(u), twist_name(spec));
}

Twist::Twist(Algebra& alg, Vec u, std::string label)
    : alg_(alg), label_(std::move(label)), u_(std::move(u)) {
    const FockSpace& sp = alg_.space();
    if (!u_.is_zero()) {
        auto w = weight_of(sp, u_);
        if (!w || !(*w == Rational(1)))
            throw UsageError("twist vector must be homogeneous of weight 1");
        if (!alg_.apply_l(1, u_).is_zero())
            throw UsageError("twist vector must satisfy L(1)u = 0");
        if (!alg_.engine().mode(u_, Rational(0), u_).is_zero())
            throw UsageError("twist vector must satisfy Y_0(u)u = 0");
        Vec m1 = alg_.engine().mode(u_, Rational(1), u_);
        for (const auto& [i, c] : m1.entries)
            if (i != alg_.vacuum_index())
                throw NotProportionalError("Y_1(u)u is not a vacuum multiple: " + m1.str());
        Scalar mc = m1.coeff(alg_.vacuum_index());
        if (!mc.is_rational())
            throw NotProportionalError("Y_1(u)u has a non-rational vacuum coefficient");
        mu_ = mc.rational_value();
    }

    y0_ = alg_.mode_operator(u_, 0);
    std::vector<Rational> seen;
    for (const auto& [h, blk] : y0_.blocks) {
        RatMatrix rm = to_rational_matrix(blk);
        JordanChevalley jc = jordan_chevalley(rm);
        lambda_ = std::max(lambda_, nilpotency_index(to_scalar_matrix(jc.nilpotent)));
        for (const auto& [ev, mult] : jc.eigenvalues) seen.push_back(ev);
        spectral_.emplace(h, std::move(jc));
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    spectrum_ = std::move(seen);

    finite_order_ = lambda_ == 1;
    BigInt l(1);
    for (const auto& a : spectrum_) l = boost::multiprecision::lcm(l, a.den());
    order_ = l.convert_to<long>();
}

long Twist::order() const {
    if (!finite_order_)
        throw RequiresFiniteOrderError("the zero mode of " + label_ +
                                       " has a nilpotent part, so g has infinite order");
    return order_;
}

const JordanChevalley& Twist::block_jc(const Rational& h) const {
    auto it = spectral_.find(h);
    if (it == spectral_.end()) throw Error("no spectral data for block " + h.str());
    return it->second;
}

Vec Twist::apply_g(const Vec& v, long power) {
    const FockSpace& sp = alg_.space();
    Vec out;
    for (const auto& [idx, c] : v.entries) {
        const Rational& h = sp.weight(idx);
        const auto& jc = block_jc(h);
        const auto& rows = sp.blocks().at(h);
        long col = sp.offset_in_block(idx);
        for (size_t t = 0; t < jc.eigenvalues.size(); ++t) {
            std::vector<Rational> pcol(rows.size());
            bool nonzero = false;
            for (size_t r = 0; r < rows.size(); ++r) {
                pcol[r] = jc.projectors[t](static_cast<long>(r), col);
                if (!pcol[r].is_zero()) nonzero = true;
            }
            if (!nonzero) continue;
            Scalar phase = Scalar::root_of_unity(jc.eigenvalues[t].first * Rational(power));
            auto logs = nilpotent_log_powers(jc.nilpotent, pcol);
            for (size_t i = 0; i < logs.size(); ++i) {
                Scalar f = phase * c;
                if (i > 0) f = f * Scalar::tau(static_cast<long>(i)) *
                               Scalar(Rational(power).pow(static_cast<long>(i)));
                for (size_t r = 0; r < rows.size(); ++r)
                    if (!logs[i][r].is_zero()) out.add(rows[r], f * Scalar(logs[i][r]));
            }
        }
    }
    return out;
}

Vec Twist::apply_semisimple(const Vec& v) {
    const FockSpace& sp = alg_.space();
    Vec out;
    for (const auto& [idx, c] : v.entries) {
        const auto& jc = block_jc(sp.weight(idx));
        const auto& rows = sp.blocks().at(sp.weight(idx));
        long col = sp.offset_in_block(idx);
        for (size_t r = 0; r < rows.size(); ++r) {
            const Rational& e = jc.semisimple(static_cast<long>(r), col);
            if (!e.is_zero()) out.add(rows[r], c * Scalar(e));
        }
    }
    return out;
}

Vec Twist::apply_nilpotent(const Vec& v) {
    const FockSpace& sp = alg_.space();
    Vec out;
    for (const auto& [idx, c] : v.entries) {
        const auto& jc = block_jc(sp.weight(idx));
        const auto& rows = sp.blocks().at(sp.weight(idx));
        long col = sp.offset_in_block(idx);
        for (size_t r = 0; r < rows.size(); ++r) {
            const Rational& e = jc.nilpotent(static_cast<long>(r), col);
            if (!e.is_zero()) out.add(rows[r], c * Scalar(e));
        }
    }
    return out;
}

std::vector<std::pair<Rational, Vec>> Twist::eigen_split(const Vec& v) const {
    const FockSpace& sp = alg_.space();
    std::map<Rational, Vec> acc;
    for (const auto& [idx, c] : v.entries) {
        const auto& jc = block_jc(sp.weight(idx));
        const auto& rows = sp.blocks().at(sp.weight(idx));
        long col = sp.offset_in_block(idx);
        for (size_t t = 0; t < jc.eigenvalues.size(); ++t) {
            for (size_t r = 0; r < rows.size(); ++r) {
                const Rational& e = jc.projectors[t](static_cast<long>(r), col);
                if (!e.is_zero()) acc[jc.eigenvalues[t].first].add(rows[r], c * Scalar(e));
            }
        }
    }
    std::vector<std::pair<Rational, Vec>> out;
    for (auto& [a, vec] : acc)
        if (!vec.is_zero()) out.emplace_back(a, std::move(vec));
    return out;
}

Vec Twist::project_mod1(const Rational& b, const Vec& v) {
    long k = order();
    Vec out;
    for (long j = 0; j < k; ++j)
        out += apply_g(v, j).scaled(Scalar::root_of_unity(-Rational(j) * b));
    out.scale(Scalar(Rational(1, k)));
    return out;
}

std::optional<Rational> Twist::eigen_alpha(long idx) const {
    const FockSpace& sp = alg_.space();
    const auto& jc = block_jc(sp.weight(idx));
    const auto& rows = sp.blocks().at(sp.weight(idx));
    long col = sp.offset_in_block(idx);
    std::optional<Rational> found;
    for (size_t t = 0; t < jc.eigenvalues.size(); ++t) {
        for (size_t r = 0; r < rows.size(); ++r) {
            if (!jc.projectors[t](static_cast<long>(r), col).is_zero()) {
                if (found) return std::nullopt;
                found = jc.eigenvalues[t].first;
                break;
            }
        }
    }
    return found;
}

LogSeries<Vec> Twist::phi_apply(const LogSeries<Vec>& s) {
    LogSeries<Vec> out;
    long n_max = floor_long(alg_.cutoff() - alg_.space().global_floor());
    for (const auto& [key, c] : s.terms()) {
        for (long n = 1; n <= n_max; ++n) {
            Vec t = alg_.engine().mode(u_, Rational(n), c);
            if (t.is_zero()) continue;
            Rational cn(1, n);
            if (n % 2 == 0) cn = -cn;
            out.add_term(key.x_exponent - Rational(n), key.log_power, t.scaled(Scalar(cn)));
        }
    }
    return out;
}

const LogSeries<Vec>& Twist::delta_basis(long idx) {
    auto it = delta_cache_.find(idx);
    if (it != delta_cache_.end()) return it->second;

    LogSeries<Vec> acc = LogSeries<Vec>::monomial(Rational(0), 0, alg_.space().basis_vec(idx));
    LogSeries<Vec> cur = acc;
    for (long j = 1;; ++j) {
        cur = phi_apply(cur);
        cur.scale(Rational(1, j));
        if (cur.is_zero()) break;
        acc += cur;
    }

    LogSeries<Vec> out;
    const FockSpace& sp = alg_.space();
    for (const auto& [key, c] : acc.terms()) {
        for (const auto& [cidx, coeff] : c.entries) {
            const auto& jc = block_jc(sp.weight(cidx));
            const auto& rows = sp.blocks().at(sp.weight(cidx));
            long col = sp.offset_in_block(cidx);
            for (size_t t = 0; t < jc.eigenvalues.size(); ++t) {
                std::vector<Rational> pcol(rows.size());
                bool nonzero = false;
                for (size_t r = 0; r < rows.size(); ++r) {
                    pcol[r] = jc.projectors[t](static_cast<long>(r), col);
                    if (!pcol[r].is_zero()) nonzero = true;
                }
                if (!nonzero) continue;
                const Rational& alpha = jc.eigenvalues[t].first;
                auto logs = nilpotent_log_powers(jc.nilpotent, pcol);
                for (size_t i = 0; i < logs.size(); ++i) {
                    Vec piece;
                    for (size_t r = 0; r < rows.size(); ++r)
                        if (!logs[i][r].is_zero()) piece.add(rows[r], coeff * Scalar(logs[i][r]));
                    if (!piece.is_zero())
                        out.add_term(key.x_exponent + alpha, key.log_power + static_cast<long>(i),
                                     piece);
                }
            }
        }
    }
    return delta_cache_.emplace(idx, std::move(out)).first->second;
}

LogSeries<Vec> Twist::delta_apply(const Vec& v) {
    LogSeries<Vec> out;
    for (const auto& [idx, c] : v.entries) {
        LogSeries<Vec> piece = delta_basis(idx);
        piece.scale(c);
        out += piece;
    }
    return out;
}

const LogSeries<Vec>& Twist::twisted_vertex_basis(long v_idx, long w_idx) {
    auto key = std::make_pair(v_idx, w_idx);
    auto it = tv_cache_.find(key);
    if (it != tv_cache_.end()) return it->second;

    LogSeries<Vec> out;
    Vec wv = alg_.space().basis_vec(w_idx);
    const auto& dv = delta_basis(v_idx);
    for (const auto& [k, xi] : dv.terms()) {
        LogSeries<Vec> s = alg_.engine().vertex_series(xi, wv);
        out += shifted_log(s, k.x_exponent, k.log_power);
    }
    return tv_cache_.emplace(key, std::move(out)).first->second;
}

LogSeries<Vec> Twist::twisted_vertex(const Vec& v, const Vec& w) {
    LogSeries<Vec> out;
    for (const auto& [i, ci] : v.entries) {
        for (const auto& [j, cj] : w.entries) {
            LogSeries<Vec> piece = twisted_vertex_basis(i, j);
            piece.scale(ci * cj);
            out += piece;
        }
    }
    return out;
}

std::optional<Vec> Twist::twisted_mode(const Vec& v, const Rational& n, const Vec& w) {
    Rational e = -n - Rational(1);
    Vec out;
    for (const auto& [i, ci] : v.entries) {
        for (const auto& [j, cj] : w.entries) {
            const auto& s = twisted_vertex_basis(i, j);
            if (!s.window().certified(e)) return std::nullopt;
            if (s.max_log_power() > 0)
                throw RequiresFiniteOrderError("twisted modes are only scalars for log-free twists");
            out += s.coefficient(e).scaled(ci * cj);
        }
    }
    return out;
}

Rational Twist::new_weight(long idx) const {
    auto a = eigen_alpha(idx);
    if (!a) throw Error("basis vector " + alg_.space().name(idx) + " mixes eigencomponents");
    return alg_.space().weight(idx) + *a + mu_ / Rational(2);
}

std::map<Rational, long> Twist::twisted_dims(Rational& depth_out) const {
    Rational amin = spectrum_.empty() ? Rational(0) : spectrum_.front();
    depth_out = alg_.cutoff() + amin + mu_ / Rational(2);
    std::map<Rational, long> dims;
    for (const auto& [h, jc] : spectral_) {
        for (const auto& [a, mult] : jc.eigenvalues) {
            Rational n = h + a + mu_ / Rational(2);
            if (n <= depth_out) dims[n] += mult;
        }
    }
    return dims;
}

using Nested = LogSeries<LogSeries<Vec>>;

AxiomReport Twist::check_delta_commutator() {
    AxiomReport r("delta-commutator",
                  "[Phi(x1),Y(v,x2)]w = Y(Phi(x1+x2)v,x2)w + log(1+x2/x1)Y(Y_0(u)v,x2)w");
    const FockSpace& sp = alg_.space();
    const Rational F = sp.global_floor();
    for (long v = 0; v < sp.dim(); ++v) {
        Vec vvec = sp.basis_vec(v);
        Vec y0v = alg_.engine().mode(u_, Rational(0), vvec);
        long n_max_v = floor_long(sp.weight(v) - F);
        for (long w = 0; w < sp.dim(); ++w) {
            auto s_vw = alg_.engine().vertex_series(v, w);
            Vec wvec = sp.basis_vec(w);
            Rational cap = *s_vw.window().hi;

            Nested lhs{s_vw.window()};
            for (const auto& [key, c] : s_vw.terms())
                lhs.add_term(key, phi_apply(LogSeries<Vec>::monomial(Rational(0), 0, c)));
            long n_max_w = floor_long(sp.weight(w) - F);
            for (long n = 1; n <= n_max_w; ++n) {
                Vec ynw = alg_.engine().mode(u_, Rational(n), wvec);
                if (ynw.is_zero()) continue;
                Rational cn(1, n);
                if (n % 2 == 0) cn = -cn;
                auto ser = alg_.engine().vertex_series(vvec, ynw);
                for (const auto& [k2, c2] : ser.terms())
                    lhs.add_term(k2.x_exponent, 0,
                                 LogSeries<Vec>::monomial(Rational(-n), 0, c2.scaled(Scalar(-cn))));
            }

            Nested rhs{s_vw.window()};
            for (long n = 1; n <= n_max_v; ++n) {
                Vec ynv = alg_.engine().mode(u_, Rational(n), vvec);
                if (ynv.is_zero()) continue;
                Rational cn(1, n);
                if (n % 2 == 0) cn = -cn;
                auto ser = alg_.engine().vertex_series(ynv, wvec);
                long i_cap = floor_long(cap - ser.window().lo);
                for (long i = 0; i <= i_cap; ++i) {
                    Rational coef = cn * binomial(Rational(-n), i);
                    if (coef.is_zero()) continue;
                    for (const auto& [k2, c2] : ser.terms())
                        rhs.add_term(k2.x_exponent + Rational(i), 0,
                                     LogSeries<Vec>::monomial(Rational(-n - i), 0,
                                                              c2.scaled(Scalar(coef))));
                }
            }
            if (!y0v.is_zero()) {
                auto ser = alg_.engine().vertex_series(y0v, wvec);
                long l_cap = floor_long(cap - ser.window().lo);
                for (long l = 1; l <= l_cap; ++l) {
                    Rational coef(1, l);
                    if (l % 2 == 0) coef = -coef;
                    for (const auto& [k2, c2] : ser.terms())
                        rhs.add_term(k2.x_exponent + Rational(l), 0,
                                     LogSeries<Vec>::monomial(Rational(-l), 0,
                                                              c2.scaled(Scalar(coef))));
                }
            }
            MatchResult m =
                match_in_window(lhs, rhs, "v=" + sp.name(v) + " w=" + sp.name(w) + " @ x2^");
            absorb_match(r, m);
        }
    }
    return r;
}

AxiomReport Twist::check_phi_translation() {
    AxiomReport r("phi-translation", "[L(-1),Phi(x)]w = -Phi'(x)w - x^{-1} Y_0(u)w");
    const FockSpace& sp = alg_.space();
    long skipped = 0;
    for (long w = 0; w < sp.dim(); ++w) {
        if (sp.weight(w) + Rational(1) > alg_.cutoff()) {
            ++skipped;
            continue;
        }
        Vec wvec = sp.basis_vec(w);
        auto phiw = phi_apply(LogSeries<Vec>::monomial(Rational(0), 0, wvec));
        LogSeries<Vec> lhs;
        for (const auto& [key, c] : phiw.terms()) lhs.add_term(key, alg_.apply_l(-1, c));
        Vec lw = alg_.apply_l(-1, wvec);
        auto phi_lw = phi_apply(LogSeries<Vec>::monomial(Rational(0), 0, lw));
        phi_lw.scale(Rational(-1));
        lhs += phi_lw;

        LogSeries<Vec> rhs = phiw.ddx();
        rhs.scale(Rational(-1));
        Vec y0w = alg_.engine().mode(u_, Rational(0), wvec);
        if (!y0w.is_zero()) rhs.add_term(Rational(-1), 0, y0w.scaled(Scalar(Rational(-1))));
        MatchResult m = match_in_window(lhs, rhs, "w=" + sp.name(w));
        absorb_match(r, m);
    }
    r.data["w_skipped_at_cutoff"] = std::to_string(skipped);
    return r;
}

AxiomReport Twist::check_delta_associativity() {
    AxiomReport r("delta-associativity", "Delta(x)Y(v,x2)w = Y(Delta(x+x2)v,x2)Delta(x)w");
    const FockSpace& sp = alg_.space();
    const Rational F = sp.global_floor();
    long l_table = std::max<long>(1, floor_long(alg_.cutoff() - F));
    std::vector<std::vector<Rational>> d(static_cast<size_t>(lambda_));
    d[0] = {Rational(1)};
    for (long j = 1; j < lambda_; ++j) {
        d[j].assign(static_cast<size_t>(l_table) + 1, Rational(0));
        for (size_t a = 0; a < d[j - 1].size(); ++a) {
            if (d[j - 1][a].is_zero()) continue;
            for (long l = 1; a + static_cast<size_t>(l) < d[j].size(); ++l) {
                Rational cl(1, l);
                if (l % 2 == 0) cl = -cl;
                d[j][a + static_cast<size_t>(l)] += d[j - 1][a] * cl;
            }
        }
    }
    for (long v = 0; v < sp.dim(); ++v) {
        const auto dv = delta_basis(v);
        for (long w = 0; w < sp.dim(); ++w) {
            auto s = alg_.engine().vertex_series(v, w);
            Rational cap = *s.window().hi;

            Nested lhs{s.window()};
            for (const auto& [key, c] : s.terms()) lhs.add_term(key, delta_apply(c));

            Nested rhs{s.window()};
            const auto dw = delta_basis(w);
            for (const auto& [kv, xi] : dv.terms()) {
                for (const auto& [kw, eta] : dw.terms()) {
                    auto base = alg_.engine().vertex_series(xi, eta);
                    if (base.terms().empty()) continue;
                    long tcap = floor_long(cap - base.window().lo);
                    for (long i = 0; i <= tcap; ++i) {
                        Rational bi = binomial(kv.x_exponent, i);
                        if (bi.is_zero()) continue;
                        for (long j = 0; j <= kv.log_power; ++j) {
                            Rational bj = binomial(Rational(kv.log_power), j);
                            for (long L = j; i + L <= tcap; ++L) {
                                if (static_cast<size_t>(L) >= d[j].size()) break;
                                if (d[j][L].is_zero()) continue;
                                Rational coef = bi * bj * d[j][L];
                                long bump = kv.log_power - j + kw.log_power;
                                Rational xexp = kv.x_exponent - Rational(i + L) + kw.x_exponent;
                                for (const auto& [k2, c2] : base.terms())
                                    rhs.add_term(k2.x_exponent + Rational(i + L), 0,
                                                 LogSeries<Vec>::monomial(xexp, bump,
                                                                          c2.scaled(Scalar(coef))));
                                if (j == 0) break;
                            }
                        }
                    }
                }
            }
            MatchResult m =
                match_in_window(lhs, rhs, "v=" + sp.name(v) + " w=" + sp.name(w) + " @ x2^");
            absorb_match(r, m);
        }
    }
    return r;
}

AxiomReport Twist::check_delta_translation() {
    AxiomReport r("delta-translation", "[L(-1),Delta(x)]v = -(d/dx)Delta(x)v");
    const FockSpace& sp = alg_.space();
    long skipped = 0;
    for (long v = 0; v < sp.dim(); ++v) {
        if (sp.weight(v) + Rational(1) > alg_.cutoff()) {
            ++skipped;
            continue;
        }
        const auto& dv = delta_basis(v);
        LogSeries<Vec> lhs = map_certified(dv, [&](const Vec& c) -> std::optional<Vec> {
            auto [img, complete] = alg_.virasoro(-1).apply_partial(sp, c);
            if (!complete) return std::nullopt;
            return img;
        });
        auto d_lv = delta_apply(alg_.apply_l(-1, sp.basis_vec(v)));
        d_lv.scale(Rational(-1));
        lhs += d_lv;
        LogSeries<Vec> rhs = dv.ddx();
        rhs.scale(Rational(-1));
        MatchResult m = match_in_window(lhs, rhs, "v=" + sp.name(v));
        absorb_match(r, m);
    }
    r.data["v_skipped_at_cutoff"] = std::to_string(skipped);
    return r;
}

AxiomReport Twist::check_conformal_image() {
    AxiomReport r("conformal-image",
                  "Y^g(omega,x) has integer powers and no logs; its x^{-2} mode is "
                  "L(0)+Y_0(u)+mu/2; Delta(x)omega = omega + u x^{-1} + (mu/2) 1 x^{-2}");
    const FockSpace& sp = alg_.space();
    const Vec& om = alg_.conformal();
    for (long w = 0; w < sp.dim(); ++w) {
        auto s = twisted_vertex(om, sp.basis_vec(w));
        for (const auto& [key, c] : s.terms()) {
            ++r.compared;
            if (!key.x_exponent.is_integer())
                r.fail_with("Y^g(omega,x)" + sp.name(w) + " has exponent " + key.x_exponent.str());
            if (key.log_power != 0)
                r.fail_with("Y^g(omega,x)" + sp.name(w) + " has a log term");
        }
    }

    auto lu0 = GradedOperator::from_action(sp, Rational(0), [&](long idx) {
        auto s = twisted_vertex(om, sp.basis_vec(idx));
        return s.window().certified(Rational(-2)) ? s.coefficient(Rational(-2)) : Vec{};
    });
    Scalar half_mu(mu_ / Rational(2));
    for (const auto& [h, got] : lu0.blocks) {
        ScalarMatrix want = alg_.virasoro(0).blocks.at(h);
        want += y0_.blocks.at(h);
        ScalarMatrix id = ScalarMatrix::identity(want.rows());
        id.scale(half_mu);
        want += id;
        ++r.compared;
        if (!(got == want))
            r.fail_with("twisted L(0) disagrees with L(0)+Y_0(u)+mu/2 on block " + h.str());
        r.data["Lu0@" + h.str()] = matrix_str(got);
    }

    LogSeries<Vec> want_delta;
    want_delta.add_term(Rational(0), 0, om);
    if (!u_.is_zero()) want_delta.add_term(Rational(-1), 0, u_);
    Vec half_mu_vac = alg_.vacuum().scaled(half_mu);
    if (!half_mu_vac.is_zero()) want_delta.add_term(Rational(-2), 0, half_mu_vac);
    MatchResult m = match_in_window(delta_apply(om), want_delta, "Delta(x)omega");
    absorb_match(r, m);
    r.data["mu"] = mu_.str();
    return r;
}

AxiomReport Twist::check_twisted_identity() {
    AxiomReport r("twisted-identity", "Y^g(1,x) is the identity");
    const FockSpace& sp = alg_.space();
    for (long w = 0; w < sp.dim(); ++w) {
        auto expected = LogSeries<Vec>::monomial(Rational(0), 0, sp.basis_vec(w));
        MatchResult m = match_in_window(twisted_vertex_basis(alg_.vacuum_index(), w), expected,
                                        "Y^g(1,x)" + sp.name(w));
        absorb_match(r, m);
    }
    return r;
}

AxiomReport Twist::check_twisted_translation() {
    AxiomReport r("twisted-translation", "d/dx Y^g(v,x)w = Y^g(L(-1)v,x)w");
    const FockSpace& sp = alg_.space();
    long skipped = 0;
    for (long v = 0; v < sp.dim(); ++v) {
        if (sp.weight(v) + Rational(1) > alg_.cutoff()) {
            ++skipped;
            continue;
        }
        Vec dvec = alg_.apply_l(-1, sp.basis_vec(v));
        for (long w = 0; w < sp.dim(); ++w) {
            auto lhs = twisted_vertex_basis(v, w).ddx();
            auto rhs = twisted_vertex(dvec, sp.basis_vec(w));
            MatchResult m = match_in_window(lhs, rhs, "v=" + sp.name(v) + " w=" + sp.name(w));
            absorb_match(r, m);
        }
    }
    r.data["v_skipped_at_cutoff"] = std::to_string(skipped);
    return r;
}

AxiomReport Twist::check_equivariance() {
    AxiomReport r("equivariance", "Y^g(v,x)w after x -> e^{2 pi i} x equals Y^g(gv,x)w, tau-exact");
    const FockSpace& sp = alg_.space();
    for (long v = 0; v < sp.dim(); ++v) {
        Vec gv = apply_g(sp.basis_vec(v));
        for (long w = 0; w < sp.dim(); ++w) {
            auto lhs = twisted_vertex_basis(v, w).monodromy_substituted();
            auto rhs = twisted_vertex(gv, sp.basis_vec(w));
            MatchResult m = match_in_window(lhs, rhs, "v=" + sp.name(v) + " w=" + sp.name(w));
            absorb_match(r, m);
        }
    }
    return r;
}

AxiomReport Twist::check_log_structure() {
    AxiomReport r("log-structure",
                  "log degrees stay below the nilpotency index and the log-k slice of "
                  "Delta(x)v is the plain slice of Delta(x)(N^k v / k!)");
    const FockSpace& sp = alg_.space();
    auto slice = [](const LogSeries<Vec>& s, long k) {
        LogSeries<Vec> out;
        for (const auto& [key, c] : s.terms())
            if (key.log_power == k) out.add_term(key.x_exponent, 0, c);
        return out;
    };
    std::string delta_witness, vertex_witness;
    long max_seen = 0;
    for (long v = 0; v < sp.dim(); ++v) {
        const auto dv = delta_basis(v);
        long top = dv.max_log_power();
        max_seen = std::max(max_seen, top);
        if (top > lambda_ - 1)
            r.fail_with("Delta(x)" + sp.name(v) + " has log degree " + std::to_string(top));
        Vec nv = sp.basis_vec(v);
        Rational fact(1);
        for (long k = 1; k <= top; ++k) {
            nv = apply_nilpotent(nv);
            fact = fact * Rational(k);
            LogSeries<Vec> got = slice(dv, k);
            LogSeries<Vec> want = slice(delta_apply(nv.scaled(Scalar(Rational(1) / fact))), 0);
            MatchResult m = match_in_window(got, want,
                                            "log^" + std::to_string(k) + " of Delta " + sp.name(v));
            absorb_match(r, m);
        }
        if (delta_witness.empty() && top > 0) {
            for (const auto& [key, c] : dv.terms())
                if (key.log_power == 1) {
                    delta_witness = "Delta(x)" + sp.name(v) + " : x^(" + key.x_exponent.str() +
                                    ") log(x) coefficient " + c.str();
                    break;
                }
        }
    }
    for (long v = 0; v < sp.dim() && vertex_witness.empty(); ++v) {
        for (long w = 0; w < sp.dim() && vertex_witness.empty(); ++w) {
            const auto& s = twisted_vertex_basis(v, w);
            if (s.max_log_power() > lambda_ - 1)
                r.fail_with("Y^g(" + sp.name(v) + ",x)" + sp.name(w) + " exceeds the log bound");
            for (const auto& [key, c] : s.terms())
                if (key.log_power == 1) {
                    vertex_witness = "Y^g(" + sp.name(v) + ",x)" + sp.name(w) + " : x^(" +
                                     key.x_exponent.str() + ") log(x) coefficient " + c.str();
                    break;
                }
        }
    }
    if (lambda_ > 1) {
        if (delta_witness.empty() || vertex_witness.empty())
            r.fail_with("nilpotent twist produced no log terms");
        else {
            r.data["log_witness_delta"] = delta_witness;
            r.data["log_witness_vertex"] = vertex_witness;
        }
    }
    r.data["max_log_degree"] = std::to_string(max_seen);
    r.data["nilpotency_index"] = std::to_string(lambda_);
    return r;
}

AxiomReport Twist::check_grading() {
    AxiomReport r("grading", "regraded weights h + alpha + mu/2; mode degrees match; "
                             "dimension table restricted to the certified depth");
    const FockSpace& sp = alg_.space();
    Rational depth;
    auto dims = twisted_dims(depth);
    long total = 0;
    for (const auto& [h, jc] : spectral_)
        for (const auto& [a, mult] : jc.eigenvalues) total += mult;
    ++r.compared;
    if (total != sp.dim())
        r.fail_with("eigenvalue multiplicities sum to " + std::to_string(total) + ", expected " +
                    std::to_string(sp.dim()));
    for (const auto& [n, dcount] : dims) r.data["dim@" + n.str()] = std::to_string(dcount);
    r.data["depth"] = depth.str();

    Rational half_mu = mu_ / Rational(2);
    for (long v = 0; v < sp.dim(); ++v) {
        Rational wtv = sp.weight(v);
        Vec vvec = sp.basis_vec(v);
        for (long w = 0; w < sp.dim(); ++w) {
            for (const auto& [aw, wcomp] : eigen_split(sp.basis_vec(w))) {
                Rational nu_w = sp.weight(w) + aw + half_mu;
                auto s = twisted_vertex(vvec, wcomp);
                for (const auto& [key, xi] : s.terms()) {
                    Rational target = nu_w + wtv + key.x_exponent;
                    for (const auto& [ap, piece] : eigen_split(xi)) {
                        for (const auto& ent : piece.entries) {
                            long idx = ent.first;
                            ++r.compared;
                            if (!(sp.weight(idx) + ap + half_mu == target)) {
                                r.fail_with("Y^g(" + sp.name(v) + ",x)" + sp.name(w) + " at x^(" +
                                            key.x_exponent.str() + ") lands at weight " +
                                            (sp.weight(idx) + ap + half_mu).str() + ", expected " +
                                            target.str());
                            }
                        }
                    }
                }
            }
        }
    }
    return r;
}

AxiomReport Twist::check_twist_invariants() {
    AxiomReport r("twist-invariants",
                  "[Y_0(u),Y_n(u)] = 0, [L(-2),Y_m(u)] = -m Y_{m-2}(u), and "
                  "Y_m(u)omega = L(-2)Y_m(u)1 + m Y_{m-2}(u)1");
    const long R = u_.is_zero() ? -1 : floor_long(alg_.cutoff()) + 1;
    std::map<long, GradedOperator> modes;
    for (long n = -R - 2; n <= R; ++n) modes.emplace(n, alg_.mode_operator(u_, n));

    for (long n = -R; n <= R; ++n) {
        GradedOperator a = y0_.compose(modes.at(n));
        GradedOperator b = modes.at(n).compose(y0_);
        for (const auto& [h, blk] : a.blocks) {
            auto it = b.blocks.find(h);
            if (it == b.blocks.end()) continue;
            ++r.compared;
            if (!(blk == it->second))
                r.fail_with("[Y_0(u),Y_" + std::to_string(n) + "(u)] != 0 on block " + h.str());
        }
    }

    for (long m = -R; m <= R; ++m) {
        GradedOperator lhs = alg_.virasoro(-2).compose(modes.at(m));
        GradedOperator rl = modes.at(m).compose(alg_.virasoro(-2));
        rl.scale(Scalar(Rational(-1)));
        lhs += rl;
        GradedOperator rhs = modes.at(m - 2);
        rhs.scale(Scalar(Rational(-m)));
        for (const auto& [h, blk] : lhs.blocks) {
            auto it = rhs.blocks.find(h);
            if (it == rhs.blocks.end()) continue;
            ++r.compared;
            if (!(blk == it->second))
                r.fail_with("[L(-2),Y_" + std::to_string(m) + "(u)] mismatch on block " + h.str());
        }
    }

    Vec vac = alg_.vacuum();
    for (long m = std::max<long>(2 - floor_long(alg_.cutoff()), -2); m <= 3; ++m) {
        if (Rational(-m) > alg_.cutoff() || Rational(2 - m) > alg_.cutoff()) continue;
        Vec lhs = alg_.engine().mode(u_, Rational(m), alg_.conformal());
        Vec rhs = alg_.apply_l(-2, alg_.engine().mode(u_, Rational(m), vac));
        rhs += alg_.engine().mode(u_, Rational(m - 2), vac).scaled(Scalar(Rational(m)));
        MatchResult mm;
        match_coeff(lhs, rhs, mm, "Y_" + std::to_string(m) + "(u)omega");
        absorb_match(r, mm);
    }

    if (!u_.is_zero() && lambda_ > 1) {
        GradedOperator pw = y0_;
        for (long i = 1; i < lambda_; ++i) pw = pw.compose(y0_);
        ++r.compared;
        if (!pw.is_zero())
            r.fail_with("Y_0(u)^" + std::to_string(lambda_) + " is not zero");
    }
    r.data["mu"] = mu_.str();
    r.data["nilpotency_index"] = std::to_string(lambda_);
    r.data["order"] = finite_order_ ? std::to_string(order_) : std::string("infinite");
    {
        std::string spec;
        for (const auto& a : spectrum_) spec += (spec.empty() ? "" : ",") + a.str();
        r.data["spectrum"] = spec.empty() ? "0" : spec;
    }
    return r;
}

AxiomReport Twist::check_twisted_jacobi(long seed, long max_triples) {
    long k = order();
    AxiomReport r("twisted-jacobi", "two-sided twisted Jacobi identity on certified mode boxes, "
                                    "order " + std::to_string(k));
    const FockSpace& sp = alg_.space();
    const Rational F = sp.global_floor();
    const Rational W = alg_.cutoff();
    auto triples = alg_.sample_triples(seed, max_triples);
    long positions = 0, uncertified = 0;
    for (auto [uu, vv, ww] : triples) {
        Rational wtu = sp.weight(uu), wtv = sp.weight(vv);
        Vec uvec = sp.basis_vec(uu), vvec = sp.basis_vec(vv), wvec = sp.basis_vec(ww);
        const auto& s_vw = twisted_vertex_basis(vv, ww);
        const auto& s_uw = twisted_vertex_basis(uu, ww);
        if (!s_vw.window().hi || !s_uw.window().hi) continue;

        long a_lo = ceil_long(wtu + wtv - Rational(1) - W);
        long a_hi = floor_long(wtu + wtv - Rational(1) - F);
        long cn_lo = ceil_long(Rational(k) * (Rational(-1) - *s_vw.window().hi));
        long cn_hi = floor_long(Rational(k) * (Rational(-1) - s_vw.floor_lo()));
        long bn_lo = ceil_long(Rational(k) * (Rational(-1) - *s_uw.window().hi));
        long bn_hi = floor_long(Rational(k) * (Rational(-1) - s_uw.floor_lo()));

        for (long a = a_lo; a <= a_hi; ++a) {
            Vec pbu;
            for (long bn = bn_lo; bn <= bn_hi; ++bn) {
                Rational b(bn, k);
                pbu = project_mod1(b, uvec);
                for (long cn = cn_lo; cn <= cn_hi; ++cn) {
                    Rational c(cn, k);
                    bool ok = true;
                    Vec lhs;
                    for (long i = 0; ok; ++i) {
                        Rational bin = binomial(Rational(a), i);
                        Rational ci = c + Rational(i);
                        if (Rational(-1) - ci < s_vw.floor_lo() &&
                            Rational(-1) - (b + Rational(i)) < s_uw.floor_lo())
                            break;
                        if (!bin.is_zero()) {
                            auto inner = twisted_mode(vvec, ci, wvec);
                            if (!inner) { ok = false; break; }
                            if (!inner->is_zero()) {
                                auto outer = twisted_mode(uvec, Rational(a) + b - Rational(i), *inner);
                                if (!outer) { ok = false; break; }
                                Rational sgn = (i % 2 == 0) ? bin : -bin;
                                lhs += outer->scaled(Scalar(sgn));
                            }
                            auto inner2 = twisted_mode(uvec, b + Rational(i), wvec);
                            if (!inner2) { ok = false; break; }
                            if (!inner2->is_zero()) {
                                auto outer2 = twisted_mode(vvec, Rational(a) + c - Rational(i), *inner2);
                                if (!outer2) { ok = false; break; }
                                Rational sgn = (i % 2 == 0) ? bin : -bin;
                                if (a % 2 != 0) sgn = -sgn;
                                lhs += outer2->scaled(Scalar(-sgn));
                            }
                        }
                    }
                    if (!ok) { ++uncertified; continue; }
                    Vec rhs;
                    long i_hi = floor_long(wtu + wtv - Rational(1) - F) - a;
                    for (long i = 0; i <= i_hi && ok; ++i) {
                        Vec inner = alg_.engine().mode(pbu, Rational(a + i), vvec);
                        if (inner.is_zero()) continue;
                        Rational bin = binomial(Rational(i) - b - Rational(1), i);
                        if (bin.is_zero()) continue;
                        auto outer = twisted_mode(inner, b + c - Rational(i), wvec);
                        if (!outer) { ok = false; break; }
                        Rational sgn = (i % 2 == 0) ? bin : -bin;
                        rhs += outer->scaled(Scalar(sgn));
                    }
                    if (!ok) { ++uncertified; continue; }
                    ++positions;
                    ++r.compared;
                    if (!(lhs == rhs))
                        r.fail_with("(a,b,c)=(" + std::to_string(a) + "," + b.str() + "," + c.str() +
                                    ") u=" + sp.name(uu) + " v=" + sp.name(vv) + " w=" + sp.name(ww));
                }
            }
        }
    }
    r.data["positions_compared"] = std::to_string(positions);
    r.data["positions_uncertified"] = std::to_string(uncertified);
    r.data["triples_swept"] = std::to_string(triples.size());
    if (static_cast<long>(sp.dim()) * sp.dim() * sp.dim() > max_triples)
        r.data["sampled_seed"] = std::to_string(seed);
    return r;
}

AxiomReport Twist::check_monodromy_support() {
    long k = order();
    AxiomReport r("monodromy-support",
                  "mode support, per-term monodromy phase, and series equivariance agree "
                  "(order " + std::to_string(k) + ")");
    const FockSpace& sp = alg_.space();
    for (long v = 0; v < sp.dim(); ++v) {
        for (const auto& [av, vcomp] : eigen_split(sp.basis_vec(v))) {
            Scalar phase_v = Scalar::root_of_unity(av);
            for (long w = 0; w < sp.dim(); ++w) {
                auto s = twisted_vertex(vcomp, sp.basis_vec(w));
                for (const auto& [key, c] : s.terms()) {
                     if (key.log_power != 0) {
                        r.fail_with("log term in a finite-order twisted operator");
                        continue;
                    }
                    ++r.compared;
                    if (!(key.x_exponent - av).is_integer())
                        r.fail_with("support: x^(" + key.x_exponent.str() + ") in Y^g(" +
                                    sp.name(v) + ",x)" + sp.name(w) + " but alpha = " + av.str());
                    Scalar diff = Scalar::root_of_unity(key.x_exponent) - phase_v;
                    Vec scaled = c.scaled(diff);
                    ++r.compared;
                    if (!scaled.is_zero())
                        r.fail_with("termwise phase: (e^{2 pi i e} - e^{2 pi i alpha}) coeff != 0 "
                                    "at x^(" + key.x_exponent.str() + ")");
                }
                auto lhs = s.monodromy_substituted();
                auto rhs = s;
                rhs.scale(phase_v);
                MatchResult m = match_in_window(
                    lhs, rhs, "series equivariance v=" + sp.name(v) + " w=" + sp.name(w));
                absorb_match(r, m);
            }
        }
    }
    return r;
}

AxiomReport Twist::check_functorial_smoke() {
    AxiomReport r("functorial-smoke",
                  "scalar multiples of the identity intertwine the twisted operators");
    const FockSpace& sp = alg_.space();
    Scalar two(Rational(2));
    for (long v = 0; v < sp.dim(); ++v) {
        for (long w = 0; w < sp.dim(); ++w) {
            auto lhs = twisted_vertex(sp.basis_vec(v), sp.basis_vec(w).scaled(two));
            auto rhs = twisted_vertex_basis(v, w);
            rhs.scale(two);
            MatchResult m = match_in_window(lhs, rhs, "v=" + sp.name(v) + " w=" + sp.name(w));
            absorb_match(r, m);
        }
    }
    return r;
}

}  // namespace voacert
