#include "voacert/fock.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace voacert {

namespace {

/** Falling factorial m(m-1)...(m-k+1). */
BigInt falling(long m, long k) {
    BigInt out = 1;
    for (long i = 0; i < k; ++i) out *= BigInt(m - i);
    return out;
}

/** Derivative coefficient prod_{i=1}^{m-1}(-t-i) of the m-th Heisenberg descendant at mode t. */
Rational descendant_coeff(long m, long t) {
    BigInt out = 1;
    for (long i = 1; i <= m - 1; ++i) out *= BigInt(-t - i);
    return Rational(out);
}

uint64_t fnv1a(const std::string& s, uint64_t h) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::string Vec::str() const {
    if (entries.empty()) return "0";
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [i, c] : entries) {
        if (!first) os << ", ";
        first = false;
        os << i << ": " << c.str();
    }
    os << "}";
    return os.str();
}

FockSpace::FockSpace(LatticeShape shape, Rational cutoff)
    : shape_(std::move(shape)), cutoff_(std::move(cutoff)) {
    if (!(shape_.wt_quad > Rational(0)))
        throw CalibrationError("the lattice weight law must grow quadratically");

    std::map<Rational, std::vector<FockBasisElement>> by_weight;
    for (long tag = 0; tag < static_cast<long>(shape_.offsets.size()); ++tag) {
        // Walk the coset outward from the weight-law vertex in both directions.
        Rational vertex = -shape_.offsets[tag] - shape_.wt_lin / (shape_.wt_quad * Rational(2));
        long m0 = static_cast<long>(vertex.floor());
        for (int dir : {+1, -1}) {
            long m = dir > 0 ? m0 + 1 : m0;
            while (true) {
                Rational ptw = shape_.point_weight(Rational(m) + shape_.offsets[tag]);
                if (ptw > cutoff_) break;
                long budget = static_cast<long>((cutoff_ - ptw).floor());
                std::vector<long> parts;
                std::function<void(long, long)> gen = [&](long remaining, long max_part) {
                    if (remaining == 0) {
                        FockBasisElement e{parts, m, tag};
                        by_weight[ptw + Rational(e.heisenberg_weight())].push_back(e);
                        return;
                    }
                    for (long part = std::min(max_part, remaining); part >= 1; --part) {
                        parts.push_back(part);
                        gen(remaining - part, part);
                        parts.pop_back();
                    }
                };
                for (long total = 0; total <= budget; ++total) gen(total, total == 0 ? 1 : total);
                m += dir;
            }
        }
    }

    for (auto& [w, elems] : by_weight) {
        std::sort(elems.begin(), elems.end(), [](const FockBasisElement& a, const FockBasisElement& b) {
            return std::tie(a.tag, a.coset_m, a.modes) < std::tie(b.tag, b.coset_m, b.modes);
        });
        std::vector<long>& blk = blocks_[w];
        for (auto& e : elems) {
            long idx = static_cast<long>(elements_.size());
            index_.emplace(e, idx);
            elements_.push_back(std::move(e));
            weights_.push_back(w);
            offsets_.push_back(static_cast<long>(blk.size()));
            blk.push_back(idx);
        }
    }
}

long FockSpace::index_of(const FockBasisElement& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw Error("FockSpace: basis element outside the materialized range");
    return it->second;
}

std::optional<long> FockSpace::find(const FockBasisElement& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

long FockSpace::block_dim(const Rational& w) const {
    auto it = blocks_.find(w);
    return it == blocks_.end() ? 0 : static_cast<long>(it->second.size());
}

Rational FockSpace::coset_floor(long tag) const {
    Rational vertex = -shape_.offsets[tag] - shape_.wt_lin / (shape_.wt_quad * Rational(2));
    long m0 = static_cast<long>(vertex.floor());
    Rational a = shape_.point_weight(Rational(m0) + shape_.offsets[tag]);
    Rational b = shape_.point_weight(Rational(m0 + 1) + shape_.offsets[tag]);
    return std::min(a, b);
}

Rational FockSpace::global_floor() const {
    Rational f = coset_floor(0);
    for (long tag = 1; tag < static_cast<long>(shape_.offsets.size()); ++tag)
        f = std::min(f, coset_floor(tag));
    return f;
}

std::string FockSpace::name(long idx) const {
    const FockBasisElement& e = elements_[idx];
    std::ostringstream os;
    long i = 0;
    while (i < static_cast<long>(e.modes.size())) {
        long j = i;
        while (j < static_cast<long>(e.modes.size()) && e.modes[j] == e.modes[i]) ++j;
        os << "g(-" << e.modes[i] << ")";
        if (j - i > 1) os << "^" << (j - i);
        i = j;
    }
    os << "e(" << point(idx).str() << ")";
    if (e.tag != 0) os << "#" << e.tag;
    return os.str();
}

std::string FockSpace::basis_hash() const {
    uint64_t h = 1469598103934665603ULL;
    h = fnv1a("gram=" + shape_.gram.str(), h);
    for (const auto& off : shape_.offsets) h = fnv1a("|" + off.str(), h);
    h = fnv1a("|w2=" + shape_.wt_quad.str() + "|w1=" + shape_.wt_lin.str(), h);
    h = fnv1a(shape_.truncated ? "|trunc" : "|full", h);
    for (long i = 0; i < dim(); ++i) h = fnv1a(";" + name(i) + "@" + weight(i).str(), h);
    std::ostringstream os;
    os << "0x" << std::hex << h;
    return os.str();
}

std::optional<Rational> weight_of(const FockSpace& space, const Vec& v) {
    std::optional<Rational> w;
    for (const auto& [i, c] : v.entries) {
        if (!w) w = space.weight(i);
        else if (!(*w == space.weight(i))) return std::nullopt;
    }
    return w;
}

Vec GradedOperator::apply(const FockSpace& space, const Vec& v) const {
    auto [out, complete] = apply_partial(space, v);
    if (!complete)
        throw TruncatedError("operator of degree " + degree.str() +
                             " applied to a component without a certified block");
    return out;
}

std::pair<Vec, bool> GradedOperator::apply_partial(const FockSpace& space, const Vec& v) const {
    Vec out;
    bool complete = true;
    for (const auto& [idx, c] : v.entries) {
        const Rational& h = space.weight(idx);
        auto it = blocks.find(h);
        if (it == blocks.end()) {
            complete = false;
            continue;
        }
        const ScalarMatrix& m = it->second;
        if (m.rows() == 0) continue;
        const std::vector<long>& target = space.blocks().at(h + degree);
        long col = space.offset_in_block(idx);
        for (long r = 0; r < m.rows(); ++r) {
            const Scalar& entry = m(r, col);
            if (!entry.is_zero()) out.add(target[r], entry * c);
        }
    }
    return {out, complete};
}

GradedOperator GradedOperator::compose(const GradedOperator& rhs) const {
    GradedOperator out;
    out.degree = degree + rhs.degree;
    for (const auto& [h, mr] : rhs.blocks) {
        auto it = blocks.find(h + rhs.degree);
        if (it == blocks.end()) continue;
        out.blocks.emplace(h, it->second * mr);
    }
    return out;
}

GradedOperator& GradedOperator::operator+=(const GradedOperator& o) {
    if (!(degree == o.degree)) throw Error("GradedOperator: cannot add operators of different degree");
    for (auto it = blocks.begin(); it != blocks.end();) {
        auto jt = o.blocks.find(it->first);
        if (jt == o.blocks.end()) {
            it = blocks.erase(it);
        } else {
            it->second += jt->second;
            ++it;
        }
    }
    return *this;
}

void GradedOperator::scale(const Scalar& s) {
    for (auto& [h, m] : blocks) m.scale(s);
}

bool GradedOperator::is_zero() const {
    for (const auto& [h, m] : blocks)
        if (!m.is_zero()) return false;
    return true;
}

Vec ModeEngine::heisenberg(long m, long idx) const {
    const FockBasisElement& e = space_.element(idx);
    Vec out;
    if (m == 0) {
        Scalar c{space_.shape().gram * space_.point(idx)};
        if (!c.is_zero()) out.add(idx, c);
        return out;
    }
    if (m > 0) {
        long mult = static_cast<long>(std::count(e.modes.begin(), e.modes.end(), m));
        if (mult == 0) return out;
        FockBasisElement f = e;
        f.modes.erase(std::find(f.modes.begin(), f.modes.end(), m));
        out.add(space_.index_of(f), Scalar(Rational(mult) * Rational(m) * space_.shape().gram));
        return out;
    }
    FockBasisElement f = e;
    f.modes.insert(std::upper_bound(f.modes.begin(), f.modes.end(), -m, std::greater<long>()), -m);
    if (space_.weight(idx) + Rational(-m) > space_.cutoff())
        throw TruncatedError("gamma(" + std::to_string(m) + ") leaves the materialized range");
    out.add(space_.index_of(f), Scalar(Rational(1)));
    return out;
}

Vec ModeEngine::heisenberg(long m, const Vec& v) const {
    Vec out;
    for (const auto& [idx, c] : v.entries) {
        Vec part = heisenberg(m, idx);
        part.scale(c);
        out += part;
    }
    return out;
}

Vec ModeEngine::exp_mode(long target_tag, const Rational& lambda_u, long n, long v_idx) const {
    const LatticeShape& shape = space_.shape();
    const FockBasisElement& v = space_.element(v_idx);
    Rational lambda_v = space_.point(v_idx);
    Rational pairing = shape.gram * lambda_u * lambda_v;
    if (!pairing.is_integer())
        throw NonIntegralPairingError("pairing <" + lambda_u.str() + "g, " + lambda_v.str() +
                                      "g> = " + pairing.str() + " is not an integer");
    Rational m_part = lambda_v + lambda_u - shape.offsets[target_tag];
    if (!m_part.is_integer())
        throw Error("exp_mode: shifted point leaves the target coset");
    long target_m = static_cast<long>(m_part.num());

    // Distinct modes of v with multiplicities, for the annihilation half.
    std::vector<std::pair<long, long>> content;
    for (long i = 0; i < static_cast<long>(v.modes.size());) {
        long j = i;
        while (j < static_cast<long>(v.modes.size()) && v.modes[j] == v.modes[i]) ++j;
        content.emplace_back(v.modes[i], j - i);
        i = j;
    }

    Vec out;
    // Choose how many annihilators hit each distinct mode, then fill with creators.
    std::vector<long> picks(content.size(), 0);
    std::function<void(long, long, Rational)> choose = [&](long ci, long degree_a, Rational coeff) {
        if (ci == static_cast<long>(content.size())) {
            // Creators must supply total degree b so that the x-power matches -n-1.
            Rational b_rat = Rational(-n - 1) - pairing + Rational(degree_a);
            if (!b_rat.is_integer() || b_rat.sign() < 0) return;
            long b = static_cast<long>(b_rat.num());
            if (lambda_u.is_zero() && b != 0) return;

            // Remaining monomial after the annihilations.
            std::vector<long> base;
            for (long k = 0; k < static_cast<long>(content.size()); ++k)
                for (long r = 0; r < content[k].second - picks[k]; ++r) base.push_back(content[k].first);

            std::vector<long> parts;
            std::function<void(long, long, Rational)> create = [&](long remaining, long max_part,
                                                                   Rational c2) {
                if (remaining == 0) {
                    FockBasisElement f;
                    f.tag = target_tag;
                    f.coset_m = target_m;
                    f.modes = base;
                    for (long part : parts) f.modes.push_back(part);
                    std::sort(f.modes.begin(), f.modes.end(), std::greater<long>());
                    Rational w = shape.point_weight(lambda_v + lambda_u) +
                                 Rational(f.heisenberg_weight());
                    if (w > space_.cutoff())
                        throw TruncatedError("exponential operator mode leaves the materialized range");
                    out.add(space_.index_of(f), Scalar(c2));
                    return;
                }
                // Multiplicity factors 1/(j^{b_j} b_j!) accumulate one part at a time:
                // taking b_j equal parts j in descending order contributes lambda_u^{b_j}/(j^{b_j} b_j!).
                for (long part = std::min(max_part, remaining); part >= 1; --part) {
                    long same = 1;
                    Rational c3 = c2 * lambda_u / Rational(part);
                    parts.push_back(part);
                    // Count how many of this part are already present to divide by the new multiplicity.
                    for (long k = 0; k + 1 < static_cast<long>(parts.size()); ++k)
                        if (parts[k] == part) ++same;
                    c3 = c3 / Rational(same);
                    create(remaining - part, part, c3);
                    parts.pop_back();
                }
            };
            create(b, b == 0 ? 1 : b, coeff);
            return;
        }
        const auto [mode, mult] = content[ci];
        Rational c = coeff;
        for (long a = 0; a <= mult; ++a) {
            picks[ci] = a;
            choose(ci + 1, degree_a + a * mode, c);
            // One more annihilator on this mode: factor (-lambda_u/j) * (remaining copies) * (j*gram) / (a+1).
            c = c * (-lambda_u / Rational(mode)) * Rational(mult - a) * Rational(mode) * shape.gram /
                Rational(a + 1);
        }
        picks[ci] = 0;
    };
    choose(0, 0, Rational(1));
    return out;
}

const Vec& ModeEngine::mode_basis(long u_idx, long n, long v_idx) {
    auto key = std::make_tuple(u_idx, n, v_idx);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Vec out = mode_uncached(u_idx, n, v_idx);
    return memo_.emplace(std::move(key), std::move(out)).first->second;
}

Vec ModeEngine::mode_uncached(long u_idx, long n, long v_idx) {
    const FockBasisElement& u = space_.element(u_idx);
    const FockBasisElement& v = space_.element(v_idx);
    std::optional<long> target = space_.shape().product_tag(u.tag, v.tag);
    if (!target) return {};

    Rational out_wt = space_.weight(u_idx) + space_.weight(v_idx) - Rational(n) - Rational(1);
    if (out_wt > space_.cutoff())
        throw TruncatedError("mode " + std::to_string(n) + " of " + space_.name(u_idx) + " on " +
                             space_.name(v_idx) + " has weight " + out_wt.str() + " above cutoff " +
                             space_.cutoff().str());
    Rational floor = space_.coset_floor(*target);
    if (out_wt < floor) return {};

    if (u.modes.empty()) return exp_mode(*target, space_.point(u_idx), n, v_idx);

    long m = u.modes.front();
    FockBasisElement up = u;
    up.modes.erase(up.modes.begin());
    long up_idx = space_.index_of(up);
    Rational pref{BigInt(1), factorial(m - 1)};

    Vec out;
    // Creation half: gamma(-s) Y_{n+s-m}(u')v, bounded by the target coset's weight floor.
    Rational smax_rat = space_.weight(up_idx) + space_.weight(v_idx) - Rational(n) +
                        Rational(m) - Rational(1) - floor;
    long smax = static_cast<long>(smax_rat.floor());
    for (long s = std::max<long>(m, 1); s <= smax; ++s) {
        Rational c = pref * Rational(falling(s - 1, m - 1));
        if (c.is_zero()) continue;
        Vec inner = mode_basis(up_idx, n + s - m, v_idx);
        Vec lifted = heisenberg(-s, inner);
        lifted.scale(Scalar(c));
        out += lifted;
    }
    // Annihilation half: Y_{n-t-m}(u')(gamma(t)v) over the modes v actually contains.
    std::vector<long> ts{0};
    for (long i = 0; i < static_cast<long>(v.modes.size()); ++i)
        if (i == 0 || v.modes[i] != v.modes[i - 1]) ts.push_back(v.modes[i]);
    for (long t : ts) {
        Rational c = pref * descendant_coeff(m, t);
        if (c.is_zero()) continue;
        Vec gv = heisenberg(t, v_idx);
        for (const auto& [i2, c2] : gv.entries) {
            Vec inner = mode_basis(up_idx, n - t - m, i2);
            inner.scale(Scalar(c) * c2);
            out += inner;
        }
    }
    return out;
}

Vec ModeEngine::mode(const Vec& u, const Rational& n, const Vec& v) {
    if (!n.is_integer()) return {};
    long nl = static_cast<long>(n.num());
    Vec out;
    for (const auto& [ui, cu] : u.entries) {
        for (const auto& [vi, cv] : v.entries) {
            Vec part = mode_basis(ui, nl, vi);
            part.scale(cu * cv);
            out += part;
        }
    }
    return out;
}

LogSeries<Vec> ModeEngine::vertex_series(long u_idx, long v_idx) {
    const FockBasisElement& u = space_.element(u_idx);
    const FockBasisElement& v = space_.element(v_idx);
    std::optional<long> target = space_.shape().product_tag(u.tag, v.tag);
    if (!target) return {};

    Rational base = space_.weight(u_idx) + space_.weight(v_idx);
    Rational lo = space_.coset_floor(*target) - base;
    Rational hi = space_.cutoff() - base;
    LogSeries<Vec> out{Window::upto(lo, hi)};
    for (BigInt e = lo.ceil(); Rational(e) <= hi; ++e) {
        long n = -static_cast<long>(e) - 1;
        Vec c = mode_basis(u_idx, n, v_idx);
        if (!c.is_zero()) out.add_term(Rational(e), 0, std::move(c));
    }
    return out;
}

LogSeries<Vec> ModeEngine::vertex_series(const Vec& u, const Vec& v) {
    if (u.is_zero() || v.is_zero()) return {};
    std::optional<Rational> wu = weight_of(space_, u);
    std::optional<Rational> wv = weight_of(space_, v);
    if (!wu || !wv) throw UsageError("vertex series needs homogeneous arguments");
    Rational base = *wu + *wv;
    Rational lo = space_.global_floor() - base;
    Rational hi = space_.cutoff() - base;
    LogSeries<Vec> out{Window::upto(lo, hi)};
    for (BigInt e = lo.ceil(); Rational(e) <= hi; ++e) {
        Vec c = mode(u, Rational(BigInt(-e - 1)), v);
        if (!c.is_zero()) out.add_term(Rational(e), 0, std::move(c));
    }
    return out;
}

void ModeEngine::save_cache(const std::string& path, const std::string& header) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write cache file " + path);
    out << "voacert-cache 1\n" << header << "\n";
    for (const auto& [key, vec] : memo_) {
        bool rational = true;
        for (const auto& [i, c] : vec.entries)
            if (!c.is_rational()) rational = false;
        if (!rational) continue;
        out << "m " << std::get<0>(key) << " " << std::get<1>(key) << " " << std::get<2>(key);
        for (const auto& [i, c] : vec.entries) out << " " << i << "=" << c.rational_value().str();
        out << "\n";
    }
    out << "end\n";
}

bool ModeEngine::load_cache(const std::string& path, const std::string& header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::string line;
    if (!std::getline(in, line) || line != "voacert-cache 1") return false;
    if (!std::getline(in, line) || line != header) return false;
    std::map<std::tuple<long, long, long>, Vec> loaded;
    while (std::getline(in, line)) {
        if (line == "end") {
            for (auto& [key, vec] : loaded) memo_.insert_or_assign(key, std::move(vec));
            return true;
        }
        std::istringstream ls(line);
        std::string tagword;
        long u, n, v;
        if (!(ls >> tagword >> u >> n >> v) || tagword != "m") return false;
        Vec vec;
        std::string pair;
        while (ls >> pair) {
            auto eq = pair.find('=');
            if (eq == std::string::npos) return false;
            long idx = std::stol(pair.substr(0, eq));
            vec.add(idx, Scalar(Rational::parse(pair.substr(eq + 1))));
        }
        loaded.emplace(std::make_tuple(u, n, v), std::move(vec));
    }
    return false;
}

}  // namespace voacert
