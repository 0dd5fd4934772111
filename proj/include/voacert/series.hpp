#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "voacert/errors.hpp"
#include "voacert/rational.hpp"
#include "voacert/scalar.hpp"

namespace voacert {

/** One monomial slot x^e * log(x)^k. Map order (e, then k) is the canonical term order. */
struct ExpLogKey {
    Rational x_exponent;
    long log_power = 0;
    auto operator<=>(const ExpLogKey&) const = default;
};

/**
 * Truncation window of a series: the series is exactly zero below `lo` (support floor)
 * and its stored terms are exactly right for every exponent <= `hi` (certified edge).
 * An absent `hi` means the series is complete: every coefficient is certified.
 */
struct Window {
    Rational lo{0};
    std::optional<Rational> hi{};

    static Window all(Rational floor = Rational(0)) { return Window{std::move(floor), std::nullopt}; }
    static Window upto(Rational floor, Rational edge) { return Window{std::move(floor), std::move(edge)}; }

    bool complete() const { return !hi.has_value(); }
    bool certified(const Rational& e) const { return !hi || e <= *hi; }

    /** Window of a sum: supports union, certainty intersects. */
    static Window sum_of(const Window& a, const Window& b) {
        Window w{std::min(a.lo, b.lo), std::nullopt};
        if (a.hi && b.hi) w.hi = std::min(*a.hi, *b.hi);
        else if (a.hi) w.hi = a.hi;
        else if (b.hi) w.hi = b.hi;
        return w;
    }

    /** Window of a product: floors add; each factor's edge is shifted by the other's floor. */
    static Window product_of(const Window& a, const Window& b) {
        Window w{a.lo + b.lo, std::nullopt};
        if (a.hi) w.hi = *a.hi + b.lo;
        if (b.hi) {
            Rational cand = *b.hi + a.lo;
            if (!w.hi || cand < *w.hi) w.hi = cand;
        }
        return w;
    }

    Window shifted(const Rational& d) const {
        Window w{lo + d, hi};
        if (w.hi) w.hi = *w.hi + d;
        return w;
    }

    std::string str() const {
        std::string s = "[" + lo.str() + ", ";
        s += hi ? hi->str() + "]" : "inf)";
        return s;
    }
};

template <class C>
class LogSeries;

/** Customization points so series can carry plain scalars, vectors, or nested series. */
inline void scale_coeff(Scalar& c, const Scalar& s) { c *= s; }
inline Scalar coeff_mul(const Scalar& a, const Scalar& b) { return a * b; }

template <class C>
void scale_coeff(LogSeries<C>& c, const Scalar& s) {
    c.scale(s);
}

/** Outcome of a windowed comparison: how many coefficient slots were checked, and the first failure. */
struct MatchResult {
    bool ok = true;
    long compared = 0;
    std::string mismatch;

    void fail(const std::string& where) {
        if (ok) {
            ok = false;
            mismatch = where;
        }
    }
};

inline void match_coeff(const Scalar& a, const Scalar& b, MatchResult& r, const std::string& where) {
    ++r.compared;
    if (!(a == b)) r.fail(where + ": " + a.str() + " vs " + b.str());
}

/**
 * Formal series sum c_{e,k} x^e log(x)^k over an abelian coefficient type C.
 * C needs: default-construct to zero, is_zero(), operator+=, str(), and the
 * scale_coeff/coeff_mul hooks above. A default-constructed series is the exact zero.
 */
template <class C>
class LogSeries {
public:
    using Terms = std::map<ExpLogKey, C>;

    LogSeries() = default;
    explicit LogSeries(Window w) : window_(std::move(w)) {}

    static LogSeries monomial(Rational e, long k, C coeff) {
        LogSeries s{Window::all(e)};
        s.add_term(std::move(e), k, std::move(coeff));
        return s;
    }

    const Window& window() const { return window_; }
    const Terms& terms() const { return terms_; }
    bool is_exact_zero() const { return window_.complete() && terms_.empty(); }
    bool is_zero() const { return terms_.empty(); }

    /** Tightest support floor consistent with the stored terms. */
    Rational floor_lo() const {
        if (!terms_.empty()) return std::max(window_.lo, terms_.begin()->first.x_exponent);
        if (window_.hi && *window_.hi > window_.lo) return *window_.hi;
        return window_.lo;
    }

    /** Accumulate one term; slots beyond the certified edge are not representable and are dropped. */
    void add_term(const ExpLogKey& key, C value) {
        if (!window_.certified(key.x_exponent) || value.is_zero()) return;
        if (key.x_exponent < window_.lo) window_.lo = key.x_exponent;
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, std::move(value));
        } else {
            it->second += value;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add_term(Rational e, long k, C value) { add_term(ExpLogKey{std::move(e), k}, std::move(value)); }

    /** Coefficient of x^e log(x)^k; asking beyond the certified edge throws. */
    C coefficient(const Rational& e, long k = 0) const {
        if (!window_.certified(e))
            throw TruncatedError("coefficient at x^(" + e.str() + ") is beyond the certified edge " +
                                 window_.str());
        auto it = terms_.find(ExpLogKey{e, k});
        return it == terms_.end() ? C{} : it->second;
    }

    LogSeries& operator+=(const LogSeries& o) {
        if (o.is_exact_zero()) return *this;
        if (is_exact_zero()) {
            *this = o;
            return *this;
        }
        Window w = Window::sum_of(window_, o.window_);
        window_ = w;
        prune_beyond_edge();
        for (const auto& [key, c] : o.terms_) add_term(key, c);
        return *this;
    }
    friend LogSeries operator+(LogSeries a, const LogSeries& b) {
        a += b;
        return a;
    }

    void scale(const Scalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return;
        }
        for (auto& [key, c] : terms_) scale_coeff(c, s);
        prune_zeros();
    }
    void scale(const Rational& r) { scale(Scalar(r)); }
    void negate() { scale(Scalar(Rational(-1))); }

    /** d/dx, termwise: x^e log^k -> e x^{e-1} log^k + k x^{e-1} log^{k-1}. */
    LogSeries ddx() const {
        LogSeries out{window_.shifted(Rational(-1))};
        for (const auto& [key, c] : terms_) {
            if (!key.x_exponent.is_zero()) {
                C t = c;
                scale_coeff(t, Scalar(key.x_exponent));
                out.add_term(key.x_exponent - Rational(1), key.log_power, std::move(t));
            }
            if (key.log_power > 0) {
                C t = c;
                scale_coeff(t, Scalar(Rational(key.log_power)));
                out.add_term(key.x_exponent - Rational(1), key.log_power - 1, std::move(t));
            }
        }
        return out;
    }

    /** Termwise antiderivative vanishing at 0. Only defined away from x^{-1} and log terms. */
    LogSeries integrate0() const {
        LogSeries out{window_.shifted(Rational(1))};
        for (const auto& [key, c] : terms_) {
            if (key.log_power != 0)
                throw IntegralUndefinedError("cannot integrate a log(x) term");
            if (key.x_exponent == Rational(-1))
                throw IntegralUndefinedError("cannot integrate x^(-1) to a series vanishing at 0");
            C t = c;
            scale_coeff(t, Scalar(Rational(1) / (key.x_exponent + Rational(1))));
            out.add_term(key.x_exponent + Rational(1), key.log_power, std::move(t));
        }
        return out;
    }

    /** Monodromy substitution x^e -> e^{2 pi i e} x^e, log x -> log x + tau. */
    LogSeries monodromy_substituted() const {
        LogSeries out{window_};
        for (const auto& [key, c] : terms_) {
            Scalar phase = Scalar::root_of_unity(key.x_exponent);
            for (long j = 0; j <= key.log_power; ++j) {
                C t = c;
                Scalar f = phase * Scalar(binomial(Rational(key.log_power), j));
                if (key.log_power > j) f = f * Scalar::tau(key.log_power - j);
                scale_coeff(t, f);
                out.add_term(key.x_exponent, j, std::move(t));
            }
        }
        return out;
    }

    /** Multiply by x^d. */
    LogSeries shifted(const Rational& d) const {
        LogSeries out{window_.shifted(d)};
        for (const auto& [key, c] : terms_) out.add_term(key.x_exponent + d, key.log_power, c);
        return out;
    }

    /** Substitute x -> -x. Needs integer exponents and no logs. */
    LogSeries negated_x() const {
        LogSeries out{window_};
        for (const auto& [key, c] : terms_) {
            if (key.log_power != 0) throw UsageError("x -> -x is not defined on log(x) terms");
            if (!key.x_exponent.is_integer())
                throw UsageError("x -> -x is not defined on the fractional exponent x^(" +
                                 key.x_exponent.str() + ")");
            C t = c;
            if ((key.x_exponent.num() % 2) != 0) scale_coeff(t, Scalar(Rational(-1)));
            out.add_term(key, std::move(t));
        }
        return out;
    }

    /** Lower the certified edge (terms beyond it are dropped). */
    LogSeries truncated(const Rational& new_hi) const {
        if (window_.hi && *window_.hi <= new_hi) return *this;
        LogSeries out{Window::upto(std::min(window_.lo, new_hi), new_hi)};
        for (const auto& [key, c] : terms_) out.add_term(key, c);
        return out;
    }

    long max_log_power() const {
        long m = 0;
        for (const auto& [key, c] : terms_) m = std::max(m, key.log_power);
        return m;
    }

    /** lcm of the denominators of every exponent in sight; the support lives on (1/this) Z. */
    BigInt exponent_denominator_lcm() const {
        BigInt l = window_.lo.den();
        if (window_.hi) l = boost::multiprecision::lcm(l, window_.hi->den());
        for (const auto& [key, c] : terms_)
            l = boost::multiprecision::lcm(l, key.x_exponent.den());
        return l;
    }

    std::string str() const {
        std::ostringstream os;
        if (terms_.empty()) {
            os << "0";
        } else {
            bool first = true;
            for (const auto& [key, c] : terms_) {
                if (!first) os << " + ";
                first = false;
                os << "(" << c.str() << ")";
                if (!key.x_exponent.is_zero()) os << "*x^(" << key.x_exponent.str() << ")";
                if (key.log_power != 0) {
                    os << "*log(x)";
                    if (key.log_power != 1) os << "^" << key.log_power;
                }
            }
        }
        os << " | window " << window_.str();
        return os.str();
    }

private:
    void prune_zeros() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
    void prune_beyond_edge() {
        if (!window_.hi) return;
        for (auto it = terms_.begin(); it != terms_.end();)
            it = window_.certified(it->first.x_exponent) ? std::next(it) : terms_.erase(it);
    }

    Window window_{};
    Terms terms_{};
};

/** Cauchy product; the coefficient types may differ (e.g. scalar series times vector series). */
template <class A, class C>
LogSeries<C> mul(const LogSeries<A>& a, const LogSeries<C>& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return LogSeries<C>{};
    Window wa{a.floor_lo(), a.window().hi};
    Window wb{b.floor_lo(), b.window().hi};
    LogSeries<C> out{Window::product_of(wa, wb)};
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            Rational e = ka.x_exponent + kb.x_exponent;
            if (!out.window().certified(e)) continue;
            out.add_term(e, ka.log_power + kb.log_power, coeff_mul(ca, cb));
        }
    }
    return out;
}

template <class A, class C>
LogSeries<C> coeff_mul(const LogSeries<A>& a, const LogSeries<C>& b) {
    return mul(a, b);
}

template <class C>
MatchResult match_in_window(const LogSeries<C>& a, const LogSeries<C>& b, const std::string& label = "");

template <class C>
void match_coeff(const LogSeries<C>& a, const LogSeries<C>& b, MatchResult& r, const std::string& where) {
    MatchResult sub = match_in_window(a, b, where + " . ");
    r.compared += sub.compared;
    if (!sub.ok) r.fail(sub.mismatch);
}

/** Compare two series on the intersection of their certified windows, absent slots counting as zero. */
template <class C>
MatchResult match_in_window(const LogSeries<C>& a, const LogSeries<C>& b, const std::string& label) {
    MatchResult r;
    std::optional<Rational> hi;
    if (a.window().hi && b.window().hi) hi = std::min(*a.window().hi, *b.window().hi);
    else if (a.window().hi) hi = a.window().hi;
    else if (b.window().hi) hi = b.window().hi;
    auto certified = [&](const Rational& e) { return !hi || e <= *hi; };

    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    const C zero{};
    while (ia != a.terms().end() || ib != b.terms().end()) {
        int cmp;
        if (ia == a.terms().end()) cmp = 1;
        else if (ib == b.terms().end()) cmp = -1;
        else if (ia->first < ib->first) cmp = -1;
        else if (ib->first < ia->first) cmp = 1;
        else cmp = 0;
        ExpLogKey key = cmp <= 0 ? ia->first : ib->first;
        const C& ca = cmp <= 0 ? ia->second : zero;
        const C& cb = cmp >= 0 ? ib->second : zero;
        if (certified(key.x_exponent)) {
            std::ostringstream os;
            os << label << "x^(" << key.x_exponent.str() << ")";
            if (key.log_power != 0) os << " log^" << key.log_power;
            match_coeff(ca, cb, r, os.str());
            if (!r.ok) return r;
        }
        if (cmp <= 0) ++ia;
        if (cmp >= 0) ++ib;
    }
    return r;
}

/**
 * Map every coefficient through f in ascending exponent order. f returns nullopt when the image
 * is not computable there; the certified edge then backs off to just below that exponent, on the
 * exponent lattice the series lives on.
 */
template <class C, class F>
LogSeries<C> map_certified(const LogSeries<C>& s, F&& f) {
    std::optional<Rational> hi = s.window().hi;
    std::map<ExpLogKey, C> done;
    for (const auto& [key, c] : s.terms()) {
        std::optional<C> image = f(c);
        if (!image) {
            Rational step{BigInt(1), s.exponent_denominator_lcm()};
            Rational edge = key.x_exponent - step;
            hi = hi ? std::min(*hi, edge) : edge;
            break;
        }
        done.emplace(key, std::move(*image));
    }
    Rational lo = s.window().lo;
    if (hi && *hi < lo) lo = *hi;
    LogSeries<C> out{Window{lo, hi}};
    for (auto& [key, c] : done) out.add_term(key, std::move(c));
    return out;
}

/** Same, when every coefficient is mappable. */
template <class C, class F>
LogSeries<C> map_coeffs(const LogSeries<C>& s, F&& f) {
    LogSeries<C> out{s.window()};
    for (const auto& [key, c] : s.terms()) out.add_term(key, f(c));
    return out;
}

/** Which summand of (v1 + v2)^r is the expansion's large variable. */
enum class ExpandIn { FirstLarge, SecondLarge };

/**
 * Binomial expansion of (large + small)^r as a nested series: outer keys are the small
 * variable's powers 0..order, inner values are monomials binom(r,i) large^{r-i}.
 */
inline LogSeries<LogSeries<Scalar>> expand_binomial(const Rational& r, ExpandIn, long order) {
    LogSeries<LogSeries<Scalar>> out{Window::upto(Rational(0), Rational(order))};
    for (long i = 0; i <= order; ++i) {
        Rational b = binomial(r, i);
        if (b.is_zero()) continue;
        out.add_term(Rational(i), 0, LogSeries<Scalar>::monomial(r - Rational(i), 0, Scalar(b)));
    }
    return out;
}

/**
 * log(1 + small/large) expanded in the small variable: outer keys l = 1..order with inner
 * monomials (-1)^{l+1}/l large^{-l}.
 */
inline LogSeries<LogSeries<Scalar>> log_expand_one_plus(long order) {
    LogSeries<LogSeries<Scalar>> out{Window::upto(Rational(1), Rational(order))};
    for (long l = 1; l <= order; ++l) {
        Rational c{(l % 2 == 0) ? BigInt(-1) : BigInt(1), BigInt(l)};
        out.add_term(Rational(l), 0, LogSeries<Scalar>::monomial(Rational(-l), 0, Scalar(c)));
    }
    return out;
}

}  // namespace voacert
