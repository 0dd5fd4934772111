#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "voacert/errors.hpp"
#include "voacert/linalg.hpp"
#include "voacert/rational.hpp"
#include "voacert/scalar.hpp"
#include "voacert/series.hpp"

namespace voacert {

/**
 * Rank-1 lattice data: the pairing <gamma,gamma>, one coset offset per summand tag,
 * the quadratic weight law of lattice points, and the product-truncation rule that
 * defines the extension algebras (summands with nonzero tag annihilate each other;
 * tag-0 factors act on everything).
 */
struct LatticeShape {
    Rational gram;
    std::vector<Rational> offsets{Rational(0)};
    bool truncated = false;
    Rational wt_quad;
    Rational wt_lin;

    Rational point_weight(const Rational& lambda) const { return wt_quad * lambda * lambda + wt_lin * lambda; }

    /** Tag of the product's target summand, or nullopt when the truncation rule kills it. */
    std::optional<long> product_tag(long tag_u, long tag_v) const {
        if (tag_u == 0) return tag_v;
        if (tag_v == 0) return tag_u;
        return truncated ? std::nullopt : std::optional<long>(tag_u);
    }
};

/** Basis monomial gamma(-n1)...gamma(-nk) e^{(m + offset_tag) gamma}, modes descending. */
struct FockBasisElement {
    std::vector<long> modes;
    long coset_m = 0;
    long tag = 0;

    auto operator<=>(const FockBasisElement&) const = default;
    long heisenberg_weight() const {
        long s = 0;
        for (long n : modes) s += n;
        return s;
    }
};

/** Sparse vector over the global basis index of one FockSpace. */
struct Vec {
    std::map<long, Scalar> entries;

    bool is_zero() const { return entries.empty(); }
    Scalar coeff(long idx) const {
        auto it = entries.find(idx);
        return it == entries.end() ? Scalar() : it->second;
    }
    void add(long idx, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = entries.find(idx);
        if (it == entries.end()) {
            entries.emplace(idx, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) entries.erase(it);
        }
    }
    Vec& operator+=(const Vec& o) {
        for (const auto& [i, c] : o.entries) add(i, c);
        return *this;
    }
    void scale(const Scalar& s) {
        if (s.is_zero()) {
            entries.clear();
            return;
        }
        for (auto& [i, c] : entries) c *= s;
        for (auto it = entries.begin(); it != entries.end();)
            it = it->second.is_zero() ? entries.erase(it) : std::next(it);
    }
    Vec scaled(const Scalar& s) const {
        Vec v = *this;
        v.scale(s);
        return v;
    }
    bool operator==(const Vec& o) const { return entries == o.entries; }
    std::string str() const;
};

inline void scale_coeff(Vec& v, const Scalar& s) { v.scale(s); }
inline Vec coeff_mul(const Scalar& s, const Vec& v) { return v.scaled(s); }
inline void match_coeff(const Vec& a, const Vec& b, MatchResult& r, const std::string& where) {
    ++r.compared;
    if (!(a == b)) r.fail(where + ": " + a.str() + " vs " + b.str());
}

/**
 * All basis monomials of weight <= cutoff, grouped into weight blocks, in a fixed
 * deterministic order: blocks by ascending weight, within a block by (tag, point, modes).
 */
class FockSpace {
public:
    FockSpace(LatticeShape shape, Rational cutoff);

    const LatticeShape& shape() const { return shape_; }
    const Rational& cutoff() const { return cutoff_; }
    long dim() const { return static_cast<long>(elements_.size()); }

    const FockBasisElement& element(long idx) const { return elements_[idx]; }
    const Rational& weight(long idx) const { return weights_[idx]; }
    Rational point(long idx) const { return point_of(elements_[idx]); }
    Rational point_of(const FockBasisElement& e) const {
        return Rational(e.coset_m) + shape_.offsets[e.tag];
    }

    long index_of(const FockBasisElement& e) const;
    std::optional<long> find(const FockBasisElement& e) const;

    const std::map<Rational, std::vector<long>>& blocks() const { return blocks_; }
    long block_dim(const Rational& w) const;
    /** Position of idx within its weight block. */
    long offset_in_block(long idx) const { return offsets_[idx]; }

    /** Exact minimum of the weight law over the whole coset of the tag (not just materialized points). */
    Rational coset_floor(long tag) const;
    Rational global_floor() const;

    std::string name(long idx) const;
    std::string basis_hash() const;

    Vec basis_vec(long idx) const {
        Vec v;
        v.add(idx, Scalar(Rational(1)));
        return v;
    }

private:
    LatticeShape shape_;
    Rational cutoff_;
    std::vector<FockBasisElement> elements_;
    std::vector<Rational> weights_;
    std::vector<long> offsets_;
    std::map<FockBasisElement, long> index_;
    std::map<Rational, std::vector<long>> blocks_;
};

/** The weight of a homogeneous vector, or nullopt for zero or mixed-weight vectors. */
std::optional<Rational> weight_of(const FockSpace& space, const Vec& v);

/**
 * Weight-graded operator stored as one exact matrix per source weight block.
 * A missing block means the image there is not certified (it would leave the
 * materialized range); applying to such a component throws Truncated.
 */
struct GradedOperator {
    Rational degree{0};
    std::map<Rational, ScalarMatrix> blocks;

    Vec apply(const FockSpace& space, const Vec& v) const;
    /** Drops components whose block is missing; the flag reports whether anything was dropped. */
    std::pair<Vec, bool> apply_partial(const FockSpace& space, const Vec& v) const;

    GradedOperator compose(const GradedOperator& rhs) const;
    GradedOperator& operator+=(const GradedOperator& o);
    void scale(const Scalar& s);
    bool is_zero() const;
    bool operator==(const GradedOperator& o) const { return degree == o.degree && blocks == o.blocks; }

    /** Build degree-preserving-block matrices from an index-to-vector action over all source blocks. */
    template <class F>
    static GradedOperator from_action(const FockSpace& space, const Rational& degree, F&& act) {
        GradedOperator op;
        op.degree = degree;
        for (const auto& [w, idxs] : space.blocks()) {
            if (!(w + degree <= space.cutoff())) continue;
            long rows = space.block_dim(w + degree);
            ScalarMatrix m(rows, static_cast<long>(idxs.size()));
            for (long col = 0; col < static_cast<long>(idxs.size()); ++col) {
                Vec image = act(idxs[col]);
                for (const auto& [i, c] : image.entries) {
                    if (!(space.weight(i) == w + degree))
                        throw Error("GradedOperator: action is not homogeneous of the declared degree");
                    m(space.offset_in_block(i), col) = c;
                }
            }
            op.blocks.emplace(w, std::move(m));
        }
        return op;
    }
};

/**
 * Evaluates modes Y_n(u)v on basis monomials by peeling Heisenberg modes down to the
 * exponential-operator base case, memoizing every (u, n, v) triple. All arithmetic is exact;
 * any result that would land above the cutoff throws Truncated instead of being dropped.
 */
class ModeEngine {
public:
    explicit ModeEngine(const FockSpace& space) : space_(space) {}

    const FockSpace& space() const { return space_; }

    /** gamma(m) action: creation for m < 0, pairing contraction for m > 0, point pairing for m = 0. */
    Vec heisenberg(long m, long idx) const;
    Vec heisenberg(long m, const Vec& v) const;

    /** Y_n(u)v for basis indices; the truncated extension product rule is applied first. */
    const Vec& mode_basis(long u_idx, long n, long v_idx);
    Vec mode(const Vec& u, const Rational& n, const Vec& v);

    /** Y(e^beta, x)v coefficient at x^{-n-1}, where beta = lambda_u gamma lands on target_tag. */
    Vec exp_mode(long target_tag, const Rational& lambda_u, long n, long v_idx) const;

    /** The full series Y(u, x)v over its maximal certified window. */
    LogSeries<Vec> vertex_series(long u_idx, long v_idx);
    LogSeries<Vec> vertex_series(const Vec& u, const Vec& v);

    long cache_size() const { return static_cast<long>(memo_.size()); }
    /** Deterministic text cache of all memoized rational-valued modes. */
    void save_cache(const std::string& path, const std::string& header) const;
    /** Loads a cache if the header matches exactly; a mismatch is treated as a cold start. */
    bool load_cache(const std::string& path, const std::string& header);

private:
    Vec mode_uncached(long u_idx, long n, long v_idx);

    const FockSpace& space_;
    std::map<std::tuple<long, long, long>, Vec> memo_;
};

}  // namespace voacert
