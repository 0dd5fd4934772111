#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "voacert/linalg.hpp"
#include "voacert/voa.hpp"

namespace voacert {

/** Named twist recipes accepted on the command line and in configs. */
struct TwistSpec {
    enum class Kind { None, QScreen, QtildeScreen, Heisenberg };
    Kind kind = Kind::None;
    Rational coeff{0};
};

TwistSpec parse_twist(const std::string& name);
std::string twist_name(const TwistSpec& spec);

/**
 * The twisted-module construction attached to a weight-1 vector u: the zero mode's
 * exact Jordan decomposition, the group element g = exp(2 pi i Y_0(u)), the operator
 * Delta(x) = x^S exp(N log x) exp(Phi(x)), and the twisted vertex operators
 * Y^g(v,x) = Y(Delta(x)v, x) together with their verification sweeps.
 *
 * Everything is exact: scalars live in Q(zeta_n)[tau] with tau standing for 2 pi i,
 * and every series carries its certification window.
 */
class Twist {
public:
    Twist(Algebra& alg, Vec u, std::string label);
    static Twist make(Algebra& alg, const TwistSpec& spec);

    Algebra& algebra() { return alg_; }
    const std::string& label() const { return label_; }
    const Vec& twist_vector() const { return u_; }
    bool trivial() const { return u_.is_zero(); }

    /** Y_1(u)u = mu * vacuum. */
    const Rational& mu() const { return mu_; }
    const GradedOperator& y0() const { return y0_; }

    /** True when g is semisimple with rational spectrum, i.e. a finite-order twist. */
    bool finite_order() const { return finite_order_; }
    /** The order k of g; RequiresFiniteOrder when g is not of finite order. */
    long order() const;
    /** Nilpotency index of the nilpotent part of Y_0(u); 1 means semisimple. */
    long log_index() const { return lambda_; }
    /** Distinct eigenvalues of the semisimple part over all blocks, ascending. */
    const std::vector<Rational>& spectrum() const { return spectrum_; }

    Vec apply_g(const Vec& v, long power = 1);
    Vec apply_semisimple(const Vec& v);
    Vec apply_nilpotent(const Vec& v);
    /** Components of v in the eigenspaces of the semisimple part: (alpha, piece). */
    std::vector<std::pair<Rational, Vec>> eigen_split(const Vec& v) const;
    /** Projection onto eigencomponents with alpha = b mod 1, via (1/k) sum zeta^{-jb} g^j. */
    Vec project_mod1(const Rational& b, const Vec& v);
    /** The eigenvalue of a basis vector, or nullopt if it mixes eigenspaces. */
    std::optional<Rational> eigen_alpha(long idx) const;

    /** Delta(x) applied to a basis vector; an exact, complete-window series. */
    const LogSeries<Vec>& delta_basis(long idx);
    LogSeries<Vec> delta_apply(const Vec& v);

    /** Y^g(v,x)w for basis vectors, cached; window certified up to the cutoff. */
    const LogSeries<Vec>& twisted_vertex_basis(long v_idx, long w_idx);
    LogSeries<Vec> twisted_vertex(const Vec& v, const Vec& w);
    /**
     * Coefficient of x^{-n-1} in Y^g(v,x)w, or nullopt when the window cannot
     * certify it. Requires a log-free series at that exponent.
     */
    std::optional<Vec> twisted_mode(const Vec& v, const Rational& n, const Vec& w);

    /** Regraded weight h + alpha + mu/2 of an eigen-pure basis vector. */
    Rational new_weight(long idx) const;
    /** Regraded dimension table, restricted to the certified depth. */
    std::map<Rational, long> twisted_dims(Rational& depth_out) const;

    AxiomReport check_delta_commutator();
    AxiomReport check_phi_translation();
    AxiomReport check_delta_associativity();
    AxiomReport check_delta_translation();
    AxiomReport check_conformal_image();
    AxiomReport check_twisted_identity();
    AxiomReport check_twisted_translation();
    AxiomReport check_equivariance();
    AxiomReport check_log_structure();
    AxiomReport check_grading();
    AxiomReport check_twist_invariants();
    AxiomReport check_twisted_jacobi(long seed, long max_triples);
    AxiomReport check_monodromy_support();
    AxiomReport check_functorial_smoke();

private:
    /** Phi(x) s for a series s: sum over n >= 1 of (-1)^{n+1}/n x^{-n} Y_n(u) per coefficient. */
    LogSeries<Vec> phi_apply(const LogSeries<Vec>& s);
    Vec apply_block_matrices(const std::map<Rational, RatMatrix>& mats, const Vec& v) const;
    const JordanChevalley& block_jc(const Rational& h) const;

    Algebra& alg_;
    std::string label_;
    Vec u_;
    Rational mu_{0};
    GradedOperator y0_;
    std::map<Rational, JordanChevalley> spectral_;
    std::vector<Rational> spectrum_;
    long lambda_ = 1;
    bool finite_order_ = true;
    long order_ = 1;

    std::map<long, LogSeries<Vec>> delta_cache_;
    std::map<std::pair<long, long>, LogSeries<Vec>> tv_cache_;
};

}  // namespace voacert
