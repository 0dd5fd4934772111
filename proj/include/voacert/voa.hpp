#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "voacert/fock.hpp"
#include "voacert/series.hpp"

namespace voacert {

/** The concrete algebras: the rank-1 lattice algebra and its coset extensions. */
enum class Variant { VLShifted, VLStandard, V0, V0o, Vpq };

enum class ScreenKind { Q, Qtilde };

Variant parse_variant(const std::string& name);
std::string variant_name(Variant v);

/** Outcome of one verification sweep. */
struct AxiomReport {
    AxiomReport() = default;
    AxiomReport(std::string n, std::string p) : name(std::move(n)), params(std::move(p)) {}

    std::string name;
    std::string params;
    enum class Status { Pass, Fail, Truncated } status = Status::Pass;
    long compared = 0;
    std::vector<std::string> witnesses;
    std::map<std::string, std::string> data;

    bool passed() const { return status == Status::Pass; }
    void fail_with(const std::string& witness) {
        status = Status::Fail;
        if (witnesses.size() < 8) witnesses.push_back(witness);
    }
    void absorb(const MatchResult& m, const std::string& context) {
        compared += m.compared;
        if (!m.ok) fail_with(context + " " + m.mismatch);
    }
    std::string status_str() const {
        switch (status) {
            case Status::Pass: return "pass";
            case Status::Fail: return "fail";
            default: return "truncated";
        }
    }
};

struct AlgebraConfig {
    Variant variant = Variant::VLShifted;
    long p = 2;
    long q = 1;
    long even_n = 1;
    Rational cutoff{3};
};

/**
 * A materialized algebra: basis space, mode engine, vacuum and conformal vector,
 * Virasoro modes, screening operators, and the untwisted verification sweeps.
 * Construction runs the conformal calibration assertions.
 */
class Algebra {
public:
    explicit Algebra(AlgebraConfig cfg);

    const AlgebraConfig& config() const { return cfg_; }
    const FockSpace& space() const { return space_; }
    ModeEngine& engine() { return engine_; }
    const Rational& cutoff() const { return space_.cutoff(); }

    long vacuum_index() const { return vacuum_; }
    Vec vacuum() const { return space_.basis_vec(vacuum_); }
    const Vec& conformal() const { return omega_; }

    /** L(n) as a graded operator, cached per n. */
    const GradedOperator& virasoro(long n);
    /** Y_n(u) for homogeneous u. */
    GradedOperator mode_operator(const Vec& u, long n);
    Vec apply_l(long n, const Vec& v);

    /** The screening current e^{gamma/q} (Q) or e^{-gamma/p} (Qtilde). */
    long screening_current(ScreenKind which) const;
    /** Residue of the screening current's vertex operator, a degree-0 operator. */
    GradedOperator screening(ScreenKind which);

    Rational central_charge();

    /** Startup assertions: L(0) reproduces every block weight, L(-1)1 = 0, unit screen weights. */
    void calibrate();

    AxiomReport check_identity();
    AxiomReport check_creation();
    AxiomReport check_translation();
    AxiomReport check_skew_symmetry();
    AxiomReport check_commutator_formula(long seed, long max_triples);
    AxiomReport check_weak_commutativity(long n_max);
    AxiomReport check_weak_associativity(long seed, long max_triples);
    AxiomReport check_virasoro_bracket();

    /** Deterministic triple subsample used by the big sweeps; full range when within budget. */
    std::vector<std::tuple<long, long, long>> sample_triples(long seed, long max_triples) const;

private:
    static LatticeShape make_shape(const AlgebraConfig& cfg);

    AlgebraConfig cfg_;
    FockSpace space_;
    ModeEngine engine_;
    long vacuum_ = -1;
    Vec omega_;
    std::map<long, GradedOperator> virasoro_;
};

}  // namespace voacert
