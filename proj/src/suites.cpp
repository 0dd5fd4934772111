#include "voacert/suites.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <sstream>

namespace voacert {

namespace {

long floor_long(const Rational& r) { return r.floor().convert_to<long>(); }

AxiomReport conformal_calibration(Algebra& alg) {
    AxiomReport r("conformal-calibration",
                  "vacuum and conformal vector weights, screening current weights, "
                  "L(1) annihilation, central charge");
    Vec vac = alg.vacuum();
    ++r.compared;
    if (!alg.apply_l(0, vac).is_zero()) r.fail_with("L(0)1 != 0");
    ++r.compared;
    if (!alg.apply_l(-1, vac).is_zero()) r.fail_with("L(-1)1 != 0");
    ++r.compared;
    if (!(alg.apply_l(0, alg.conformal()) == alg.conformal().scaled(Scalar(Rational(2)))))
        r.fail_with("omega is not of weight 2");
    for (ScreenKind kind : {ScreenKind::Q, ScreenKind::Qtilde}) {
        std::string label = kind == ScreenKind::Q ? "Q" : "Qtilde";
        long cur;
        try {
            cur = alg.screening_current(kind);
        } catch (const GeneratorAbsentError&) {
            r.data["current(" + label + ")"] = "absent";
            continue;
        }
        Vec uvec = alg.space().basis_vec(cur);
        ++r.compared;
        if (!(alg.space().weight(cur) == Rational(1)))
            r.fail_with("the " + label + " current is not of weight 1");
        ++r.compared;
        if (!alg.apply_l(1, uvec).is_zero())
            r.fail_with("L(1) does not annihilate the " + label + " current");
        r.data["current(" + label + ")"] = alg.space().name(cur);
    }
    r.data["central_charge"] = alg.central_charge().str();
    return r;
}

AxiomReport screening_facts(Algebra& alg) {
    AxiomReport r("screening", "the residue operators kill the vacuum and the conformal vector, "
                               "square to zero, and have vanishing one-mode self-pairing");
    for (ScreenKind kind : {ScreenKind::Q, ScreenKind::Qtilde}) {
        std::string label = kind == ScreenKind::Q ? "Q" : "Qtilde";
        long cur;
        try {
            cur = alg.screening_current(kind);
        } catch (const GeneratorAbsentError&) {
            r.data[label] = "absent";
            continue;
        }
        Vec uvec = alg.space().basis_vec(cur);
        GradedOperator op = alg.screening(kind);
        ++r.compared;
        if (!op.apply(alg.space(), alg.vacuum()).is_zero()) r.fail_with(label + " 1 != 0");
        ++r.compared;
        if (!op.apply(alg.space(), alg.conformal()).is_zero()) r.fail_with(label + " omega != 0");
        ++r.compared;
        if (!alg.engine().mode(uvec, Rational(0), uvec).is_zero())
            r.fail_with("Y_0(u)u != 0 for the " + label + " current");
        ++r.compared;
        if (!op.compose(op).is_zero()) r.fail_with(label + "^2 != 0");
        Vec pairing = alg.engine().mode(uvec, Rational(1), uvec);
        ++r.compared;
        if (!pairing.is_zero() && !(pairing == alg.vacuum().scaled(pairing.coeff(alg.vacuum_index()))))
            r.fail_with("Y_1(u)u is not a vacuum multiple for the " + label + " current");
        r.data["mu(" + label + ")"] = pairing.coeff(alg.vacuum_index()).str();
    }
    return r;
}

void untwisted_suite(Algebra& alg, const RunConfig& rc, std::vector<AxiomReport>& out) {
    long n_max = floor_long(Rational(2) * rc.cutoff + alg.space().shape().gram) + 1;
    out.push_back(alg.check_identity());
    out.push_back(alg.check_creation());
    out.push_back(alg.check_translation());
    out.push_back(alg.check_skew_symmetry());
    out.push_back(alg.check_commutator_formula(rc.seed, rc.max_triples));
    out.push_back(alg.check_weak_commutativity(n_max));
    out.push_back(alg.check_weak_associativity(rc.seed, rc.max_triples));
    out.push_back(alg.check_virasoro_bracket());
}

void delta_suite(Twist& tw, std::vector<AxiomReport>& out) {
    out.push_back(tw.check_delta_commutator());
    out.push_back(tw.check_phi_translation());
    out.push_back(tw.check_delta_associativity());
    out.push_back(tw.check_delta_translation());
}

void certificate_suite(Twist& tw, std::vector<AxiomReport>& out) {
    out.push_back(tw.check_twisted_identity());
    out.push_back(tw.check_twisted_translation());
    out.push_back(tw.check_equivariance());
    out.push_back(tw.check_log_structure());
    out.push_back(tw.check_grading());
    out.push_back(tw.check_twist_invariants());
    out.push_back(tw.check_delta_associativity());
    out.push_back(tw.check_functorial_smoke());
}

void finite_order_suite(Twist& tw, const RunConfig& rc, std::vector<AxiomReport>& out) {
    certificate_suite(tw, out);
    out.push_back(tw.check_conformal_image());
    out.push_back(tw.check_monodromy_support());
    out.push_back(tw.check_twisted_jacobi(rc.seed, rc.max_triples));
}

}  // namespace

void validate(const RunConfig& rc) {
    if (rc.variant == Variant::VLStandard) {
        if (rc.even_n < 1) throw UsageError("the lattice parameter n must be positive");
    } else {
        if (rc.p < 1 || rc.q < 1) throw UsageError("p and q must be positive");
        if (std::gcd(rc.p, rc.q) != 1) throw UsageError("p and q must be coprime");
    }
    if (rc.cutoff < Rational(2)) throw UsageError("the cutoff must be at least 2");
    if (rc.seed < 0) throw UsageError("the seed must be nonnegative");
    if (rc.max_triples < 1) throw UsageError("max-triples must be positive");
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), rc.suite) == names.end())
        throw UsageError("unknown suite '" + rc.suite + "'");
}

AlgebraConfig algebra_config(const RunConfig& rc) {
    AlgebraConfig cfg;
    cfg.variant = rc.variant;
    cfg.p = rc.p;
    cfg.q = rc.q;
    cfg.even_n = rc.even_n;
    cfg.cutoff = rc.cutoff;
    return cfg;
}

std::string config_echo(const RunConfig& rc) {
    std::ostringstream os;
    os << "variant=" << variant_name(rc.variant);
    if (rc.variant == Variant::VLStandard)
        os << " n=" << rc.even_n;
    else
        os << " p=" << rc.p << " q=" << rc.q;
    os << " cutoff=" << rc.cutoff.str() << " twist=" << twist_name(rc.twist)
       << " suite=" << rc.suite << " seed=" << rc.seed << " max-triples=" << rc.max_triples;
    return os.str();
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"untwisted", "conformal", "screening",
                                                   "delta",     "omega",     "certificate",
                                                   "finite-order", "dims",   "all"};
    return names;
}

bool RunResult::passed() const {
    for (const auto& r : reports)
        if (!r.passed()) return false;
    return true;
}

RunResult run_suite(Algebra& alg, const RunConfig& rc) {
    RunResult res;
    for (const auto& [h, idxs] : alg.space().blocks())
        res.facts.emplace_back("dim " + h.str(), std::to_string(idxs.size()));
    res.facts.emplace_back("total-dim", std::to_string(alg.space().dim()));
    res.facts.emplace_back("central-charge", alg.central_charge().str());

    const bool wants_twist = rc.suite == "delta" || rc.suite == "omega" ||
                             rc.suite == "certificate" || rc.suite == "finite-order" ||
                             rc.suite == "all" || rc.twist.kind != TwistSpec::Kind::None;
    std::unique_ptr<Twist> tw;
    if (wants_twist) {
        tw = std::make_unique<Twist>(Twist::make(alg, rc.twist));
        res.facts.emplace_back("twist", tw->label());
        res.facts.emplace_back("mu", tw->mu().str());
        res.facts.emplace_back("nilpotency-index", std::to_string(tw->log_index()));
        res.facts.emplace_back("order", tw->finite_order() ? std::to_string(tw->order())
                                                           : std::string("infinite"));
        std::string spec;
        for (const auto& a : tw->spectrum()) spec += (spec.empty() ? "" : ",") + a.str();
        res.facts.emplace_back("spectrum", spec.empty() ? "0" : spec);
        Rational depth;
        auto tdims = tw->twisted_dims(depth);
        res.facts.emplace_back("twisted-depth", depth.str());
        for (const auto& [nu, count] : tdims)
            res.facts.emplace_back("twisted-dim " + nu.str(), std::to_string(count));
    }

    if (rc.suite == "dims") return res;
    if (rc.suite == "untwisted") {
        untwisted_suite(alg, rc, res.reports);
    } else if (rc.suite == "conformal") {
        res.reports.push_back(conformal_calibration(alg));
        res.reports.push_back(alg.check_virasoro_bracket());
    } else if (rc.suite == "screening") {
        res.reports.push_back(screening_facts(alg));
    } else if (rc.suite == "delta") {
        delta_suite(*tw, res.reports);
    } else if (rc.suite == "omega") {
        res.reports.push_back(tw->check_conformal_image());
    } else if (rc.suite == "certificate") {
        certificate_suite(*tw, res.reports);
    } else if (rc.suite == "finite-order") {
        finite_order_suite(*tw, rc, res.reports);
    } else {
        untwisted_suite(alg, rc, res.reports);
        res.reports.push_back(conformal_calibration(alg));
        res.reports.push_back(screening_facts(alg));
        delta_suite(*tw, res.reports);
        res.reports.push_back(tw->check_conformal_image());
        certificate_suite(*tw, res.reports);
        if (tw->finite_order()) {
            res.reports.push_back(tw->check_monodromy_support());
            res.reports.push_back(tw->check_twisted_jacobi(rc.seed, rc.max_triples));
        }
    }
    return res;
}

std::string render_report(const RunConfig& rc, const Algebra& alg, const RunResult& res) {
    std::ostringstream os;
    os << "voacert 1\n";
    os << "run " << config_echo(rc) << "\n";
    os << "convention cocycle=trivial\n";
    os << "basis " << alg.space().basis_hash() << "\n";
    for (const auto& [k, v] : res.facts) os << "fact " << k << " = " << v << "\n";
    long passed = 0, failed = 0;
    for (const auto& r : res.reports) {
        os << "check " << r.name << " " << r.status_str() << " compared=" << r.compared << "\n";
        for (const auto& [k, v] : r.data) os << "check-data " << r.name << " " << k << " = " << v << "\n";
        for (const auto& w : r.witnesses) os << "check-witness " << r.name << " " << w << "\n";
        (r.passed() ? passed : failed) += 1;
    }
    os << "summary checks=" << res.reports.size() << " passed=" << passed << " failed=" << failed
       << "\n";
    os << "status " << (res.passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string cache_file(const std::string& dir, const RunConfig& rc) {
    std::ostringstream os;
    os << dir << "/modes-" << variant_name(rc.variant);
    if (rc.variant == Variant::VLStandard)
        os << "-n" << rc.even_n;
    else
        os << "-p" << rc.p << "q" << rc.q;
    os << "-c" << rc.cutoff.num().str() << "_" << rc.cutoff.den().str() << ".txt";
    return os.str();
}

std::string cache_header(const RunConfig& rc, const FockSpace& space) {
    std::ostringstream os;
    os << "algebra variant=" << variant_name(rc.variant) << " p=" << rc.p << " q=" << rc.q
       << " n=" << rc.even_n << " cutoff=" << rc.cutoff.str() << " basis=" << space.basis_hash();
    return os.str();
}

}  // namespace voacert
