#pragma once

#include "voacert/twist.hpp"

#include <map>
#include <string>
#include <vector>

namespace voacert {

/** Everything one run needs: the algebra to build, the twist to apply, what to verify. */
struct RunConfig {
    Variant variant = Variant::VLShifted;
    long p = 2;
    long q = 1;
    long even_n = 1;
    Rational cutoff{3};
    TwistSpec twist;
    std::string suite = "all";
    long seed = 1;
    long max_triples = 20000;
    std::string cache_dir;
};

/** Rejects inconsistent parameters (non-coprime p,q and the like) with a UsageError. */
void validate(const RunConfig& rc);

AlgebraConfig algebra_config(const RunConfig& rc);

/** One-line deterministic echo of every report-relevant field (the cache directory is not one). */
std::string config_echo(const RunConfig& rc);

const std::vector<std::string>& suite_names();

struct RunResult {
    std::vector<AxiomReport> reports;
    std::vector<std::pair<std::string, std::string>> facts;
    bool passed() const;
};

/** Runs the configured suite, collecting check reports and the graded dimension facts. */
RunResult run_suite(Algebra& alg, const RunConfig& rc);

/** Renders a run deterministically, line by line; equal inputs give byte-equal output. */
std::string render_report(const RunConfig& rc, const Algebra& alg, const RunResult& res);

/** Cache file path for this algebra inside `dir`, together with the header that guards it. */
std::string cache_file(const std::string& dir, const RunConfig& rc);
std::string cache_header(const RunConfig& rc, const FockSpace& space);

}  // namespace voacert
