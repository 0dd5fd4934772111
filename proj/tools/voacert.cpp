#include "voacert/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace voacert;

struct CliOptions {
    RunConfig rc;
    std::string variant = "Vpq";
    std::string cutoff = "3";
    std::string twist = "none";
    std::string report_path;
    long v_index = 0;
    long w_index = 0;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--variant", opt.variant,
                    "algebra variant: VL, VL-standard, V0, V0o, or Vpq")
        ->capture_default_str();
    cmd->add_option("-p,--p", opt.rc.p, "first lattice parameter")->capture_default_str();
    cmd->add_option("-q,--q", opt.rc.q, "second lattice parameter")->capture_default_str();
    cmd->add_option("-n,--n", opt.rc.even_n, "half the Gram number for VL-standard")
        ->capture_default_str();
    cmd->add_option("--cutoff", opt.cutoff, "weight cutoff, a rational like 3 or 5/2")
        ->capture_default_str();
    cmd->add_option("--twist", opt.twist,
                    "twisting: none, Q-screen, Qtilde-screen, or heisenberg(r)")
        ->capture_default_str();
    cmd->add_option("--seed", opt.rc.seed, "seed for triple sampling")->capture_default_str();
    cmd->add_option("--max-triples", opt.rc.max_triples,
                    "sampling threshold for triple sweeps")
        ->capture_default_str();
    cmd->add_option("--cache", opt.rc.cache_dir,
                    "mode cache directory (defaults to VOACERT_CACHE_DIR)");
    cmd->add_option("--report", opt.report_path, "write the report here instead of stdout");
}

RunConfig resolve(CliOptions& opt, const std::string& suite) {
    opt.rc.variant = parse_variant(opt.variant);
    opt.rc.cutoff = Rational::parse(opt.cutoff);
    opt.rc.twist = parse_twist(opt.twist);
    opt.rc.suite = suite;
    if (opt.rc.cache_dir.empty()) {
        if (const char* env = std::getenv("VOACERT_CACHE_DIR")) opt.rc.cache_dir = env;
    }
    validate(opt.rc);
    return opt.rc;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open report file '" + path + "'");
    out << text;
}

struct CacheGuard {
    Algebra& alg;
    std::string path, header;
    CacheGuard(Algebra& a, const RunConfig& rc) : alg(a) {
        if (rc.cache_dir.empty()) return;
        std::filesystem::create_directories(rc.cache_dir);
        path = cache_file(rc.cache_dir, rc);
        header = cache_header(rc, alg.space());
        alg.engine().load_cache(path, header);
    }
    void save() {
        if (!path.empty()) alg.engine().save_cache(path, header);
    }
};

int run_check(CliOptions& opt, const std::string& suite) {
    RunConfig rc = resolve(opt, suite);
    Algebra alg(algebra_config(rc));
    CacheGuard cache(alg, rc);
    RunResult res = run_suite(alg, rc);
    cache.save();
    emit(render_report(rc, alg, res), opt.report_path);
    return res.passed() ? 0 : 1;
}

int run_twist_print(CliOptions& opt) {
    RunConfig rc = resolve(opt, "dims");
    Algebra alg(algebra_config(rc));
    CacheGuard cache(alg, rc);
    Twist tw = Twist::make(alg, rc.twist);
    std::ostringstream os;
    os << "voacert 1\n";
    os << "run " << config_echo(rc) << "\n";
    os << "basis " << alg.space().basis_hash() << "\n";
    const FockSpace& sp = alg.space();
    if (opt.v_index < 0 || opt.v_index >= sp.dim() || opt.w_index < 0 || opt.w_index >= sp.dim())
        throw UsageError("--v and --w must index basis elements, 0 <= i < " +
                         std::to_string(sp.dim()));
    os << "v " << opt.v_index << " = " << sp.name(opt.v_index) << "\n";
    os << "w " << opt.w_index << " = " << sp.name(opt.w_index) << "\n";
    os << "g(v) = " << tw.apply_g(sp.basis_vec(opt.v_index)).str() << "\n";
    os << "Delta(x)v = " << tw.delta_basis(opt.v_index).str() << "\n";
    os << "Y^g(v,x)w = " << tw.twisted_vertex_basis(opt.v_index, opt.w_index).str() << "\n";
    cache.save();
    emit(os.str(), opt.report_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact finite-cutoff certification of lattice vertex algebras "
                 "and their twisted modules"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "voacert 1.0.0");

    CliOptions opt;
    std::string suite = "all";

    CLI::App* build = app.add_subcommand("build", "construct the algebra and warm the mode cache");
    add_common(build, opt);

    CLI::App* check = app.add_subcommand("check", "run a verification suite");
    add_common(check, opt);
    {
        std::string names;
        for (const auto& n : voacert::suite_names()) names += (names.empty() ? "" : ", ") + n;
        check->add_option("--suite", suite, "one of: " + names)->capture_default_str();
    }

    CLI::App* dims = app.add_subcommand("dims", "print the graded dimension table");
    add_common(dims, opt);

    CLI::App* twist = app.add_subcommand("twist", "print the twisted operator data for one pair");
    add_common(twist, opt);
    twist->add_option("--v", opt.v_index, "basis index of the inserted vector")
        ->capture_default_str();
    twist->add_option("--w", opt.w_index, "basis index of the target vector")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
        if (build->parsed()) {
            RunConfig rc = resolve(opt, "dims");
            Algebra alg(algebra_config(rc));
            CacheGuard cache(alg, rc);
            const FockSpace& sp = alg.space();
            for (long i = 0; i < sp.dim(); ++i)
                for (long j = 0; j < sp.dim(); ++j) alg.engine().vertex_series(i, j);
            cache.save();
            RunResult res = run_suite(alg, rc);
            emit(render_report(rc, alg, res), opt.report_path);
            return 0;
        }
        if (check->parsed()) return run_check(opt, suite);
        if (dims->parsed()) return run_check(opt, "dims");
        if (twist->parsed()) return run_twist_print(opt);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const voacert::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
