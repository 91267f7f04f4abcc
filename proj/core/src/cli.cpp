#include "ensys/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "ensys/compiler.hpp"
#include "ensys/enumerator.hpp"
#include "ensys/solver.hpp"
#include "ensys/system.hpp"
#include "ensys/verifier.hpp"

namespace ensys {

namespace {

constexpr std::uint64_t kNoLimit = std::numeric_limits<std::uint64_t>::max();

void print_tuple(std::ostream& out, const Assignment& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out << ' ';
        out << x[i];
    }
    out << '\n';
}

Int parse_int(const std::string& text, const char* flag) {
    try {
        return Int(text);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(std::string(flag) + ": not an integer: " + text);
    }
}

struct ModeFlags {
    unsigned kappa = 2;
    bool omega1 = false;

    void attach(CLI::App* sub) {
        auto* k = sub->add_option("--kappa", kappa, "keep systems with fewer than K solutions")
                      ->check(CLI::Range(2u, 1000u));
        auto* o = sub->add_flag("--omega1", omega1, "keep every solvable system");
        k->excludes(o);
        o->excludes(k);
    }
    Mode mode() const { return omega1 ? Mode::omega1() : Mode::kappa_mode(kappa); }
};

void attach_workers(CLI::App* sub, unsigned& workers) {
    sub->add_option("--workers", workers, "parallel scan width; never changes output")
        ->check(CLI::Range(1u, 256u))
        ->envname("ENSYS_WORKERS");
}

int run_solve(const std::string& path, const std::string& bound, std::uint64_t cap,
              std::uint64_t node_limit, std::ostream& out) {
    System s = parse_system_file(path);
    SolveBudget budget;
    budget.bound = parse_int(bound, "--bound");
    if (cap != kNoLimit) budget.cap = static_cast<std::size_t>(cap);
    budget.node_limit = node_limit;
    SolveResult res = solve_in_box(s, budget);
    for (const auto& sol : res.solutions) print_tuple(out, sol);
    out << "status=" << to_string(res.status) << " solutions=" << res.solutions.size()
        << " nodes=" << res.nodes << '\n';
    return res.status == SolveStatus::BudgetExhausted ? 3 : 0;
}

int run_beta(unsigned n, std::uint64_t m, const Mode& mode, unsigned workers, std::ostream& out) {
    std::uint64_t v = beta_value(n, m, mode, workers);
    out << "n=" << n << " m=" << m << " mode=" << mode.str() << " value=" << v << '\n';
    return 0;
}

int run_limit(unsigned n, const Mode& mode, unsigned workers, std::uint64_t max_m,
              const std::string& cache, bool restart, std::ostream& out) {
    LimitStream stream(n, mode, workers);
    if (!cache.empty()) stream.attach_cache(cache, restart);
    while (stream.next_m() <= max_m) {
        BetaRecord rec = stream.next();
        out << "m=" << rec.m << " value=" << rec.value << " stable_for=" << stream.stable_for()
            << '\n';
        out.flush();
    }
    return 0;
}

int run_verify(const std::string& family, unsigned param, bool unique_check,
               std::uint64_t node_limit, std::ostream& out, std::ostream& err) {
    auto fam = parse_family(family);
    if (!fam) {
        err << "error: unknown family: " << family << '\n';
        return 2;
    }
    FamilyWitness w;
    try {
        w = family_witness(*fam, param);
    } catch (const VerifyError& e) {
        err << "error: " << e.what() << '\n';
        out << "family=" << family << " param=" << param << " ok=false\n";
        return 1;
    }
    bool ok = true;
    std::size_t found = 0;
    if (unique_check) {
        SolveBudget budget;
        budget.bound = w.claimed_max;
        budget.node_limit = node_limit;
        SolveResult res = solve_in_box(w.system, budget);
        if (res.status == SolveStatus::BudgetExhausted)
            throw BudgetError("verify: node limit hit before the box was exhausted");
        found = res.solutions.size();
        ok = std::find(res.solutions.begin(), res.solutions.end(), w.solution) !=
             res.solutions.end();
    }
    out << "family=" << family << " param=" << param << " ok=" << (ok ? "true" : "false")
        << " max=" << w.claimed_max;
    if (unique_check) out << " solutions=" << found;
    out << '\n';
    return ok ? 0 : 1;
}

int run_compile(const std::string& poly, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
    Polynomial d = parse_poly(poly);
    CompilationResult r = compile_to_system(d);
    std::string text = "# poly " + d.str() + "\n# base variables 1.." + std::to_string(r.p) + "\n" +
                       format_system(r.system);
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(out_path);
        f << text;
        if (!f.flush()) {
            err << "error: cannot write " << out_path << '\n';
            return 2;
        }
        out << "p=" << r.p << " vars=" << r.system.n() << " atoms=" << r.system.size() << '\n';
    }
    return 0;
}

int run_dioph(const std::string& path, std::ostream& out) {
    out << dioph(parse_system_file(path)).str() << '\n';
    return 0;
}

int run_build_sn(const std::string& phi_path, unsigned n, std::ostream& out) {
    out << format_system(build_sn(parse_system_file(phi_path), n));
    return 0;
}

int run_pell(unsigned k, unsigned steps, std::ostream& out) {
    PellSolution s = pell_minimal(k);
    out << "k=" << s.k << " x=" << s.x << " y=" << s.y << '\n';
    for (unsigned i = 0; i < steps; ++i) {
        s = pell_next(s);
        out << "k=" << s.k << " x=" << s.x << " y=" << s.y << '\n';
    }
    return 0;
}

int run_find_all(const std::string& poly, const std::string& oracle_bound, unsigned max_m,
                 std::ostream& out) {
    Polynomial d = parse_poly(poly);
    auto res = find_all_conditional(d, bounded_search_oracle(parse_int(oracle_bound, "--bound")),
                                    max_m);
    if (!res) throw BudgetError("oracle kept answering yes up to --max-m");
    for (const auto& sol : res->solutions) print_tuple(out, sol);
    out << "m=" << res->m << " solutions=" << res->solutions.size() << '\n';
    return 0;
}

int run_bound_cond(const std::string& poly, const std::string& oracle_bound, unsigned max_m,
                   std::ostream& out) {
    Polynomial d = parse_poly(poly);
    auto m =
        bound_conditional(d, bounded_search_oracle(parse_int(oracle_bound, "--bound")), max_m);
    if (!m) throw BudgetError("oracle kept answering yes up to --max-m");
    out << "m=" << *m << '\n';
    return 0;
}

}  // namespace

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"workbench for systems of unit, sum and product equations"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "enumerate box solutions of a system file");
    std::string solve_path, solve_bound;
    std::uint64_t solve_cap = kNoLimit, solve_nodes = kNoLimit;
    solve->add_option("--system", solve_path, "system text file")
        ->required()
        ->check(CLI::ExistingFile);
    solve->add_option("--bound", solve_bound, "inclusive box edge")->required();
    solve->add_option("--cap", solve_cap, "stop after this many solutions");
    solve->add_option("--node-limit", solve_nodes, "abort after this many branch decisions");

    auto* beta = app.add_subcommand("beta", "value of one enumeration step");
    unsigned beta_n = 1, beta_workers = 1;
    std::uint64_t beta_m = 0;
    ModeFlags beta_mode;
    beta->add_option("--n", beta_n, "tuple length")->required()->check(CLI::Range(1u, 8u));
    beta->add_option("--m", beta_m, "box edge")->required();
    beta_mode.attach(beta);
    attach_workers(beta, beta_workers);

    auto* limit = app.add_subcommand("limit", "stream values for m = 0, 1, 2, ...");
    unsigned limit_n = 1, limit_workers = 1;
    std::uint64_t limit_max_m = kNoLimit;
    std::string limit_cache;
    bool limit_restart = false;
    ModeFlags limit_mode;
    limit->add_option("--n", limit_n, "tuple length")->required()->check(CLI::Range(1u, 8u));
    limit_mode.attach(limit);
    limit->add_option("--max-m", limit_max_m, "stop after this m (default: stream forever)");
    limit->add_option("--cache", limit_cache, "JSONL resume file")->envname("ENSYS_CACHE");
    limit->add_flag("--restart", limit_restart, "discard an incompatible cache instead of failing");
    attach_workers(limit, limit_workers);

    auto* verify = app.add_subcommand("verify", "check a closed-form witness family");
    std::string verify_family;
    unsigned verify_param = 1;
    bool verify_unique = false;
    std::uint64_t verify_nodes = kNoLimit;
    verify->add_option("--family", verify_family, "intro1|intro2|thm2|thm3|thm4|uncond")
        ->required();
    verify->add_option("--param", verify_param, "family parameter n")->required();
    verify->add_flag("--unique-check", verify_unique,
                     "also enumerate every box solution below the witness maximum");
    verify->add_option("--node-limit", verify_nodes, "branch budget for --unique-check");

    auto* ll = app.add_subcommand("lucas-lehmer", "Mersenne primality of 2^p - 1");
    unsigned ll_p = 3;
    ll->add_option("--p", ll_p, "odd prime exponent")->required();

    auto* pell = app.add_subcommand("pell", "solutions of x^2 + 1 = 5^(2k+1) y^2");
    unsigned pell_k = 0, pell_steps = 0;
    pell->add_option("--k", pell_k, "exponent parameter")->required();
    pell->add_option("--steps", pell_steps, "extra solutions beyond the minimal one");

    auto* compile = app.add_subcommand("compile", "polynomial to an equivalent system");
    std::string compile_poly, compile_out;
    compile->add_option("--poly", compile_poly, "polynomial, e.g. \"x1^2 - x2\"")->required();
    compile->add_option("--out", compile_out, "write the system here instead of stdout");

    auto* dioph_cmd = app.add_subcommand("dioph", "system to one polynomial equation");
    std::string dioph_path;
    dioph_cmd->add_option("--system", dioph_path, "system text file")
        ->required()
        ->check(CLI::ExistingFile);

    auto* build = app.add_subcommand("build-sn", "pad a solved system out to n variables");
    std::string build_phi;
    unsigned build_n = 0;
    build->add_option("--phi", build_phi, "system text file to embed")
        ->required()
        ->check(CLI::ExistingFile);
    build->add_option("--n", build_n, "target variable count")->required();

    auto* find_all = app.add_subcommand("find-all", "all roots of a polynomial, oracle driven");
    std::string fa_poly, fa_bound;
    unsigned fa_max_m = 1000;
    find_all->add_option("--poly", fa_poly, "polynomial over x1..xp")->required();
    find_all->add_option("--bound", fa_bound, "search box edge for the oracle")->required();
    find_all->add_option("--max-m", fa_max_m, "give up once m reaches this");

    auto* bound_cond = app.add_subcommand("bound-cond", "first m the oracle rejects");
    std::string bc_poly, bc_bound;
    unsigned bc_max_m = 1000;
    bound_cond->add_option("--poly", bc_poly, "polynomial over x1..xp")->required();
    bound_cond->add_option("--bound", bc_bound, "search box edge for the oracle")->required();
    bound_cond->add_option("--max-m", bc_max_m, "give up once m reaches this");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("ensys");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(solve))
            return run_solve(solve_path, solve_bound, solve_cap, solve_nodes, out);
        if (app.got_subcommand(beta))
            return run_beta(beta_n, beta_m, beta_mode.mode(), beta_workers, out);
        if (app.got_subcommand(limit))
            return run_limit(limit_n, limit_mode.mode(), limit_workers, limit_max_m, limit_cache,
                             limit_restart, out);
        if (app.got_subcommand(verify))
            return run_verify(verify_family, verify_param, verify_unique, verify_nodes, out, err);
        if (app.got_subcommand(ll)) {
            const bool prime = lucas_lehmer(ll_p) == Primality::Prime;
            out << "prime=" << (prime ? "true" : "false") << '\n';
            return 0;
        }
        if (app.got_subcommand(pell)) return run_pell(pell_k, pell_steps, out);
        if (app.got_subcommand(compile)) return run_compile(compile_poly, compile_out, out, err);
        if (app.got_subcommand(dioph_cmd)) return run_dioph(dioph_path, out);
        if (app.got_subcommand(build)) return run_build_sn(build_phi, build_n, out);
        if (app.got_subcommand(find_all)) return run_find_all(fa_poly, fa_bound, fa_max_m, out);
        if (app.got_subcommand(bound_cond)) return run_bound_cond(bc_poly, bc_bound, bc_max_m, out);
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const VerifyError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const CacheError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const PolyParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace ensys
