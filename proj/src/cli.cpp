#include "omlkit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "omlkit/accept.hpp"
#include "omlkit/equations.hpp"
#include "omlkit/freeoml.hpp"
#include "omlkit/hilbert.hpp"
#include "omlkit/model.hpp"
#include "omlkit/report.hpp"
#include "omlkit/rng.hpp"
#include "omlkit/term.hpp"

namespace oml {

namespace {

constexpr std::uint64_t kExhaustiveGuard = std::uint64_t{1} << 30;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string join_args(const std::vector<std::string>& args) {
    std::string out;
    for (const std::string& a : args) {
        if (!out.empty())
            out += ' ';
        out += a;
    }
    return out;
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        while (!item.empty() && item.front() == ' ')
            item.erase(item.begin());
        while (!item.empty() && item.back() == ' ')
            item.pop_back();
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

Model load_model_arg(const std::string& arg) {
    try {
        return Model::builtin(arg);
    } catch (const UnknownName&) {
        // fall through to the filesystem
    }
    std::ifstream file(arg);
    if (!file)
        throw UnknownName("'" + arg + "' is neither a built-in model nor a readable file");
    std::ostringstream text;
    text << file.rdbuf();
    return Model::load(text.str());
}

std::string witness_text(const Assignment& witness) {
    std::string out;
    for (const auto& [var, id] : witness) {
        if (!out.empty())
            out += ' ';
        out += var + "=" + id;
    }
    return out;
}

void add_check_records(Report& report, const CheckResult& r) {
    report.add("verdict", r.holds ? "holds" : "fails");
    report.add("assignments_checked", static_cast<long long>(r.assignments_checked));
    if (!r.note.empty())
        report.add("note", r.note);
    if (r.witness)
        report.add("witness", witness_text(*r.witness));
}

Term parse_op_alias(const std::string& text) {
    Term a = Term::variable("a");
    Term b = Term::variable("b");
    if (text == "meet")
        return Term::meet(a, b);
    if (text == "join")
        return Term::join(a, b);
    if (text == "comp")
        return Term::complement(a);
    if (text.size() == 3 && text.starts_with("eq") && text[2] >= '0' && text[2] <= '5')
        return Term::equivalence(text[2] - '0', a, b);
    if (text.size() == 5 && text.starts_with("impl") && text[4] >= '0' && text[4] <= '5')
        return Term::implication(text[4] - '0', a, b);
    return parse(text);
}

struct EquationChoice {
    std::string eq_alias;
    std::string lhs_text;
    std::string rel_text = "=";
    std::string rhs_text;

    bool configured() const { return !eq_alias.empty() || !lhs_text.empty(); }

    // name (for the echo), lhs, rel, rhs
    std::tuple<std::string, Term, Rel, Term> resolve() const {
        if (!eq_alias.empty()) {
            const Equation& eq = equation_by_name(eq_alias);
            return {eq.name, eq.lhs(), eq.rel, eq.rhs()};
        }
        if (lhs_text.empty() || rhs_text.empty())
            throw UnknownName("an equation needs --eq or both --lhs and --rhs");
        Rel rel;
        if (rel_text == "=" || rel_text == "==")
            rel = Rel::Equal;
        else if (rel_text == "<=")
            rel = Rel::Leq;
        else
            throw UnknownName("--rel must be '=' or '<='");
        return {lhs_text + " " + rel_text + " " + rhs_text, parse(lhs_text), rel,
                parse(rhs_text)};
    }
};

void attach_equation_options(CLI::App* cmd, EquationChoice& choice) {
    cmd->add_option("--eq", choice.eq_alias, "Built-in equation alias (EQ1..EQ7)");
    cmd->add_option("--lhs", choice.lhs_text, "Left-hand term");
    cmd->add_option("--rel", choice.rel_text, "Relation: = or <=");
    cmd->add_option("--rhs", choice.rhs_text, "Right-hand term");
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns the process exit code.
// ---------------------------------------------------------------------------

int cmd_beran(const std::string& expr, Report& report) {
    Term t = parse(expr);
    int index = beran_index(eval2(t));
    report.add("index", index);
    report.add("term", print(canonical_term(index)));
    return 0;
}

int cmd_table(Report& report) {
    auto computed = product_table();
    const auto& reference = reference_product_table();
    int mismatches = 0;
    for (int i = 0; i < 6; ++i) {
        std::string row;
        for (int j = 0; j < 6; ++j) {
            if (j)
                row += ' ';
            row += std::to_string(computed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
        report.add("row." + std::to_string(i), row);
    }
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            int got = computed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            int want = reference[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (got != want) {
                ++mismatches;
                report.add("diff", "(" + std::to_string(i) + "," + std::to_string(j) +
                                       ") computed " + std::to_string(got) + " published " +
                                       std::to_string(want));
            }
        }
    report.add("entries", 36);
    report.add("match", mismatches == 0 ? "yes" : "no");
    return mismatches == 0 ? 0 : 1;
}

struct CheckOptions {
    std::string model;
    EquationChoice equation;
    std::string law;
    int iff_index = -1;
    int theta_index = -1;
    std::string mode = "exhaustive";
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    bool force = false;
};

int cmd_check(const CheckOptions& opt, Report& report) {
    Model m = load_model_arg(opt.model);
    report.add("model", m.name());

    if (!opt.law.empty()) {
        Law law;
        if (opt.law == "ortholattice")
            law = Law::Ortholattice;
        else if (opt.law == "oml")
            law = Law::Oml;
        else if (opt.law == "woml")
            law = Law::Woml;
        else
            throw UnknownName("--law must be ortholattice, oml or woml");
        report.add("law", opt.law);
        CheckResult r = m.check_law(law);
        add_check_records(report, r);
        return r.holds ? 0 : 1;
    }
    if (opt.iff_index >= 0) {
        report.add("iff", opt.iff_index);
        CheckResult r = m.iff_characterization(opt.iff_index);
        add_check_records(report, r);
        return r.holds ? 0 : 1;
    }
    if (opt.theta_index >= 0) {
        report.add("theta", opt.theta_index);
        ThetaReport r = m.theta_relation(opt.theta_index);
        report.add("pairs", static_cast<long long>(r.pairs.size()));
        report.add("reflexive", r.reflexive ? "yes" : "no");
        report.add("symmetric", r.symmetric ? "yes" : "no");
        report.add("transitive", r.transitive ? "yes" : "no");
        report.add("meet_compatible", r.meet_compatible ? "yes" : "no");
        report.add("join_compatible", r.join_compatible ? "yes" : "no");
        report.add("ortho_compatible", r.ortho_compatible ? "yes" : "no");
        report.add("equivalence", r.is_equivalence() ? "yes" : "no");
        report.add("congruence", r.is_congruence() ? "yes" : "no");
        report.add("identity", r.identity ? "yes" : "no");
        for (const std::string& f : r.failures)
            report.add("failure", f);
        return r.is_congruence() ? 0 : 1;
    }

    auto [name, lhs, rel, rhs] = opt.equation.resolve();
    report.add("equation", name);
    std::vector<std::string> vars = variables(lhs);
    for (const std::string& v : variables(rhs))
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            vars.push_back(v);

    CheckMode mode;
    if (opt.mode == "exhaustive") {
        std::uint64_t total = m.assignment_count(static_cast<int>(vars.size()));
        if (total > kExhaustiveGuard && !opt.force) {
            throw UnknownName("exhaustive run needs " + std::to_string(total) +
                              " assignments, above the 2^30 guard; pass --force to lift it");
        }
        mode = CheckMode::exhaustive();
        report.add("mode", "exhaustive");
    } else if (opt.mode == "random") {
        mode = CheckMode::random(opt.trials, opt.seed);
        report.add("mode", "random");
        report.add("trials", static_cast<long long>(opt.trials));
        report.add("seed", static_cast<long long>(opt.seed));
    } else {
        throw UnknownName("--mode must be exhaustive or random");
    }
    CheckResult r = m.check_equation(lhs, rel, rhs, mode);
    add_check_records(report, r);
    return r.holds ? 0 : 1;
}

struct ClosureOptions {
    std::string seeds = "a,b,a',b',0,1";
    std::string ops = "eq0,eq1,eq2,eq3,eq4,eq5";
};

int cmd_closure(const ClosureOptions& opt, Report& report) {
    std::set<FreeElem> seeds;
    for (const std::string& text : split_csv(opt.seeds))
        seeds.insert(eval_ab(parse(text)));
    std::vector<Term> ops;
    for (const std::string& text : split_csv(opt.ops))
        ops.push_back(parse_op_alias(text));
    report.add("seeds", opt.seeds);
    report.add("ops", opt.ops);

    std::set<FreeElem> reached = closure(seeds, ops);
    std::set<int> indices;
    for (const FreeElem& e : reached)
        indices.insert(beran_index(e));
    std::string list;
    int odd = 0;
    for (int n : indices) {
        if (!list.empty())
            list += ' ';
        list += std::to_string(n);
        if (bool_weight(from_beran(n).bits) % 2 == 1)
            ++odd;
    }
    report.add("reached", static_cast<long long>(indices.size()));
    report.add("indices", list);
    report.add("odd_weight_reached", odd);
    report.add("even_weight_reached", static_cast<long long>(indices.size()) - odd);
    report.add("parity", odd == 0 ? "even_only" : "mixed");
    return 0;
}

struct ValidateOptions {
    std::string model;
    bool gates = false;
};

int cmd_validate(const ValidateOptions& opt, Report& report) {
    Model m = [&] {
        try {
            return load_model_arg(opt.model);
        } catch (const NotALattice& e) {
            report.add("valid", "no");
            report.add("reason", e.what());
            throw;
        } catch (const NotOrtholattice& e) {
            report.add("valid", "no");
            report.add("reason", e.what());
            throw;
        }
    }();
    report.add("model", m.name());
    report.add("elements", m.size());
    report.add("valid", "yes");

    CheckResult woml = m.check_law(Law::Woml);
    CheckResult oml = m.check_law(Law::Oml);
    report.add("law.ortholattice", "holds");
    report.add("law.woml", woml.holds ? "holds" : "fails");
    report.add("law.oml", oml.holds ? "holds" : "fails");
    if (!opt.gates)
        return 0;

    // The five-gate profile for the shipped WOML reconstruction: valid
    // ortholattice, WOML law holds, OML law fails, EQ4 fails, EQ6 holds.
    const Equation& eq4 = equation_by_name("EQ4");
    const Equation& eq6 = equation_by_name("EQ6");
    CheckResult r4 = m.check_equation(eq4.lhs(), eq4.rel, eq4.rhs());
    CheckResult r6 = m.check_equation(eq6.lhs(), eq6.rel, eq6.rhs());
    bool gates_pass = woml.holds && !oml.holds && !r4.holds && r6.holds;
    report.add("gate.woml_law", woml.holds ? "pass" : "FAIL");
    report.add("gate.oml_law_fails", !oml.holds ? "pass" : "FAIL");
    report.add("gate.eq4_fails", !r4.holds ? "pass" : "FAIL");
    if (r4.witness)
        report.add("gate.eq4_witness", witness_text(*r4.witness));
    report.add("gate.eq6_holds", r6.holds ? "pass" : "FAIL");
    report.add("gates", gates_pass ? "pass" : "FAIL");
    return gates_pass ? 0 : 1;
}

struct HilbertOptions {
    int dim = 3;
    EquationChoice equation;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
};

int cmd_hilbert(const HilbertOptions& opt, Report& report) {
    auto [name, lhs, rel, rhs] = opt.equation.resolve();
    report.add("equation", name);
    report.add("dim", opt.dim);
    report.add("trials", static_cast<long long>(opt.trials));
    report.add("seed", static_cast<long long>(opt.seed));
    SubspaceCheckResult r = check_equation_random(opt.dim, lhs, rel, rhs, opt.trials, opt.seed);
    report.add("verdict", r.holds ? "holds" : "fails");
    report.add("trials_checked", static_cast<long long>(r.trials_checked));
    for (const auto& [var, sub] : r.witness)
        report.add("witness." + var, sub.to_string());
    return r.holds ? 0 : 1;
}

int cmd_accept(std::uint64_t seed, Report& report) {
    AcceptanceOutcome outcome = run_acceptance(seed);
    report.add("seed", static_cast<long long>(seed));
    std::istringstream body(outcome.report_body);
    std::string line;
    while (std::getline(body, line)) {
        auto tab = line.find('\t');
        report.add(line.substr(0, tab), tab == std::string::npos ? "" : line.substr(tab + 1));
    }
    return outcome.all_pass ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computation in the two-generator free orthomodular lattice, "
                 "with finite-model and rational-subspace equation checking"};
    app.name("omlkit");
    app.require_subcommand(1);

    std::string beran_expr;
    CLI::App* beran_cmd =
        app.add_subcommand("beran", "Reduce a 1- or 2-variable term to its Beran index");
    beran_cmd->add_option("expr", beran_expr, "Term, e.g. \"a ==0 b\"");
    // terms may start with the prefix complement '-', which option parsing
    // would otherwise claim
    beran_cmd->allow_extras();

    CLI::App* table_cmd = app.add_subcommand(
        "table", "Print the 6x6 (a ->i b) ^ (b ->j a) table and diff it against the published one");

    CheckOptions check_opt;
    CLI::App* check_cmd =
        app.add_subcommand("check", "Check an equation, law, iff-characterization or theta relation");
    check_cmd->add_option("model", check_opt.model, "Built-in model name or model file path")
        ->required();
    attach_equation_options(check_cmd, check_opt.equation);
    check_cmd->add_option("--law", check_opt.law, "ortholattice, oml or woml");
    check_cmd->add_option("--iff", check_opt.iff_index, "Equivalence index 0..5");
    check_cmd->add_option("--theta", check_opt.theta_index, "Equivalence index 0..5");
    check_cmd->add_option("--mode", check_opt.mode, "exhaustive (default) or random");
    check_cmd->add_option("--trials", check_opt.trials, "Random-mode trial count");
    check_cmd->add_option("--seed", check_opt.seed, "Random-mode seed");
    check_cmd->add_flag("--force", check_opt.force, "Lift the 2^30 exhaustive guard");

    ClosureOptions closure_opt;
    CLI::App* closure_cmd =
        app.add_subcommand("closure", "Fixpoint closure of seed elements under term operations");
    closure_cmd->add_option("--seeds", closure_opt.seeds, "Comma-separated seed terms over a,b");
    closure_cmd->add_option("--ops", closure_opt.ops,
                            "Comma-separated ops: eq0..eq5, impl0..impl5, meet, join, comp, "
                            "or any term in a,b");

    ValidateOptions validate_opt;
    CLI::App* validate_cmd = app.add_subcommand("validate", "Validate a model file or built-in");
    validate_cmd->add_option("model", validate_opt.model, "Built-in model name or file path")
        ->required();
    validate_cmd->add_flag("--gates", validate_opt.gates,
                           "Also run the woml20 five-gate profile");

    HilbertOptions hilbert_opt;
    CLI::App* hilbert_cmd = app.add_subcommand(
        "hilbert", "Check an equation over random rational subspaces of Q^dim");
    hilbert_cmd->add_option("--dim", hilbert_opt.dim, "Ambient dimension")->check(CLI::Range(1, 8));
    attach_equation_options(hilbert_cmd, hilbert_opt.equation);
    hilbert_cmd->add_option("--trials", hilbert_opt.trials, "Trial count");
    hilbert_cmd->add_option("--seed", hilbert_opt.seed, "Master seed");

    std::uint64_t accept_seed = 0;
    CLI::App* accept_cmd = app.add_subcommand("accept", "Run the full acceptance suite");
    accept_cmd->add_option("--seed", accept_seed, "Master seed for the random portions");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Report report;
    report.add("command", join_args(args));
    Timer timer;
    int code = 0;
    try {
        if (beran_cmd->parsed()) {
            for (const std::string& extra : beran_cmd->remaining()) {
                if (!beran_expr.empty())
                    beran_expr += ' ';
                beran_expr += extra;
            }
            if (beran_expr.empty()) {
                err << "error: beran needs a term argument\n";
                return 2;
            }
            code = cmd_beran(beran_expr, report);
        }
        else if (table_cmd->parsed())
            code = cmd_table(report);
        else if (check_cmd->parsed())
            code = cmd_check(check_opt, report);
        else if (closure_cmd->parsed())
            code = cmd_closure(closure_opt, report);
        else if (validate_cmd->parsed())
            code = cmd_validate(validate_opt, report);
        else if (hilbert_cmd->parsed())
            code = cmd_hilbert(hilbert_opt, report);
        else if (accept_cmd->parsed())
            code = cmd_accept(accept_seed, report);
    } catch (const NotALattice& e) {
        // a model that fails validation is a found violation, not a usage error
        report.add_timing_ms(timer.ms());
        out << report.full_text();
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NotOrtholattice& e) {
        report.add_timing_ms(timer.ms());
        out << report.full_text();
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    report.add("exit", code);
    report.add_timing_ms(timer.ms());
    out << report.full_text();
    return code;
}

} // namespace oml
