#include "omlkit/accept.hpp"

#include <array>
#include <chrono>
#include <functional>
#include <sstream>

#include "omlkit/equations.hpp"
#include "omlkit/freeoml.hpp"
#include "omlkit/hilbert.hpp"
#include "omlkit/model.hpp"
#include "omlkit/rng.hpp"
#include "omlkit/term.hpp"

namespace oml {

namespace {

class SuiteRun {
public:
    explicit SuiteRun(std::uint64_t seed) : seed_(seed) {}

    std::vector<CriterionResult> run() {
        criterion(1, "beran_anchor_suite", 1000.0, [this] { return anchors(); });
        criterion(2, "product_table", 1000.0, [this] { return table(); });
        criterion(3, "complement_symmetry", 0.0, [this] { return complement_symmetry(); });
        criterion(4, "parity_closure", 0.0, [this] { return parity_closure(); });
        criterion(5, "iff_characterizations", 0.0, [this] { return iff_checks(); });
        criterion(6, "oml_equations", 0.0, [this] { return equations(); });
        criterion(7, "woml20_gates", 1000.0, [this] { return woml_gates(); });
        criterion(8, "lemma_properties", 0.0, [this] { return lemmas(); });
        criterion(9, "congruences", 0.0, [this] { return congruences(); });
        return std::move(results_);
    }

    std::string body() const { return body_.str(); }

private:
    std::uint64_t seed_;
    std::vector<CriterionResult> results_;
    std::ostringstream body_;
    bool current_ok_ = true;
    int current_number_ = 0;

    void criterion(int number, const char* name, double budget_ms,
                   const std::function<std::string()>& fn) {
        current_ok_ = true;
        current_number_ = number;
        auto start = std::chrono::steady_clock::now();
        std::string detail = fn();
        auto elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        bool pass = current_ok_;
        if (budget_ms > 0 && elapsed >= budget_ms) {
            pass = false;
            record("runtime_budget", "exceeded");
        }
        body_ << "criterion" << number << '\t' << name << '\t' << (pass ? "pass" : "FAIL")
              << '\t' << detail << '\n';
        results_.push_back({number, name, pass, detail, elapsed});
    }

    void record(std::string_view key, std::string_view value) {
        body_ << 'c' << current_number_ << '.' << key << '\t' << value << '\n';
    }

    void expect(bool ok, std::string_view key, std::string_view value) {
        record(key, value);
        if (!ok)
            current_ok_ = false;
    }

    void expect_anchor(std::string_view label, int computed, int expected) {
        std::string value = std::to_string(computed);
        if (computed != expected)
            value += " (expected " + std::to_string(expected) + ")";
        expect(computed == expected, label, value);
    }

    static std::string witness_text(const CheckResult& r) {
        if (!r.witness)
            return "-";
        std::string out;
        for (const auto& [var, id] : *r.witness) {
            if (!out.empty())
                out += ' ';
            out += var + "=" + id;
        }
        return out;
    }

    static int beran_of(const char* text) { return beran_index(eval2(parse(text))); }

    // -- criterion 1 -------------------------------------------------------
    std::string anchors() {
        expect_anchor("const.0", beran_of("0"), 1);
        expect_anchor("const.1", beran_of("1"), 96);
        expect_anchor("var.a", beran_of("a"), 22);
        expect_anchor("var.b", beran_index(eval_ab(parse("b"))), 39);
        expect_anchor("var.a_comp", beran_index(fe_complement(free_gen_a)), 75);
        expect_anchor("var.b_comp", beran_index(fe_complement(free_gen_b)), 58);

        auto expect_family = [&](std::string_view label, std::uint8_t bits, MO2 skip,
                                 std::array<int, 5> expected) {
            std::size_t at = 0;
            bool ok = true;
            std::string text;
            for (int m = 0; m < 6; ++m) {
                if (static_cast<MO2>(m) == skip)
                    continue;
                int idx = beran_index(FreeElem{static_cast<MO2>(m), bits});
                ok = ok && at < expected.size() && idx == expected[at];
                text += (text.empty() ? "" : ",") + std::to_string(idx);
                ++at;
            }
            expect(ok, label, text);
        };
        // Quantum constants and variables: the other five MO2 slots of each
        // classical element's Boolean part.
        expect_family("quantum.zeros", 0x0, MO2::zero, {17, 33, 49, 65, 81});
        expect_family("quantum.ones", 0xF, MO2::one, {16, 32, 48, 64, 80});
        expect_family("quantum.a", 0xC, MO2::x, {6, 38, 54, 70, 86});
        expect_family("quantum.b", 0xA, MO2::y, {7, 23, 55, 71, 87});
        expect_family("quantum.a_comp", 0x3, MO2::x_comp, {11, 27, 43, 59, 91});
        expect_family("quantum.b_comp", 0x5, MO2::y_comp, {10, 26, 42, 74, 90});

        const std::array<int, 6> eq_expected = {88, 72, 40, 24, 56, 8};
        const std::array<int, 6> impl_expected = {94, 78, 46, 30, 62, 14};
        for (int i = 0; i <= 5; ++i) {
            std::string eq_text = "a ==" + std::to_string(i) + " b";
            std::string impl_text = "a ->" + std::to_string(i) + " b";
            expect_anchor("equiv." + std::to_string(i), beran_of(eq_text.c_str()),
                          eq_expected[static_cast<std::size_t>(i)]);
            expect_anchor("impl." + std::to_string(i), beran_of(impl_text.c_str()),
                          impl_expected[static_cast<std::size_t>(i)]);
        }
        expect_anchor("symdiff.nabla", beran_of("a nabla b"), 9);
        expect_anchor("symdiff.plus_l", beran_of("a +l b"), 25);
        expect_anchor("symdiff.plus_r", beran_of("a +r b"), 41);
        expect_anchor("symdiff.plus_lp", beran_of("a +lp b"), 73);
        expect_anchor("symdiff.plus_rp", beran_of("a +rp b"), 57);
        expect_anchor("symdiff.delta", beran_of("a delta b"), 89);

        expect_anchor("classical.meet.ab", beran_of("a ^ b"), 2);
        expect_anchor("classical.join.acombc", beran_of("a' v b'"), 95);

        // The errata ledger: the printed ==5 formula evaluates to B89, its
        // complement is the tagged B8; the printed delta value 84 disagrees
        // with the computed 89; and the published complement pair (58,75)
        // lists b' first.
        expect_anchor("errata.eq5_printed_formula_value", beran_of("(a v b) ^ (b' v a')"), 89);
        expect_anchor("errata.eq5_adopted_value", beran_of("(a ^ b) v (a' ^ b')"), 8);
        record("errata.eq5", "printed formula (a v b) ^ (b' v a') is B89, not the tagged B8; "
                             "adopted (a ^ b) v (a' ^ b') = B8");
        record("errata.delta", "printed value B84 for delta; computed complement of B8 is B89");
        record("errata.perp_pair_order",
               "published complement pair (58,75) reads b'=58, a'=75; forced by the 97-n "
               "complement symmetry");
        return current_ok_ ? "all anchors match; 3 errata recorded" : "anchor mismatch";
    }

    // -- criterion 2 -------------------------------------------------------
    std::string table() {
        auto computed = product_table();
        const auto& reference = reference_product_table();
        int mismatches = 0;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                int got = computed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                int want = reference[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (got != want) {
                    ++mismatches;
                    record("mismatch",
                           "(" + std::to_string(i) + "," + std::to_string(j) + ") computed " +
                               std::to_string(got) + " published " + std::to_string(want));
                }
            }
        expect(mismatches == 0, "entries_matching", std::to_string(36 - mismatches) + "/36");
        return mismatches == 0 ? "36/36 products match" : "product table mismatch";
    }

    // -- criterion 3 -------------------------------------------------------
    std::string complement_symmetry() {
        for (int n = 1; n <= 96; ++n) {
            int comp = beran_index(fe_complement(from_beran(n)));
            if (comp != 97 - n) {
                expect(false, "mismatch_at", std::to_string(n));
                return "complement symmetry broken";
            }
        }
        expect(true, "pairs", "96");
        return "beran(t') = 97 - beran(t) for all 96 elements";
    }

    // -- criterion 4 -------------------------------------------------------
    std::string parity_closure() {
        std::set<FreeElem> eq_seeds = {eval_ab(parse("a")),  eval_ab(parse("b")),
                                       eval_ab(parse("a'")), eval_ab(parse("b'")),
                                       free_bottom,          free_top};
        std::vector<Term> eq_ops;
        for (int i = 0; i <= 5; ++i)
            eq_ops.push_back(Term::equivalence(i, Term::variable("a"), Term::variable("b")));
        std::set<FreeElem> reached = closure(eq_seeds, eq_ops);

        std::set<int> odd_indices;
        for (int n = 1; n <= 96; ++n)
            if (bool_weight(from_beran(n).bits) % 2 == 1)
                odd_indices.insert(n);
        expect(odd_indices.size() == 48, "odd_weight_indices", std::to_string(odd_indices.size()));

        int odd_reached = 0;
        for (const FreeElem& e : reached)
            if (odd_indices.count(beran_index(e)))
                ++odd_reached;
        expect(odd_reached == 0, "equivalence_closure",
               "size=" + std::to_string(reached.size()) +
                   " odd_reached=" + std::to_string(odd_reached));

        std::set<FreeElem> lattice_seeds = {eval_ab(parse("a")), eval_ab(parse("b")),
                                            eval_ab(parse("a'")), eval_ab(parse("b'"))};
        std::vector<Term> lattice_ops = {parse("a ^ b"), parse("a v b")};
        std::set<FreeElem> all = closure(lattice_seeds, lattice_ops);
        expect(all.size() == 96, "meet_join_closure", "size=" + std::to_string(all.size()));
        return current_ok_ ? "equivalence ops stay even-weight; meet/join reach all 96"
                           : "parity closure failed";
    }

    // -- criterion 5 -------------------------------------------------------
    std::string iff_checks() {
        Model free2 = Model::builtin("free2");
        Model boolean4 = Model::builtin("boolean_4");
        Model mo2 = Model::builtin("mo2");
        Model o6 = Model::builtin("o6");

        for (int i = 1; i <= 5; ++i) {
            CheckResult r = free2.iff_characterization(i);
            expect(r.holds, "free2.iff" + std::to_string(i), r.holds ? "holds" : "FAIL");
        }
        CheckResult rb = boolean4.iff_characterization(0);
        expect(rb.holds, "boolean_4.iff0", rb.holds ? "holds" : "FAIL");

        CheckResult rm = mo2.iff_characterization(0);
        expect(!rm.holds, "mo2.iff0", !rm.holds ? "fails witness " + witness_text(rm) : "HOLDS");
        if (rm.witness) {
            // witnesses must re-evaluate to genuine violations
            std::map<std::string, int> asg;
            for (const auto& [var, id] : *rm.witness)
                asg[var] = mo2.index_of(id);
            int value = mo2.evaluate(
                Term::equivalence(0, Term::variable("a"), Term::variable("b")), asg);
            bool genuine = (value == mo2.top()) != (asg["a"] == asg["b"]);
            expect(genuine, "mo2.iff0.witness_verified", genuine ? "yes" : "no");
        }

        bool some_i_fails = false;
        for (int i = 1; i <= 5 && !some_i_fails; ++i) {
            CheckResult r = o6.iff_characterization(i);
            if (!r.holds) {
                some_i_fails = true;
                record("o6.iff" + std::to_string(i), "fails witness " + witness_text(r));
            }
        }
        expect(some_i_fails, "o6.some_iff_fails", some_i_fails ? "yes" : "no");
        return current_ok_ ? "holds in free2 (i=1..5) and boolean_4 (i=0); fails in mo2 (i=0) and o6"
                           : "iff characterization mismatch";
    }

    // -- criterion 6 -------------------------------------------------------
    std::string equations() {
        Model mo2 = Model::builtin("mo2");
        Model free2 = Model::builtin("free2");

        auto run_block = [&](const Model& m, const Equation& eq, double budget_ms) {
            auto start = std::chrono::steady_clock::now();
            CheckResult r = m.check_equation(eq.lhs(), eq.rel, eq.rhs());
            auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                start)
                          .count();
            bool in_budget = budget_ms <= 0 || ms < budget_ms;
            expect(r.holds && in_budget, m.name() + "." + eq.name,
                   std::string(r.holds ? "holds" : "FAIL") + " assignments=" +
                       std::to_string(r.assignments_checked) +
                       (in_budget ? "" : " over_budget"));
        };

        for (int i = 1; i <= 6; ++i)
            run_block(mo2, equation_by_name("EQ" + std::to_string(i)), 1000.0);
        for (int i = 3; i <= 6; ++i)
            run_block(free2, equation_by_name("EQ" + std::to_string(i)), 10000.0);
        run_block(free2, equation_by_name("EQ1"), 120000.0);
        run_block(free2, equation_by_name("EQ2"), 120000.0);

        auto hilbert_start = std::chrono::steady_clock::now();
        std::uint64_t stream = 0;
        for (int dim = 3; dim <= 4; ++dim)
            for (int i = 1; i <= 6; ++i) {
                const Equation& eq = equation_by_name("EQ" + std::to_string(i));
                SubspaceCheckResult r = check_equation_random(
                    dim, eq.lhs(), eq.rel, eq.rhs(), 1000, derive_seed(seed_, stream++));
                expect(r.holds, "hilbert.dim" + std::to_string(dim) + "." + eq.name,
                       std::string(r.holds ? "holds" : "FAIL") +
                           " trials=" + std::to_string(r.trials_checked));
            }
        auto hilbert_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - hilbert_start)
                              .count();
        expect(hilbert_ms < 60000.0, "hilbert.budget", hilbert_ms < 60000.0 ? "ok" : "exceeded");
        return current_ok_ ? "EQ1-EQ6 hold in mo2, free2 (exhaustive) and Q^3/Q^4 (random)"
                           : "equation check failed";
    }

    // -- criterion 7 -------------------------------------------------------
    std::string woml_gates() {
        Model w = Model::builtin("woml20");
        expect(w.size() == 20, "elements", std::to_string(w.size()));
        CheckResult ol = w.check_law(Law::Ortholattice);
        expect(ol.holds, "ortholattice", ol.holds ? "valid" : "INVALID");

        const Equation& eq7 = equation_by_name("EQ7");
        CheckResult woml_law = w.check_equation(eq7.lhs(), eq7.rel, eq7.rhs());
        expect(woml_law.holds && woml_law.assignments_checked == 400, "eq7",
               std::string(woml_law.holds ? "holds" : "FAIL") +
                   " assignments=" + std::to_string(woml_law.assignments_checked));

        CheckResult oml = w.check_law(Law::Oml);
        expect(!oml.holds, "oml_law",
               !oml.holds ? "fails witness " + witness_text(oml) : "HOLDS");

        const Equation& eq4 = equation_by_name("EQ4");
        CheckResult r4 = w.check_equation(eq4.lhs(), eq4.rel, eq4.rhs());
        expect(!r4.holds, "eq4", !r4.holds ? "fails witness " + witness_text(r4) : "HOLDS");
        if (r4.witness) {
            std::map<std::string, int> asg;
            for (const auto& [var, id] : *r4.witness)
                asg[var] = w.index_of(id);
            bool genuine = w.evaluate(eq4.lhs(), asg) != w.evaluate(eq4.rhs(), asg);
            expect(genuine, "eq4.witness_verified", genuine ? "yes" : "no");
        }

        const Equation& eq6 = equation_by_name("EQ6");
        CheckResult r6 = w.check_equation(eq6.lhs(), eq6.rel, eq6.rhs());
        expect(r6.holds && r6.assignments_checked == 8000, "eq6",
               std::string(r6.holds ? "holds" : "FAIL") +
                   " assignments=" + std::to_string(r6.assignments_checked));
        return current_ok_ ? "all five gates pass" : "a gate failed";
    }

    // -- criterion 8 -------------------------------------------------------
    std::string lemmas() {
        Model free2 = Model::builtin("free2");
        Model o6 = Model::builtin("o6");

        CheckResult trans = free2.check_equation(parse("(a ==5 b) ^ (b ==5 c)"), Rel::Leq,
                                                 parse("a ==5 c"));
        expect(trans.holds, "free2.transitivity",
               std::string(trans.holds ? "holds" : "FAIL") +
                   " assignments=" + std::to_string(trans.assignments_checked));

        CheckResult fh_free2 = free2.foulis_holland();
        expect(fh_free2.holds, "free2.foulis_holland",
               std::string(fh_free2.holds ? "holds" : "FAIL") + " commuting_triples=" +
                   std::to_string(fh_free2.assignments_checked));
        CheckResult fh_o6 = o6.foulis_holland();
        expect(fh_o6.holds, "o6.foulis_holland",
               std::string(fh_o6.holds ? "holds" : "FAIL") +
                   " commuting_triples=" + std::to_string(fh_o6.assignments_checked));

        for (int i = 0; i <= 5; ++i) {
            CheckResult r = free2.check_equation(
                Term::equivalence(i, Term::variable("a"), Term::zero()), Rel::Equal,
                parse("a'"));
            expect(r.holds, "free2.a_eq" + std::to_string(i) + "_0_is_comp",
                   r.holds ? "holds" : "FAIL");
        }
        return current_ok_ ? "transitivity, Foulis-Holland and a ==i 0 = a' all hold"
                           : "lemma property failed";
    }

    // -- criterion 9 -------------------------------------------------------
    std::string congruences() {
        Model o6 = Model::builtin("o6");
        Model woml20 = Model::builtin("woml20");
        Model free2 = Model::builtin("free2");
        Model boolean4 = Model::builtin("boolean_4");

        for (const Model* m : {&o6, &woml20})
            for (int i = 0; i <= 5; ++i) {
                ThetaReport r = m->theta_relation(i);
                bool ok = r.is_equivalence() && r.is_congruence();
                std::string value = ok ? "equivalence+congruence"
                                       : (r.failures.empty() ? "failed" : r.failures.front());
                expect(ok, m->name() + ".theta" + std::to_string(i), value);
            }
        for (int i = 1; i <= 5; ++i) {
            ThetaReport r = free2.theta_relation(i);
            expect(r.identity, "free2.theta" + std::to_string(i),
                   r.identity ? "identity" : "NOT identity");
        }
        ThetaReport rb = boolean4.theta_relation(0);
        expect(rb.identity, "boolean_4.theta0", rb.identity ? "identity" : "NOT identity");
        return current_ok_ ? "all theta relations behave as required" : "theta relation failed";
    }
};

} // namespace

AcceptanceOutcome run_acceptance(std::uint64_t seed) {
    SuiteRun first(seed);
    AcceptanceOutcome outcome;
    outcome.criteria = first.run();
    std::string body1 = first.body();

    auto start = std::chrono::steady_clock::now();
    SuiteRun second(seed);
    second.run();
    std::string body2 = second.body();
    auto elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    bool deterministic = body1 == body2;
    outcome.criteria.push_back({10, "determinism", deterministic,
                                deterministic ? "two runs, byte-identical report bodies"
                                              : "report bodies differ",
                                elapsed});

    outcome.all_pass = true;
    for (const CriterionResult& c : outcome.criteria)
        outcome.all_pass = outcome.all_pass && c.pass;

    std::ostringstream body;
    body << body1;
    body << "criterion10\tdeterminism\t" << (deterministic ? "pass" : "FAIL") << '\t'
         << (deterministic ? "two runs, byte-identical report bodies" : "report bodies differ")
         << '\n';
    body << "suite\t" << (outcome.all_pass ? "pass" : "FAIL") << '\n';
    outcome.report_body = body.str();
    return outcome;
}

} // namespace oml
