#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "omlkit/freeoml.hpp"
#include "omlkit/rng.hpp"
#include "omlkit/term.hpp"

using namespace oml;

namespace {

int beran_of(const std::string& text) { return beran_index(eval2(parse(text))); }

Term random_ab_term(SplitMix64& g, int depth) {
    if (depth == 0 || g.below(3) == 0) {
        switch (g.below(4)) {
        case 0: return Term::variable("a");
        case 1: return Term::variable("b");
        case 2: return Term::zero();
        default: return Term::one();
        }
    }
    switch (g.below(5)) {
    case 0: return Term::complement(random_ab_term(g, depth - 1));
    case 1: return Term::meet(random_ab_term(g, depth - 1), random_ab_term(g, depth - 1));
    case 2: return Term::join(random_ab_term(g, depth - 1), random_ab_term(g, depth - 1));
    case 3:
        return Term::equivalence(static_cast<int>(g.below(6)), random_ab_term(g, depth - 1),
                                 random_ab_term(g, depth - 1));
    default:
        return Term::implication(static_cast<int>(g.below(6)), random_ab_term(g, depth - 1),
                                 random_ab_term(g, depth - 1));
    }
}

// Exhaustive term enumeration up to a connective budget, independent of the
// library's breadth-first cache. Used as the minimality oracle.
void enumerate_terms(int budget, const std::function<void(const Term&)>& visit) {
    std::vector<std::vector<Term>> by_count(static_cast<std::size_t>(budget) + 1);
    by_count[0] = {Term::variable("a"), Term::variable("b"), Term::zero(), Term::one()};
    for (const Term& t : by_count[0])
        visit(t);
    for (int c = 1; c <= budget; ++c) {
        auto& out = by_count[static_cast<std::size_t>(c)];
        for (const Term& t : by_count[static_cast<std::size_t>(c - 1)])
            out.push_back(Term::complement(t));
        for (int i = 0; i + 1 <= c - 1; ++i) {
            int j = c - 1 - i;
            for (const Term& l : by_count[static_cast<std::size_t>(i)])
                for (const Term& r : by_count[static_cast<std::size_t>(j)]) {
                    out.push_back(Term::meet(l, r));
                    out.push_back(Term::join(l, r));
                }
        }
        for (const Term& t : out)
            visit(t);
    }
}

} // namespace

TEST_CASE("beran numbering is a bijection with the stated complement symmetry") {
    std::set<int> seen;
    for (int n = 1; n <= 96; ++n) {
        FreeElem e = from_beran(n);
        CHECK(beran_index(e) == n);
        seen.insert(beran_index(e));
        CHECK(beran_index(fe_complement(e)) == 97 - n);
    }
    CHECK(seen.size() == 96);
    CHECK_THROWS_AS(from_beran(0), std::out_of_range);
    CHECK_THROWS_AS(from_beran(97), std::out_of_range);
}

TEST_CASE("boolean part canonical order") {
    CHECK(bool_part_index(0x0) == 1);
    CHECK(bool_part_index(0x8) == 2);   // 1000
    CHECK(bool_part_index(0x1) == 5);   // 0001
    CHECK(bool_part_index(0xC) == 6);   // 1100
    CHECK(bool_part_index(0xA) == 7);   // 1010
    CHECK(bool_part_index(0x9) == 8);   // 1001
    CHECK(bool_part_index(0x3) == 11);  // 0011
    CHECK(bool_part_index(0xF) == 16);
    for (int v = 1; v <= 16; ++v)
        CHECK(bool_part_index(bool_part_from_index(v)) == v);
    // complement swaps v and 17-v
    for (int v = 1; v <= 16; ++v)
        CHECK(bool_part_index(static_cast<std::uint8_t>(~bool_part_from_index(v) & 0xF)) ==
              17 - v);
}

TEST_CASE("anchors: constants, variables and their complements") {
    CHECK(beran_of("0") == 1);
    CHECK(beran_of("1") == 96);
    CHECK(beran_of("a") == 22);
    CHECK(beran_index(eval_ab(parse("b"))) == 39);
    CHECK(beran_index(fe_complement(free_gen_a)) == 75);
    CHECK(beran_index(fe_complement(free_gen_b)) == 58);
    // eval2 binds by first occurrence: a lone variable always lands on the
    // first generator, whatever its name
    CHECK(beran_of("b") == 22);
    CHECK(beran_of("b'") == 75);
    CHECK(beran_of("b ^ a") == 2);  // first occurrence of b binds generator a
}

TEST_CASE("anchors: quantum constants and variables") {
    auto family = [](std::uint8_t bits, MO2 classical) {
        std::vector<int> out;
        for (int m = 0; m < 6; ++m)
            if (static_cast<MO2>(m) != classical)
                out.push_back(beran_index(FreeElem{static_cast<MO2>(m), bits}));
        return out;
    };
    CHECK(family(0x0, MO2::zero) == std::vector<int>{17, 33, 49, 65, 81});
    CHECK(family(0xF, MO2::one) == std::vector<int>{16, 32, 48, 64, 80});
    CHECK(family(0xC, MO2::x) == std::vector<int>{6, 38, 54, 70, 86});
    CHECK(family(0xA, MO2::y) == std::vector<int>{7, 23, 55, 71, 87});
    CHECK(family(0x3, MO2::x_comp) == std::vector<int>{11, 27, 43, 59, 91});
    CHECK(family(0x5, MO2::y_comp) == std::vector<int>{10, 26, 42, 74, 90});
}

TEST_CASE("anchors: the six equivalences and six implications") {
    const int eq_expected[6] = {88, 72, 40, 24, 56, 8};
    const int impl_expected[6] = {94, 78, 46, 30, 62, 14};
    for (int i = 0; i <= 5; ++i) {
        CHECK(beran_of("a ==" + std::to_string(i) + " b") == eq_expected[i]);
        CHECK(beran_of("a ->" + std::to_string(i) + " b") == impl_expected[i]);
    }
    // the complements of the equivalences, as published
    std::set<int> eq_comps;
    for (int i = 0; i <= 5; ++i)
        eq_comps.insert(97 - eq_expected[i]);
    CHECK(eq_comps == std::set<int>{9, 25, 41, 57, 73, 89});
}

TEST_CASE("anchors: symmetric differences are complements of equivalences") {
    CHECK(beran_of("a nabla b") == 9);
    CHECK(beran_of("a +l b") == 25);
    CHECK(beran_of("a +r b") == 41);
    CHECK(beran_of("a +lp b") == 73);
    CHECK(beran_of("a +rp b") == 57);
    // delta: the complement of B8 is B89 (the published 84 is a typo)
    CHECK(beran_of("a delta b") == 89);
    // the printed ==5 formula is B89, i.e. the complement of the tagged B8
    CHECK(beran_of("(a v b) ^ (b' v a')") == 89);
    CHECK(beran_of("(a ^ b) v (a' ^ b')") == 8);
}

TEST_CASE("anchors: meets and joins carry odd boolean weight") {
    // classical meets 2..5 and joins 92..95
    CHECK(beran_of("a ^ b") == 2);
    CHECK(beran_of("a ^ b'") == 3);
    CHECK(beran_of("a' ^ b") == 4);
    CHECK(beran_of("a' ^ b'") == 5);
    CHECK(beran_of("a v b") == 92);
    CHECK(beran_of("a v b'") == 93);
    CHECK(beran_of("a' v b") == 94);
    CHECK(beran_of("a' v b'") == 95);
    // the 48 odd-weight elements are exactly the weight-1 and weight-3 rows
    int odd = 0;
    for (int n = 1; n <= 96; ++n) {
        int w = bool_weight(from_beran(n).bits);
        if (w % 2 == 1) {
            ++odd;
            int v = (n - 1) % 16 + 1;
            CHECK(((v >= 2 && v <= 5) || (v >= 12 && v <= 15)));
        }
    }
    CHECK(odd == 48);
}

TEST_CASE("eval2 examples") {
    CHECK(beran_of("(a ->1 b) ^ (b ->0 a)") == 72);
    CHECK(beran_of("a ==5 0") == 75);
    CHECK(eval2(parse("a ==5 0")) == fe_complement(eval2(parse("a"))));
    CHECK(beran_of("-(-(x\xE2\x89\xA1_1y)\xE2\x89\xA1_1y)") == 22);
    CHECK_THROWS_AS(eval2(parse("a ^ b ^ c")), TooManyVariables);
}

TEST_CASE("eval homomorphism properties") {
    SplitMix64 g(11);
    for (int i = 0; i < 300; ++i) {
        Term s = random_ab_term(g, 3);
        Term t = random_ab_term(g, 3);
        CHECK(eval_ab(Term::complement(s)) == fe_complement(eval_ab(s)));
        CHECK(eval_ab(Term::meet(s, t)) == fe_meet(eval_ab(s), eval_ab(t)));
        CHECK(eval_ab(Term::join(s, t)) == fe_join(eval_ab(s), eval_ab(t)));
    }
}

TEST_CASE("product table matches the published table") {
    auto computed = product_table();
    const auto& reference = reference_product_table();
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            CAPTURE(i);
            CAPTURE(j);
            CHECK(computed[i][j] == reference[i][j]);
        }
    CHECK(computed[0][0] == 88);
    CHECK(computed[1][0] == 72);
    for (int j = 0; j < 6; ++j)
        CHECK(computed[5][j] == 8);
}

TEST_CASE("canonical terms evaluate back to their index and are minimal") {
    CHECK(print(canonical_term(22)) == "a");
    CHECK(print(canonical_term(39)) == "b");
    CHECK(print(canonical_term(1)) == "0");
    CHECK(print(canonical_term(96)) == "1");
    for (int n = 1; n <= 96; ++n) {
        CAPTURE(n);
        CHECK(beran_index(eval_ab(canonical_term(n))) == n);
    }
    CHECK_THROWS_AS(canonical_term(0), std::out_of_range);
    CHECK_THROWS_AS(canonical_term(97), std::out_of_range);
}

TEST_CASE("canonical term minimality against exhaustive enumeration") {
    // every term with fewer connectives than the cached representative must
    // evaluate to something else; spot-check the interesting indices
    for (int n : {88, 8, 17, 94}) {
        CAPTURE(n);
        std::size_t cached = connective_count(canonical_term(n));
        bool smaller_exists = false;
        enumerate_terms(static_cast<int>(cached) - 1, [&](const Term& t) {
            if (!smaller_exists && beran_index(eval_ab(t)) == n)
                smaller_exists = true;
        });
        CHECK_FALSE(smaller_exists);
    }
}

TEST_CASE("closure edge cases") {
    std::set<FreeElem> just_a = {free_gen_a};
    CHECK(closure(just_a, {}) == just_a);

    // generators with meet, join and complement-of-meet generate everything
    std::set<FreeElem> gens = {free_gen_a, free_gen_b};
    std::vector<Term> ops = {parse("a ^ b"), parse("a v b"), parse("(a ^ b)'")};
    CHECK(closure(gens, ops).size() == 96);

    CHECK_THROWS_AS(closure(just_a, {parse("a ^ c")}), Error);
}

TEST_CASE("equivalence closure stays inside the even-weight half") {
    std::set<FreeElem> seeds = {eval_ab(parse("a")), eval_ab(parse("b")),
                                eval_ab(parse("a'")), eval_ab(parse("b'")),
                                free_bottom, free_top};
    std::vector<Term> ops;
    for (int i = 0; i <= 5; ++i)
        ops.push_back(Term::equivalence(i, Term::variable("a"), Term::variable("b")));
    std::set<FreeElem> reached = closure(seeds, ops);
    CHECK(reached.size() == 48);
    for (const FreeElem& e : reached)
        CHECK(bool_weight(e.bits) % 2 == 0);
    // the complements of the equivalence operations are reachable through
    // a ==i 0 style ops
    ops.push_back(Term::equivalence(5, Term::variable("a"), Term::zero()));
    CHECK(closure(seeds, ops).size() == 48);
}

TEST_CASE("meet/join closure from the four literals reaches all 96") {
    std::set<FreeElem> seeds = {eval_ab(parse("a")), eval_ab(parse("b")),
                                eval_ab(parse("a'")), eval_ab(parse("b'"))};
    std::set<FreeElem> reached = closure(seeds, {parse("a ^ b"), parse("a v b")});
    CHECK(reached.size() == 96);
}

TEST_CASE("free2 exported as a model") {
    Model m = free2_as_model();
    CHECK(m.size() == 96);
    CHECK(m.name() == "free2");
    CHECK(m.check_law(Law::Ortholattice).holds);
    CHECK(m.check_law(Law::Oml).holds);
    CHECK(m.id(m.ortho(m.index_of("88"))) == "9");
    CHECK(m.id(m.bottom()) == "1");
    CHECK(m.id(m.top()) == "96");
}

TEST_CASE("model evaluation agrees with the free algebra on two variables") {
    Model m = free2_as_model();
    SplitMix64 g(5);
    for (int i = 0; i < 100; ++i) {
        Term t = random_ab_term(g, 3);
        std::map<std::string, int> asg{{"a", m.index_of("22")}, {"b", m.index_of("39")}};
        int via_model = m.evaluate(t, asg);
        CHECK(m.id(via_model) == std::to_string(beran_index(eval_ab(t))));
    }
}
