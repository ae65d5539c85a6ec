#include "omlkit/freeoml.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>

namespace oml {

MO2 mo2_meet(MO2 a, MO2 b) {
    if (a == b)
        return a;
    if (a == MO2::zero || b == MO2::zero)
        return MO2::zero;
    if (a == MO2::one)
        return b;
    if (b == MO2::one)
        return a;
    return MO2::zero;  // distinct atoms
}

MO2 mo2_join(MO2 a, MO2 b) {
    return mo2_complement(mo2_meet(mo2_complement(a), mo2_complement(b)));
}

namespace {

// Masks in canonical v order: 0000; the weight-1 masks; weight-2; weight-3;
// 1111. Within a weight class, descending as 4-bit numbers.
constexpr std::uint8_t kBoolOrder[16] = {
    0x0, 0x8, 0x4, 0x2, 0x1, 0xC, 0xA, 0x9, 0x6, 0x5, 0x3, 0xE, 0xD, 0xB, 0x7, 0xF,
};

constexpr std::array<int, 16> make_bool_rank() {
    std::array<int, 16> rank{};
    for (int v = 0; v < 16; ++v)
        rank[kBoolOrder[v]] = v + 1;
    return rank;
}

constexpr std::array<int, 16> kBoolRank = make_bool_rank();

} // namespace

int bool_part_index(std::uint8_t bits) { return kBoolRank[bits & 0xF]; }

std::uint8_t bool_part_from_index(int v) {
    if (v < 1 || v > 16)
        throw std::out_of_range("boolean part index must be in 1..16");
    return kBoolOrder[v - 1];
}

int beran_index(FreeElem e) {
    return 16 * (mo2_index(e.m) - 1) + bool_part_index(e.bits);
}

FreeElem from_beran(int n) {
    if (n < 1 || n > 96)
        throw std::out_of_range("Beran index must be in 1..96");
    int m = (n - 1) / 16;
    int v = (n - 1) % 16 + 1;
    return {static_cast<MO2>(m), bool_part_from_index(v)};
}

FreeElem eval_free(const Term& t,
                   const std::vector<std::pair<std::string, FreeElem>>& assignment) {
    switch (t.kind()) {
    case TermKind::Variable: {
        for (const auto& [name, value] : assignment)
            if (name == t.name())
                return value;
        throw Error("unassigned variable '" + t.name() + "'");
    }
    case TermKind::Zero:
        return free_bottom;
    case TermKind::One:
        return free_top;
    case TermKind::Complement:
        return fe_complement(eval_free(t.child(), assignment));
    case TermKind::Meet:
        return fe_meet(eval_free(t.left(), assignment), eval_free(t.right(), assignment));
    case TermKind::Join:
        return fe_join(eval_free(t.left(), assignment), eval_free(t.right(), assignment));
    default:
        return eval_free(expand(t), assignment);
    }
}

FreeElem eval2(const Term& t) {
    std::vector<std::string> vars = variables(t);
    if (vars.size() > 2)
        throw TooManyVariables("term has " + std::to_string(vars.size()) +
                               " distinct variables; at most 2 are evaluable in the "
                               "two-generator free lattice");
    std::vector<std::pair<std::string, FreeElem>> assignment;
    if (!vars.empty())
        assignment.emplace_back(vars[0], free_gen_a);
    if (vars.size() == 2)
        assignment.emplace_back(vars[1], free_gen_b);
    return eval_free(expand(t), assignment);
}

FreeElem eval_ab(const Term& t) {
    for (const std::string& v : variables(t))
        if (v != "a" && v != "b")
            throw Error("expected a term in the variables a and b, got '" + v + "'");
    return eval_free(expand(t), {{"a", free_gen_a}, {"b", free_gen_b}});
}

// ---------------------------------------------------------------------------
// Canonical terms by breadth-first enumeration
// ---------------------------------------------------------------------------

namespace {

struct CanonicalTable {
    std::vector<Term> term;
    std::vector<std::size_t> count;
};

int root_rank(const Term& t) {
    switch (t.kind()) {
    case TermKind::Complement: return 1;
    case TermKind::Meet: return 2;
    case TermKind::Join: return 3;
    default: return 0;
    }
}

// fewest connectives, then complement < meet < join at the root, then print.
bool better_candidate(const Term& cand, std::size_t cand_count, const Term& cur,
                      std::size_t cur_count) {
    if (cand_count != cur_count)
        return cand_count < cur_count;
    if (root_rank(cand) != root_rank(cur))
        return root_rank(cand) < root_rank(cur);
    return print(cand) < print(cur);
}

CanonicalTable build_canonical_table() {
    std::array<std::optional<Term>, 96> rep;
    std::array<std::size_t, 96> count{};
    std::size_t assigned = 0;

    auto place = [&](const Term& t, std::size_t c) {
        int idx = beran_index(eval_ab(t)) - 1;
        if (!rep[idx]) {
            rep[idx] = t;
            count[idx] = c;
            ++assigned;
        } else if (better_candidate(t, c, *rep[idx], count[idx])) {
            // same BFS level only; never replaces a smaller term
            rep[idx] = t;
            count[idx] = c;
        }
    };

    place(Term::zero(), 0);
    place(Term::one(), 0);
    place(Term::variable("a"), 0);
    place(Term::variable("b"), 0);

    for (std::size_t level = 1; assigned < 96; ++level) {
        // Candidates of exactly `level` connectives built from minimal
        // representatives; processing a full level before committing keeps
        // the tie-break deterministic.
        std::vector<std::pair<int, Term>> found;
        auto offer = [&](const Term& t) {
            int idx = beran_index(eval_ab(t)) - 1;
            if (rep[idx])
                return;
            found.emplace_back(idx, t);
        };
        for (int i = 0; i < 96; ++i) {
            if (rep[i] && count[i] == level - 1)
                offer(Term::complement(*rep[i]));
        }
        for (int i = 0; i < 96; ++i) {
            if (!rep[i])
                continue;
            for (int j = 0; j < 96; ++j) {
                if (!rep[j] || count[i] + count[j] != level - 1)
                    continue;
                offer(Term::meet(*rep[i], *rep[j]));
                offer(Term::join(*rep[i], *rep[j]));
            }
        }
        for (const auto& [idx, t] : found) {
            if (!rep[idx]) {
                rep[idx] = t;
                count[idx] = level;
                ++assigned;
            } else if (count[idx] == level && better_candidate(t, level, *rep[idx], level)) {
                rep[idx] = t;
            }
        }
        if (level > 16)
            throw Error("canonical term enumeration failed to terminate");
    }

    CanonicalTable table;
    table.term.reserve(96);
    table.count.reserve(96);
    for (int i = 0; i < 96; ++i) {
        table.term.push_back(*rep[i]);
        table.count.push_back(count[i]);
    }
    return table;
}

const CanonicalTable& canonical_table() {
    static const CanonicalTable table = build_canonical_table();
    return table;
}

} // namespace

Term canonical_term(int n) {
    if (n < 1 || n > 96)
        throw std::out_of_range("Beran index must be in 1..96");
    return canonical_table().term[static_cast<std::size_t>(n - 1)];
}

std::array<std::array<int, 6>, 6> product_table() {
    std::array<std::array<int, 6>, 6> out{};
    Term a = Term::variable("a");
    Term b = Term::variable("b");
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = beran_index(
                eval2(Term::meet(Term::implication(i, a, b), Term::implication(j, b, a))));
    return out;
}

const std::array<std::array<int, 6>, 6>& reference_product_table() {
    static const std::array<std::array<int, 6>, 6> table = {{
        {88, 56, 24, 40, 72, 8},
        {72, 8, 8, 8, 72, 8},
        {40, 8, 8, 40, 8, 8},
        {24, 8, 24, 8, 8, 8},
        {56, 56, 8, 8, 8, 8},
        {8, 8, 8, 8, 8, 8},
    }};
    return table;
}

std::set<FreeElem> closure(const std::set<FreeElem>& seeds, const std::vector<Term>& ops) {
    // Compile each op to a 96x96 table once.
    std::vector<std::array<std::array<FreeElem, 96>, 96>> tables;
    tables.reserve(ops.size());
    for (const Term& op : ops) {
        for (const std::string& v : variables(op))
            if (v != "a" && v != "b")
                throw Error("closure ops must use only the variables a and b, got '" + v + "'");
        Term body = expand(op);
        auto& table = tables.emplace_back();
        for (int p = 0; p < 96; ++p)
            for (int q = 0; q < 96; ++q)
                table[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = eval_free(
                    body, {{"a", from_beran(p + 1)}, {"b", from_beran(q + 1)}});
    }

    std::set<FreeElem> reached = seeds;
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<FreeElem> current(reached.begin(), reached.end());
        for (const auto& table : tables) {
            for (const FreeElem& p : current) {
                for (const FreeElem& q : current) {
                    FreeElem r = table[static_cast<std::size_t>(beran_index(p) - 1)]
                                      [static_cast<std::size_t>(beran_index(q) - 1)];
                    if (reached.insert(r).second)
                        grew = true;
                }
            }
        }
    }
    return reached;
}

Model free2_as_model() {
    std::vector<std::string> ids;
    ids.reserve(96);
    for (int n = 1; n <= 96; ++n)
        ids.push_back(std::to_string(n));
    auto leq = [](int p, int q) {
        FreeElem a = from_beran(p + 1);
        FreeElem b = from_beran(q + 1);
        return fe_meet(a, b) == a;
    };
    std::vector<int> ortho;
    ortho.reserve(96);
    for (int n = 1; n <= 96; ++n)
        ortho.push_back(96 - n);  // 97 - n, zero-based
    return Model::from_order("free2", std::move(ids), leq, std::move(ortho));
}

} // namespace oml
