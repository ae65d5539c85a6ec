#include "omlkit/model.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <tuple>

#include "omlkit/freeoml.hpp"
#include "omlkit/rng.hpp"

namespace oml {

int Model::index_of(std::string_view id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw UnknownName("no element named '" + std::string(id) + "' in model " + name_);
    return it->second;
}

// ---------------------------------------------------------------------------
// Construction and validation
// ---------------------------------------------------------------------------

Model Model::from_order(std::string name, std::vector<std::string> ids,
                        const std::function<bool(int, int)>& le, std::vector<int> ortho) {
    Model m;
    m.name_ = std::move(name);
    m.ids_ = std::move(ids);
    m.n_ = m.ids_.size();
    const int n = static_cast<int>(m.n_);
    if (n == 0)
        throw NotALattice("model has no elements");
    for (int i = 0; i < n; ++i) {
        if (!m.index_.emplace(m.ids_[static_cast<std::size_t>(i)], i).second)
            throw FormatError("duplicate element id '" + m.ids_[static_cast<std::size_t>(i)] + "'");
    }

    m.le_.assign(m.n_ * m.n_, 0);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            m.le_[static_cast<std::size_t>(p) * m.n_ + q] = le(p, q) ? 1 : 0;

    for (int p = 0; p < n; ++p)
        if (!m.le(p, p))
            throw NotALattice("order is not reflexive at " + m.ids_[static_cast<std::size_t>(p)]);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (p != q && m.le(p, q) && m.le(q, p))
                throw NotALattice("order has a cycle through " +
                                  m.ids_[static_cast<std::size_t>(p)] + " and " +
                                  m.ids_[static_cast<std::size_t>(q)]);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (!m.le(p, q))
                continue;
            for (int r = 0; r < n; ++r)
                if (m.le(q, r) && !m.le(p, r))
                    throw NotALattice("order is not transitive through " +
                                      m.ids_[static_cast<std::size_t>(q)]);
        }

    m.bottom_ = -1;
    m.top_ = -1;
    for (int p = 0; p < n; ++p) {
        bool is_bottom = true, is_top = true;
        for (int q = 0; q < n; ++q) {
            is_bottom = is_bottom && m.le(p, q);
            is_top = is_top && m.le(q, p);
        }
        if (is_bottom)
            m.bottom_ = p;
        if (is_top)
            m.top_ = p;
    }
    if (m.bottom_ < 0 || m.top_ < 0)
        throw NotALattice("order has no global bottom/top");

    m.meet_.assign(m.n_ * m.n_, 0);
    m.join_.assign(m.n_ * m.n_, 0);
    for (int p = 0; p < n; ++p) {
        for (int q = p; q < n; ++q) {
            int glb = m.bottom_;
            int lub = m.top_;
            for (int r = 0; r < n; ++r) {
                if (m.le(r, p) && m.le(r, q) && m.le(glb, r))
                    glb = r;
                if (m.le(p, r) && m.le(q, r) && m.le(r, lub))
                    lub = r;
            }
            for (int r = 0; r < n; ++r) {
                if (m.le(r, p) && m.le(r, q) && !m.le(r, glb))
                    throw NotALattice("pair {" + m.ids_[static_cast<std::size_t>(p)] + ", " +
                                      m.ids_[static_cast<std::size_t>(q)] +
                                      "} has no greatest lower bound");
                if (m.le(p, r) && m.le(q, r) && !m.le(lub, r))
                    throw NotALattice("pair {" + m.ids_[static_cast<std::size_t>(p)] + ", " +
                                      m.ids_[static_cast<std::size_t>(q)] +
                                      "} has no least upper bound");
            }
            m.meet_[static_cast<std::size_t>(p) * m.n_ + q] = static_cast<std::uint16_t>(glb);
            m.meet_[static_cast<std::size_t>(q) * m.n_ + p] = static_cast<std::uint16_t>(glb);
            m.join_[static_cast<std::size_t>(p) * m.n_ + q] = static_cast<std::uint16_t>(lub);
            m.join_[static_cast<std::size_t>(q) * m.n_ + p] = static_cast<std::uint16_t>(lub);
        }
    }

    if (ortho.size() != m.n_)
        throw NotOrtholattice("orthocomplement must be defined for every element");
    m.ortho_ = std::move(ortho);
    for (int p = 0; p < n; ++p) {
        int pc = m.ortho_[static_cast<std::size_t>(p)];
        if (pc < 0 || pc >= n)
            throw NotOrtholattice("orthocomplement out of range");
        if (m.ortho_[static_cast<std::size_t>(pc)] != p)
            throw NotOrtholattice("orthocomplement is not an involution at " +
                                  m.ids_[static_cast<std::size_t>(p)]);
        if (m.meet(p, pc) != m.bottom_)
            throw NotOrtholattice("complement law fails: " + m.ids_[static_cast<std::size_t>(p)] +
                                  " ^ " + m.ids_[static_cast<std::size_t>(pc)] + " != bottom");
        if (m.join(p, pc) != m.top_)
            throw NotOrtholattice("complement law fails: " + m.ids_[static_cast<std::size_t>(p)] +
                                  " v " + m.ids_[static_cast<std::size_t>(pc)] + " != top");
    }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (m.le(p, q) &&
                !m.le(m.ortho_[static_cast<std::size_t>(q)], m.ortho_[static_cast<std::size_t>(p)]))
                throw NotOrtholattice("orthocomplement does not reverse the order on {" +
                                      m.ids_[static_cast<std::size_t>(p)] + ", " +
                                      m.ids_[static_cast<std::size_t>(q)] + "}");
    return m;
}

// ---------------------------------------------------------------------------
// The line-oriented model format
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

} // namespace

Model Model::load(std::string_view source) {
    std::string name;
    std::vector<std::string> ids;
    std::map<std::string, int> index;
    std::vector<std::pair<int, int>> covers;
    std::vector<int> ortho;
    int bottom = -1, top = -1;
    bool saw_model = false, saw_end = false;

    auto lookup = [&](const std::string& id, std::size_t line_no) {
        auto it = index.find(id);
        if (it == index.end())
            throw FormatError("line " + std::to_string(line_no) + ": unknown element '" + id +
                              "' (declare it in an elements line first)");
        return it->second;
    };

    std::istringstream in{std::string(source)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::vector<std::string> tok = split_tokens(raw);
        if (tok.empty())
            continue;
        if (saw_end)
            throw FormatError("line " + std::to_string(line_no) + ": content after 'end'");
        const std::string& directive = tok[0];
        if (directive == "model") {
            if (saw_model || tok.size() != 2)
                throw FormatError("line " + std::to_string(line_no) + ": bad 'model' line");
            saw_model = true;
            name = tok[1];
        } else if (directive == "elements") {
            if (tok.size() < 2)
                throw FormatError("line " + std::to_string(line_no) + ": empty 'elements' line");
            for (std::size_t i = 1; i < tok.size(); ++i) {
                if (!index.emplace(tok[i], static_cast<int>(ids.size())).second)
                    throw FormatError("line " + std::to_string(line_no) + ": duplicate element '" +
                                      tok[i] + "'");
                ids.push_back(tok[i]);
                ortho.push_back(-1);
            }
        } else if (directive == "bottom" || directive == "top") {
            if (tok.size() != 2)
                throw FormatError("line " + std::to_string(line_no) + ": bad '" + directive +
                                  "' line");
            int e = lookup(tok[1], line_no);
            if ((directive == "bottom" ? bottom : top) >= 0)
                throw FormatError("line " + std::to_string(line_no) + ": duplicate '" + directive +
                                  "'");
            (directive == "bottom" ? bottom : top) = e;
        } else if (directive == "cover") {
            if (tok.size() != 3)
                throw FormatError("line " + std::to_string(line_no) + ": bad 'cover' line");
            int p = lookup(tok[1], line_no);
            int q = lookup(tok[2], line_no);
            if (p == q)
                throw FormatError("line " + std::to_string(line_no) + ": element cannot cover itself");
            covers.emplace_back(p, q);
        } else if (directive == "ortho") {
            if (tok.size() != 3)
                throw FormatError("line " + std::to_string(line_no) + ": bad 'ortho' line");
            int p = lookup(tok[1], line_no);
            int q = lookup(tok[2], line_no);
            if (p == q)
                throw NotOrtholattice("line " + std::to_string(line_no) +
                                      ": element cannot be its own orthocomplement");
            for (auto [e, partner] : {std::pair{p, q}, std::pair{q, p}}) {
                int& slot = ortho[static_cast<std::size_t>(e)];
                if (slot >= 0 && slot != partner)
                    throw FormatError("line " + std::to_string(line_no) +
                                      ": conflicting ortho declaration for '" +
                                      ids[static_cast<std::size_t>(e)] + "'");
                slot = partner;
            }
        } else if (directive == "end") {
            saw_end = true;
        } else {
            throw FormatError("line " + std::to_string(line_no) + ": unknown directive '" +
                              directive + "'");
        }
    }

    if (!saw_model)
        throw FormatError("missing 'model' line");
    if (!saw_end)
        throw FormatError("missing 'end' line");
    if (ids.empty())
        throw FormatError("missing 'elements' line");
    if (bottom < 0 || top < 0)
        throw FormatError("missing 'bottom' or 'top' line");
    for (std::size_t e = 0; e < ids.size(); ++e)
        if (ortho[e] < 0)
            throw NotOrtholattice("no orthocomplement declared for '" + ids[e] + "'");

    // Reflexive-transitive closure of the cover relation.
    const std::size_t n = ids.size();
    std::vector<std::uint8_t> le(n * n, 0);
    for (std::size_t p = 0; p < n; ++p)
        le[p * n + p] = 1;
    for (auto [p, q] : covers)
        le[static_cast<std::size_t>(p) * n + static_cast<std::size_t>(q)] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t p = 0; p < n; ++p) {
            if (!le[p * n + k])
                continue;
            for (std::size_t q = 0; q < n; ++q)
                if (le[k * n + q])
                    le[p * n + q] = 1;
        }

    if (bottom == top && n > 1)
        throw NotALattice("bottom and top coincide in a nontrivial model");

    auto le_fn = [&](int p, int q) {
        return le[static_cast<std::size_t>(p) * n + static_cast<std::size_t>(q)] != 0;
    };
    return from_order(std::move(name), std::move(ids), le_fn, std::move(ortho));
}

Model Model::builtin(std::string_view name) {
    if (name == "mo2" || name == "o6" || name == "woml20")
        return load(builtin_model_source(name));
    if (name == "free2")
        return free2_as_model();
    if (name.starts_with("boolean_") && name.size() == 9 && name[8] >= '1' && name[8] <= '5') {
        int bits = name[8] - '0';
        int count = 1 << bits;
        std::vector<std::string> ids;
        ids.reserve(static_cast<std::size_t>(count));
        for (int mask = 0; mask < count; ++mask) {
            std::string id(static_cast<std::size_t>(bits), '0');
            for (int i = 0; i < bits; ++i)
                if (mask & (1 << (bits - 1 - i)))
                    id[static_cast<std::size_t>(i)] = '1';
            ids.push_back(std::move(id));
        }
        std::vector<int> ortho;
        ortho.reserve(static_cast<std::size_t>(count));
        for (int mask = 0; mask < count; ++mask)
            ortho.push_back(~mask & (count - 1));
        auto le_fn = [](int p, int q) { return (p & q) == p; };
        return from_order(std::string(name), std::move(ids), le_fn, std::move(ortho));
    }
    throw UnknownName("no built-in model named '" + std::string(name) +
                      "' (expected boolean_1..boolean_5, mo2, o6, free2, woml20)");
}

// ---------------------------------------------------------------------------
// Term evaluation
// ---------------------------------------------------------------------------

int Model::evaluate(const Term& t, const std::map<std::string, int>& assignment) const {
    switch (t.kind()) {
    case TermKind::Variable: {
        auto it = assignment.find(t.name());
        if (it == assignment.end())
            throw Error("unassigned variable '" + t.name() + "'");
        return it->second;
    }
    case TermKind::Zero:
        return bottom_;
    case TermKind::One:
        return top_;
    case TermKind::Complement:
        return ortho(evaluate(t.child(), assignment));
    case TermKind::Meet:
        return meet(evaluate(t.left(), assignment), evaluate(t.right(), assignment));
    case TermKind::Join:
        return join(evaluate(t.left(), assignment), evaluate(t.right(), assignment));
    default:
        return evaluate(expand(t), assignment);
    }
}

// ---------------------------------------------------------------------------
// Compiled equation programs
//
// Terms are flattened to register instructions with common subexpressions
// shared. Instructions are grouped by the deepest variable (in lexicographic
// enumeration order) they depend on, so stepping the innermost variable of
// the assignment odometer re-executes only the instructions that can change.
// ---------------------------------------------------------------------------

namespace {

struct Instr {
    std::uint8_t op;  // 0 complement, 1 meet, 2 join
    std::uint16_t a = 0;
    std::uint16_t b = 0;
    std::uint16_t dst = 0;
    int depth = 0;  // 1-based ordinal of the deepest variable involved
};

struct Program {
    std::vector<std::string> vars;
    std::vector<Instr> instrs;           // stable-sorted by depth
    std::vector<std::size_t> depth_from; // depth_from[d] = first instr of depth >= d
    std::uint16_t lhs = 0;
    std::uint16_t rhs = 0;
    std::uint16_t reg_count = 0;
    std::vector<std::pair<std::uint16_t, std::uint16_t>> const_init;  // reg, value
};

class ProgramBuilder {
public:
    ProgramBuilder(const Model& m, const std::vector<std::string>& vars) : model_(m) {
        for (std::size_t i = 0; i < vars.size(); ++i) {
            var_reg_[vars[i]] = static_cast<std::uint16_t>(i);
            reg_depth_.push_back(static_cast<int>(i) + 1);
        }
        next_reg_ = static_cast<std::uint16_t>(vars.size());
        prog_.vars = vars;
    }

    Program finish(const Term& lhs_expanded, const Term& rhs_expanded) {
        prog_.lhs = compile(lhs_expanded);
        prog_.rhs = compile(rhs_expanded);
        prog_.reg_count = next_reg_;
        std::stable_sort(prog_.instrs.begin(), prog_.instrs.end(),
                         [](const Instr& x, const Instr& y) { return x.depth < y.depth; });
        const int k = static_cast<int>(prog_.vars.size());
        prog_.depth_from.assign(static_cast<std::size_t>(k) + 2, prog_.instrs.size());
        for (std::size_t i = prog_.instrs.size(); i-- > 0;)
            for (int d = 0; d <= prog_.instrs[i].depth; ++d)
                prog_.depth_from[static_cast<std::size_t>(d)] = i;
        return std::move(prog_);
    }

private:
    const Model& model_;
    Program prog_;
    std::map<std::string, std::uint16_t> var_reg_;
    std::map<std::tuple<int, std::uint16_t, std::uint16_t>, std::uint16_t> cse_;
    std::map<int, std::uint16_t> const_reg_;
    std::vector<int> reg_depth_;
    std::uint16_t next_reg_ = 0;

    std::uint16_t constant(int value) {
        auto it = const_reg_.find(value);
        if (it != const_reg_.end())
            return it->second;
        std::uint16_t reg = next_reg_++;
        reg_depth_.push_back(0);
        prog_.const_init.emplace_back(reg, static_cast<std::uint16_t>(value));
        const_reg_[value] = reg;
        return reg;
    }

    std::uint16_t emit(int op, std::uint16_t a, std::uint16_t b) {
        if (op != 0 && a > b)
            std::swap(a, b);  // meet/join are commutative
        auto key = std::make_tuple(op, a, b);
        auto it = cse_.find(key);
        if (it != cse_.end())
            return it->second;
        std::uint16_t dst = next_reg_++;
        int depth = std::max(reg_depth_[a], reg_depth_[b]);
        prog_.instrs.push_back({static_cast<std::uint8_t>(op), a, b, dst, depth});
        reg_depth_.push_back(depth);
        cse_[key] = dst;
        return dst;
    }

    std::uint16_t compile(const Term& t) {
        switch (t.kind()) {
        case TermKind::Variable:
            return var_reg_.at(t.name());
        case TermKind::Zero:
            return constant(model_.bottom());
        case TermKind::One:
            return constant(model_.top());
        case TermKind::Complement: {
            std::uint16_t u = compile(t.child());
            return emit(0, u, u);
        }
        case TermKind::Meet:
            return emit(1, compile(t.left()), compile(t.right()));
        case TermKind::Join:
            return emit(2, compile(t.left()), compile(t.right()));
        default:
            throw Error("equation programs require expanded terms");
        }
    }
};

std::vector<std::string> merged_variables(const Term& lhs, const Term& rhs) {
    std::vector<std::string> vars = variables(lhs);
    for (const std::string& v : variables(rhs))
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            vars.push_back(v);
    return vars;
}

} // namespace

std::uint64_t Model::assignment_count(int variable_count) const {
    std::uint64_t total = 1;
    for (int i = 0; i < variable_count; ++i) {
        if (total > ~std::uint64_t{0} / n_)
            return ~std::uint64_t{0};  // saturate
        total *= n_;
    }
    return total;
}

CheckResult Model::check_equation(const Term& lhs, Rel rel, const Term& rhs,
                                  const CheckMode& mode) const {
    const std::vector<std::string> vars = merged_variables(lhs, rhs);
    const int k = static_cast<int>(vars.size());
    Program prog = ProgramBuilder(*this, vars).finish(expand(lhs), expand(rhs));

    std::vector<std::uint16_t> regs(prog.reg_count, 0);
    for (auto [reg, value] : prog.const_init)
        regs[reg] = value;

    auto exec_from = [&](int depth) {
        const std::size_t begin = prog.depth_from[static_cast<std::size_t>(depth)];
        const Instr* instr = prog.instrs.data() + begin;
        const Instr* end = prog.instrs.data() + prog.instrs.size();
        const std::uint16_t* meet_table = meet_.data();
        const std::uint16_t* join_table = join_.data();
        for (; instr != end; ++instr) {
            switch (instr->op) {
            case 0:
                regs[instr->dst] =
                    static_cast<std::uint16_t>(ortho_[regs[instr->a]]);
                break;
            case 1:
                regs[instr->dst] = meet_table[regs[instr->a] * n_ + regs[instr->b]];
                break;
            default:
                regs[instr->dst] = join_table[regs[instr->a] * n_ + regs[instr->b]];
                break;
            }
        }
    };
    auto satisfied = [&] {
        return rel == Rel::Equal ? regs[prog.lhs] == regs[prog.rhs]
                                 : le(regs[prog.lhs], regs[prog.rhs]);
    };
    auto witness_of = [&](const std::vector<int>& values) {
        Assignment w;
        for (int i = 0; i < k; ++i)
            w[vars[static_cast<std::size_t>(i)]] = ids_[static_cast<std::size_t>(values[static_cast<std::size_t>(i)])];
        return w;
    };

    CheckResult result;
    if (mode.kind == CheckMode::Kind::Random) {
        std::vector<int> values(static_cast<std::size_t>(k), 0);
        for (std::uint64_t t = 0; t < mode.trials; ++t) {
            SplitMix64 g(derive_seed(mode.seed, t));
            for (int i = 0; i < k; ++i) {
                values[static_cast<std::size_t>(i)] = static_cast<int>(g.below(n_));
                regs[static_cast<std::size_t>(i)] =
                    static_cast<std::uint16_t>(values[static_cast<std::size_t>(i)]);
            }
            exec_from(k == 0 ? 0 : 1);
            if (!satisfied()) {
                result.holds = false;
                result.witness = witness_of(values);
                result.note = "random trial " + std::to_string(t);
                result.assignments_checked = t + 1;
                return result;
            }
        }
        result.assignments_checked = mode.trials;
        return result;
    }

    // Exhaustive: odometer in lexicographic order, first variable most
    // significant; re-executes only the instructions whose deepest variable
    // changed.
    std::vector<int> values(static_cast<std::size_t>(k), 0);
    exec_from(0);
    std::uint64_t checked = 0;
    for (;;) {
        ++checked;
        if (!satisfied()) {
            result.holds = false;
            result.witness = witness_of(values);
            result.assignments_checked = checked;
            return result;
        }
        int j = k - 1;
        while (j >= 0 && values[static_cast<std::size_t>(j)] == static_cast<int>(n_) - 1) {
            values[static_cast<std::size_t>(j)] = 0;
            regs[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0)
            break;
        ++values[static_cast<std::size_t>(j)];
        regs[static_cast<std::size_t>(j)] =
            static_cast<std::uint16_t>(values[static_cast<std::size_t>(j)]);
        exec_from(j + 1);
    }
    result.assignments_checked = checked;
    return result;
}

// ---------------------------------------------------------------------------
// Law checks
// ---------------------------------------------------------------------------

CheckResult Model::check_law(Law law) const {
    const int n = size();
    CheckResult result;
    auto fail = [&](std::string note, int p, int q) {
        result.holds = false;
        result.note = std::move(note);
        Assignment w;
        w["a"] = id(p);
        w["b"] = id(q);
        result.witness = std::move(w);
    };

    switch (law) {
    case Law::Ortholattice:
        for (int p = 0; p < n && result.holds; ++p) {
            ++result.assignments_checked;
            if (ortho(ortho(p)) != p) {
                fail("complement is not an involution", p, p);
                break;
            }
            if (meet(p, ortho(p)) != bottom_) {
                fail("p ^ p' != 0", p, ortho(p));
                break;
            }
            if (join(p, ortho(p)) != top_) {
                fail("p v p' != 1", p, ortho(p));
                break;
            }
        }
        for (int p = 0; p < n && result.holds; ++p)
            for (int q = 0; q < n; ++q) {
                ++result.assignments_checked;
                if (le(p, q) && !le(ortho(q), ortho(p))) {
                    fail("complement does not reverse the order", p, q);
                    break;
                }
            }
        return result;
    case Law::Oml:
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                if (!le(p, q))
                    continue;
                ++result.assignments_checked;
                if (join(p, meet(ortho(p), q)) != q) {
                    fail("orthomodular law fails: b != a v (a' ^ b) under a <= b", p, q);
                    return result;
                }
            }
        return result;
    case Law::Woml:
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                ++result.assignments_checked;
                int lhs = join(join(meet(ortho(p), join(p, q)), ortho(q)), meet(p, q));
                if (lhs != top_) {
                    fail("WOML law fails: (a' ^ (a v b)) v b' v (a ^ b) != 1", p, q);
                    return result;
                }
            }
        return result;
    }
    throw Error("unknown law");
}

CheckResult Model::iff_characterization(int i) const {
    if (i < 0 || i > 5)
        throw std::out_of_range("equivalence index must be in 0..5");
    Term a = Term::variable("a");
    Term b = Term::variable("b");
    Term eq = expand(Term::equivalence(i, a, b));

    const int n = size();
    CheckResult result;
    std::map<std::string, int> asg;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            ++result.assignments_checked;
            asg["a"] = p;
            asg["b"] = q;
            int value = evaluate(eq, asg);
            bool is_top = value == top_;
            bool equal = p == q;
            if (is_top == equal)
                continue;
            result.holds = false;
            result.note = is_top ? "a ==" + std::to_string(i) + " b = 1 but a != b"
                                 : "a = b but a ==" + std::to_string(i) + " b != 1";
            Assignment w;
            w["a"] = id(p);
            w["b"] = id(q);
            result.witness = std::move(w);
            return result;
        }
    return result;
}

bool Model::commutes(int p, int q) const {
    return p == join(meet(p, q), meet(p, ortho(q)));
}

CheckResult Model::foulis_holland() const {
    const int n = size();
    std::vector<std::uint8_t> comm(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            comm[static_cast<std::size_t>(p) * static_cast<std::size_t>(n) + static_cast<std::size_t>(q)] =
                commutes(p, q) && commutes(q, p);

    auto commuting = [&](int p, int q) {
        return comm[static_cast<std::size_t>(p) * static_cast<std::size_t>(n) + static_cast<std::size_t>(q)] != 0;
    };

    CheckResult result;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (!commuting(p, q))
                continue;
            for (int r = 0; r < n; ++r) {
                if (!commuting(p, r) || !commuting(q, r))
                    continue;
                ++result.assignments_checked;
                if (meet(p, join(q, r)) == join(meet(p, q), meet(p, r)))
                    continue;
                result.holds = false;
                result.note = "distributivity fails on a commuting triple";
                Assignment w;
                w["a"] = id(p);
                w["b"] = id(q);
                w["c"] = id(r);
                result.witness = std::move(w);
                return result;
            }
        }
    return result;
}

ThetaReport Model::theta_relation(int i) const {
    if (i < 0 || i > 5)
        throw std::out_of_range("equivalence index must be in 0..5");
    Term eq = expand(Term::equivalence(i, Term::variable("a"), Term::variable("b")));

    const int n = size();
    std::vector<std::uint8_t> rel(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    std::map<std::string, int> asg;
    ThetaReport report;
    report.index = i;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            asg["a"] = p;
            asg["b"] = q;
            if (evaluate(eq, asg) == top_) {
                rel[static_cast<std::size_t>(p) * static_cast<std::size_t>(n) + static_cast<std::size_t>(q)] = 1;
                report.pairs.emplace_back(id(p), id(q));
            }
        }

    auto related = [&](int p, int q) {
        return rel[static_cast<std::size_t>(p) * static_cast<std::size_t>(n) + static_cast<std::size_t>(q)] != 0;
    };
    auto pair_text = [&](int p, int q) { return "(" + id(p) + ", " + id(q) + ")"; };

    report.reflexive = true;
    for (int p = 0; p < n; ++p)
        if (!related(p, p)) {
            report.reflexive = false;
            report.failures.push_back("not reflexive at " + id(p));
            break;
        }
    report.symmetric = true;
    for (int p = 0; p < n && report.symmetric; ++p)
        for (int q = 0; q < n; ++q)
            if (related(p, q) != related(q, p)) {
                report.symmetric = false;
                report.failures.push_back("not symmetric on " + pair_text(p, q));
                break;
            }
    report.transitive = true;
    for (const auto& [pid, qid] : report.pairs) {
        if (!report.transitive)
            break;
        int p = index_of(pid);
        int q = index_of(qid);
        for (int r = 0; r < n; ++r)
            if (related(q, r) && !related(p, r)) {
                report.transitive = false;
                report.failures.push_back("not transitive: " + pair_text(p, q) + " and " +
                                          pair_text(q, r) + " but not " + pair_text(p, r));
                break;
            }
    }

    report.meet_compatible = true;
    report.join_compatible = true;
    for (const auto& [pid, qid] : report.pairs) {
        if (!report.meet_compatible && !report.join_compatible)
            break;
        int p = index_of(pid);
        int q = index_of(qid);
        for (const auto& [rid, sid] : report.pairs) {
            int r = index_of(rid);
            int s = index_of(sid);
            if (report.meet_compatible && !related(meet(p, r), meet(q, s))) {
                report.meet_compatible = false;
                report.failures.push_back("meet incompatible on " + pair_text(p, q) + ", " +
                                          pair_text(r, s));
            }
            if (report.join_compatible && !related(join(p, r), join(q, s))) {
                report.join_compatible = false;
                report.failures.push_back("join incompatible on " + pair_text(p, q) + ", " +
                                          pair_text(r, s));
            }
            if (!report.meet_compatible && !report.join_compatible)
                break;
        }
    }
    report.ortho_compatible = true;
    for (const auto& [pid, qid] : report.pairs) {
        int p = index_of(pid);
        int q = index_of(qid);
        if (!related(ortho(p), ortho(q))) {
            report.ortho_compatible = false;
            report.failures.push_back("ortho incompatible on " + pair_text(p, q));
            break;
        }
    }

    report.identity = true;
    for (int p = 0; p < n && report.identity; ++p)
        for (int q = 0; q < n; ++q)
            if (related(p, q) != (p == q)) {
                report.identity = false;
                break;
            }
    return report;
}

} // namespace oml
