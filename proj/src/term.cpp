#include "omlkit/term.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace oml {

struct Term::Node {
    TermKind kind;
    int index = 0;
    SymDiffKind sd = SymDiffKind::Nabla;
    std::string name;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
};

namespace {

void require_index(int index) {
    if (index < 0 || index > 5)
        throw std::out_of_range("connective index must be in 0..5");
}

} // namespace

Term Term::variable(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Variable;
    n->name = std::move(name);
    return Term(std::move(n));
}

Term Term::zero() {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Zero;
    return Term(std::move(n));
}

Term Term::one() {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::One;
    return Term(std::move(n));
}

Term Term::complement(Term child) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Complement;
    n->left = std::move(child.node_);
    return Term(std::move(n));
}

Term Term::meet(Term left, Term right) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Meet;
    n->left = std::move(left.node_);
    n->right = std::move(right.node_);
    return Term(std::move(n));
}

Term Term::join(Term left, Term right) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Join;
    n->left = std::move(left.node_);
    n->right = std::move(right.node_);
    return Term(std::move(n));
}

Term Term::implication(int index, Term left, Term right) {
    require_index(index);
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Implication;
    n->index = index;
    n->left = std::move(left.node_);
    n->right = std::move(right.node_);
    return Term(std::move(n));
}

Term Term::equivalence(int index, Term left, Term right) {
    require_index(index);
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Equivalence;
    n->index = index;
    n->left = std::move(left.node_);
    n->right = std::move(right.node_);
    return Term(std::move(n));
}

Term Term::sym_diff(SymDiffKind kind, Term left, Term right) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::SymDiff;
    n->sd = kind;
    n->left = std::move(left.node_);
    n->right = std::move(right.node_);
    return Term(std::move(n));
}

TermKind Term::kind() const noexcept { return node_->kind; }

const std::string& Term::name() const { return node_->name; }

int Term::index() const { return node_->index; }

SymDiffKind Term::sym_diff_kind() const { return node_->sd; }

Term Term::child() const { return Term(node_->left); }

Term Term::left() const { return Term(node_->left); }

Term Term::right() const { return Term(node_->right); }

bool Term::operator==(const Term& other) const {
    const Node* a = node_.get();
    const Node* b = other.node_.get();
    if (a == b)
        return true;
    if (a->kind != b->kind)
        return false;
    switch (a->kind) {
    case TermKind::Variable:
        return a->name == b->name;
    case TermKind::Zero:
    case TermKind::One:
        return true;
    case TermKind::Complement:
        return Term(a->left) == Term(b->left);
    case TermKind::Meet:
    case TermKind::Join:
        return Term(a->left) == Term(b->left) && Term(a->right) == Term(b->right);
    case TermKind::Implication:
    case TermKind::Equivalence:
        return a->index == b->index && Term(a->left) == Term(b->left) &&
               Term(a->right) == Term(b->right);
    case TermKind::SymDiff:
        return a->sd == b->sd && Term(a->left) == Term(b->left) &&
               Term(a->right) == Term(b->right);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class TokKind {
    End,
    LParen,
    RParen,
    Ident,
    Zero,
    One,
    Prime,  // postfix complement
    Dash,   // prefix complement
    Meet,
    Join,
    Arrow,  // carries index
    Equiv,  // carries index
    SymD,   // carries SymDiffKind
};

struct Token {
    TokKind kind;
    std::size_t pos;  // 1-based byte position
    int index = 0;
    SymDiffKind sd = SymDiffKind::Nabla;
    std::string text;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            Token t = next();
            out.push_back(t);
            if (t.kind == TokKind::End)
                break;
        }
        return out;
    }

private:
    std::string_view text_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(std::size_t pos, const std::string& msg) {
        throw SyntaxError(msg + " at position " + std::to_string(pos), pos);
    }

    bool starts_with(std::string_view s) const {
        return text_.substr(i_).substr(0, s.size()) == s;
    }

    Token next() {
        while (i_ < text_.size() &&
               (text_[i_] == ' ' || text_[i_] == '\t' || text_[i_] == '\n' || text_[i_] == '\r'))
            ++i_;
        std::size_t pos = i_ + 1;
        if (i_ >= text_.size())
            return {TokKind::End, pos};
        char c = text_[i_];
        switch (c) {
        case '(': ++i_; return {TokKind::LParen, pos};
        case ')': ++i_; return {TokKind::RParen, pos};
        case '\'': ++i_; return {TokKind::Prime, pos};
        case '^': ++i_; return {TokKind::Meet, pos};
        case '0': ++i_; return {TokKind::Zero, pos};
        case '1': ++i_; return {TokKind::One, pos};
        default: break;
        }
        if (c == '-') {
            if (i_ + 2 < text_.size() + 1 && starts_with("->")) {
                std::size_t d = i_ + 2;
                if (d < text_.size() && text_[d] >= '0' && text_[d] <= '5') {
                    i_ = d + 1;
                    return {TokKind::Arrow, pos, text_[d] - '0'};
                }
                fail(pos, "implication needs an index digit 0..5");
            }
            ++i_;
            return {TokKind::Dash, pos};
        }
        if (c == '=') {
            if (!starts_with("=="))
                fail(pos, "single '=' is not an operator (use ==0..==5 or ==)");
            std::size_t d = i_ + 2;
            if (d < text_.size() && text_[d] >= '0' && text_[d] <= '5') {
                i_ = d + 1;
                return {TokKind::Equiv, pos, text_[d] - '0'};
            }
            i_ = d;
            return {TokKind::Equiv, pos, 5};  // bare == means ==5
        }
        if (c == '+') {
            ++i_;
            std::string suffix;
            while (i_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[i_])))
                suffix += text_[i_++];
            if (suffix == "l") return {TokKind::SymD, pos, 0, SymDiffKind::PlusL};
            if (suffix == "r") return {TokKind::SymD, pos, 0, SymDiffKind::PlusR};
            if (suffix == "lp") return {TokKind::SymD, pos, 0, SymDiffKind::PlusLp};
            if (suffix == "rp") return {TokKind::SymD, pos, 0, SymDiffKind::PlusRp};
            fail(pos, "unknown symmetric difference '+" + suffix + "'");
        }
        // Unicode aliases (UTF-8): union, intersection, equivalence, arrow.
        if (starts_with("\xE2\x88\xAA")) { i_ += 3; return {TokKind::Join, pos}; }
        if (starts_with("\xE2\x88\xA9")) { i_ += 3; return {TokKind::Meet, pos}; }
        if (starts_with("\xE2\x89\xA1")) {
            i_ += 3;
            if (i_ < text_.size() && text_[i_] == '_') ++i_;
            if (i_ < text_.size() && text_[i_] >= '0' && text_[i_] <= '5')
                return {TokKind::Equiv, pos, text_[i_++] - '0'};
            return {TokKind::Equiv, pos, 5};
        }
        if (starts_with("\xE2\x86\x92")) {
            i_ += 3;
            if (i_ < text_.size() && text_[i_] == '_') ++i_;
            if (i_ < text_.size() && text_[i_] >= '0' && text_[i_] <= '5')
                return {TokKind::Arrow, pos, text_[i_++] - '0'};
            fail(pos, "implication needs an index digit 0..5");
        }
        if (ident_start(c)) {
            std::size_t start = i_;
            while (i_ < text_.size() && ident_char(text_[i_]))
                ++i_;
            std::string word(text_.substr(start, i_ - start));
            if (word == "v") return {TokKind::Join, pos};
            if (word == "nabla") return {TokKind::SymD, pos, 0, SymDiffKind::Nabla};
            if (word == "delta") return {TokKind::SymD, pos, 0, SymDiffKind::Delta};
            Token t{TokKind::Ident, pos};
            t.text = std::move(word);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            fail(pos, "only the constants 0 and 1 are allowed");
        fail(pos, std::string("unexpected character '") + c + "'");
    }
};

// ---------------------------------------------------------------------------
// Recursive-descent parser
// ---------------------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Term run() {
        Term t = parse_rel();
        if (peek().kind != TokKind::End)
            throw SyntaxError("unexpected trailing input at position " +
                                  std::to_string(peek().pos),
                              peek().pos);
        return t;
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;

    const Token& peek() const { return toks_[i_]; }
    Token take() { return toks_[i_++]; }

    static bool is_rel(TokKind k) {
        return k == TokKind::Arrow || k == TokKind::Equiv || k == TokKind::SymD;
    }

    Term parse_rel() {
        Term left = parse_join();
        if (!is_rel(peek().kind))
            return left;
        Token op = take();
        Term right = parse_join();
        if (is_rel(peek().kind))
            throw AmbiguityError(
                "implication/equivalence/symmetric-difference operators are "
                "non-associative; parenthesize the chain at position " +
                    std::to_string(peek().pos),
                peek().pos);
        switch (op.kind) {
        case TokKind::Arrow: return Term::implication(op.index, left, right);
        case TokKind::Equiv: return Term::equivalence(op.index, left, right);
        default: return Term::sym_diff(op.sd, left, right);
        }
    }

    Term parse_join() {
        Term t = parse_meet();
        while (peek().kind == TokKind::Join) {
            take();
            t = Term::join(t, parse_meet());
        }
        return t;
    }

    Term parse_meet() {
        Term t = parse_unary();
        while (peek().kind == TokKind::Meet) {
            take();
            t = Term::meet(t, parse_unary());
        }
        return t;
    }

    Term parse_unary() {
        if (peek().kind == TokKind::Dash) {
            take();
            return Term::complement(parse_unary());
        }
        Term t = parse_primary();
        while (peek().kind == TokKind::Prime) {
            take();
            t = Term::complement(t);
        }
        return t;
    }

    Term parse_primary() {
        Token t = take();
        switch (t.kind) {
        case TokKind::LParen: {
            Term inner = parse_rel();
            if (peek().kind != TokKind::RParen)
                throw SyntaxError("expected ')' at position " + std::to_string(peek().pos),
                                  peek().pos);
            take();
            return inner;
        }
        case TokKind::Ident: return Term::variable(t.text);
        case TokKind::Zero: return Term::zero();
        case TokKind::One: return Term::one();
        case TokKind::End:
            throw SyntaxError("unexpected end of input at position " + std::to_string(t.pos),
                              t.pos);
        default:
            throw SyntaxError("unexpected token at position " + std::to_string(t.pos), t.pos);
        }
    }
};

} // namespace

Term parse(std::string_view text) {
    return Parser(Lexer(text).run()).run();
}

// ---------------------------------------------------------------------------
// Expansion into {complement, meet, join}
// ---------------------------------------------------------------------------

namespace {

Term expand_implication(int index, const Term& a, const Term& b) {
    Term ac = Term::complement(a);
    Term bc = Term::complement(b);
    switch (index) {
    case 0: return Term::join(ac, b);
    case 1: return Term::join(ac, Term::meet(a, b));
    case 2: return Term::join(b, Term::meet(ac, bc));
    case 3:
        return Term::join(Term::join(Term::meet(ac, b), Term::meet(ac, bc)),
                          Term::meet(a, Term::join(ac, b)));
    case 4:
        return Term::join(Term::join(Term::meet(a, b), Term::meet(ac, b)),
                          Term::meet(Term::join(ac, b), bc));
    default:
        return Term::join(Term::join(Term::meet(a, b), Term::meet(ac, b)), Term::meet(ac, bc));
    }
}

Term expand_equivalence(int index, const Term& a, const Term& b) {
    Term ac = Term::complement(a);
    Term bc = Term::complement(b);
    switch (index) {
    case 0: return Term::meet(Term::join(ac, b), Term::join(a, bc));
    case 1: return Term::meet(Term::join(a, bc), Term::join(ac, Term::meet(a, b)));
    case 2: return Term::meet(Term::join(a, bc), Term::join(b, Term::meet(ac, bc)));
    case 3: return Term::meet(Term::join(ac, b), Term::join(a, Term::meet(ac, bc)));
    case 4: return Term::meet(Term::join(ac, b), Term::join(bc, Term::meet(a, b)));
    default: return Term::join(Term::meet(a, b), Term::meet(ac, bc));
    }
}

int sym_diff_base(SymDiffKind k) {
    switch (k) {
    case SymDiffKind::Nabla: return 0;
    case SymDiffKind::Delta: return 5;
    case SymDiffKind::PlusL: return 1;
    case SymDiffKind::PlusR: return 4;
    case SymDiffKind::PlusLp: return 3;
    default: return 2;  // PlusRp
    }
}

} // namespace

Term expand(const Term& t) {
    switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Zero:
    case TermKind::One:
        return t;
    case TermKind::Complement:
        return Term::complement(expand(t.child()));
    case TermKind::Meet:
        return Term::meet(expand(t.left()), expand(t.right()));
    case TermKind::Join:
        return Term::join(expand(t.left()), expand(t.right()));
    case TermKind::Implication:
        return expand_implication(t.index(), expand(t.left()), expand(t.right()));
    case TermKind::Equivalence:
        return expand_equivalence(t.index(), expand(t.left()), expand(t.right()));
    case TermKind::SymDiff:
        return Term::complement(
            expand_equivalence(sym_diff_base(t.sym_diff_kind()), expand(t.left()), expand(t.right())));
    }
    throw Error("corrupt term");
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

const char* sym_diff_token(SymDiffKind k) {
    switch (k) {
    case SymDiffKind::Nabla: return "nabla";
    case SymDiffKind::Delta: return "delta";
    case SymDiffKind::PlusL: return "+l";
    case SymDiffKind::PlusR: return "+r";
    case SymDiffKind::PlusLp: return "+lp";
    default: return "+rp";
    }
}

void print_into(const Term& t, std::string& out) {
    switch (t.kind()) {
    case TermKind::Variable: out += t.name(); return;
    case TermKind::Zero: out += '0'; return;
    case TermKind::One: out += '1'; return;
    case TermKind::Complement:
        print_into(t.child(), out);
        out += '\'';
        return;
    case TermKind::Meet:
        out += '(';
        print_into(t.left(), out);
        out += " ^ ";
        print_into(t.right(), out);
        out += ')';
        return;
    case TermKind::Join:
        out += '(';
        print_into(t.left(), out);
        out += " v ";
        print_into(t.right(), out);
        out += ')';
        return;
    case TermKind::Implication:
        out += '(';
        print_into(t.left(), out);
        out += " ->";
        out += static_cast<char>('0' + t.index());
        out += ' ';
        print_into(t.right(), out);
        out += ')';
        return;
    case TermKind::Equivalence:
        out += '(';
        print_into(t.left(), out);
        out += " ==";
        out += static_cast<char>('0' + t.index());
        out += ' ';
        print_into(t.right(), out);
        out += ')';
        return;
    case TermKind::SymDiff:
        out += '(';
        print_into(t.left(), out);
        out += ' ';
        out += sym_diff_token(t.sym_diff_kind());
        out += ' ';
        print_into(t.right(), out);
        out += ')';
        return;
    }
}

} // namespace

std::string print(const Term& t) {
    std::string out;
    print_into(t, out);
    return out;
}

namespace {

void collect_variables(const Term& t, std::vector<std::string>& out) {
    switch (t.kind()) {
    case TermKind::Variable: {
        for (const auto& seen : out)
            if (seen == t.name())
                return;
        out.push_back(t.name());
        return;
    }
    case TermKind::Zero:
    case TermKind::One:
        return;
    case TermKind::Complement:
        collect_variables(t.child(), out);
        return;
    default:
        collect_variables(t.left(), out);
        collect_variables(t.right(), out);
        return;
    }
}

} // namespace

std::vector<std::string> variables(const Term& t) {
    std::vector<std::string> out;
    collect_variables(t, out);
    return out;
}

std::size_t connective_count(const Term& t) {
    switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Zero:
    case TermKind::One:
        return 0;
    case TermKind::Complement:
        return 1 + connective_count(t.child());
    default:
        return 1 + connective_count(t.left()) + connective_count(t.right());
    }
}

} // namespace oml
