#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oml {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parse failure carrying a 1-based byte position into the input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class SyntaxError : public ParseError {
public:
    using ParseError::ParseError;
};

// Raised when the non-associative operators (->i, ==i, symmetric
// differences) are chained without parentheses.
class AmbiguityError : public ParseError {
public:
    using ParseError::ParseError;
};

enum class TermKind {
    Variable,
    Zero,
    One,
    Complement,
    Meet,
    Join,
    Implication,
    Equivalence,
    SymDiff,
};

enum class SymDiffKind { Nabla, Delta, PlusL, PlusR, PlusLp, PlusRp };

// Immutable ortholattice term. Leaves are named variables and the
// constants 0/1; inner nodes are complement, meet, join, the six
// implications ->0..->5, the six equivalences ==0..==5 and the six
// symmetric differences. Values share structure and are cheap to copy.
class Term {
public:
    static Term variable(std::string name);
    static Term zero();
    static Term one();
    static Term complement(Term child);
    static Term meet(Term left, Term right);
    static Term join(Term left, Term right);
    static Term implication(int index, Term left, Term right);  // index in 0..5
    static Term equivalence(int index, Term left, Term right);  // index in 0..5
    static Term sym_diff(SymDiffKind kind, Term left, Term right);

    TermKind kind() const noexcept;
    const std::string& name() const;   // Variable only
    int index() const;                 // Implication/Equivalence only
    SymDiffKind sym_diff_kind() const; // SymDiff only
    Term child() const;                // Complement only
    Term left() const;
    Term right() const;

    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Parses the ASCII term grammar (Unicode aliases for the four common
// connectives are accepted on input):
//   variables    identifiers other than the reserved words
//   constants    0  1
//   complement   postfix '  or prefix -
//   meet         ^   (also accepts the Unicode intersection sign)
//   join         v   (also accepts the Unicode union sign)
//   implication  ->0 .. ->5
//   equivalence  ==0 .. ==5, bare == means ==5
//   sym. diff.   nabla  delta  +l  +r  +lp  +rp
// Precedence: complement > meet > join > implication/equivalence/symdiff.
// The last group is non-associative; chaining them needs parentheses.
Term parse(std::string_view text);

// Rewrites every derived connective into {complement, meet, join}.
Term expand(const Term& t);

// Fully parenthesized deterministic rendering; parse(print(t)) == t.
std::string print(const Term& t);

// Distinct variable names in order of first occurrence (preorder).
std::vector<std::string> variables(const Term& t);

// Number of connective nodes (everything except variables and constants).
std::size_t connective_count(const Term& t);

} // namespace oml
