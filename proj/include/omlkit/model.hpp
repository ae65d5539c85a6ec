#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omlkit/term.hpp"

namespace oml {

class FormatError : public Error {
public:
    using Error::Error;
};

// The cover/order data does not describe a lattice (cycle, missing glb/lub,
// or no global bottom/top).
class NotALattice : public Error {
public:
    using Error::Error;
};

// A lattice whose orthocomplementation violates one of the ortholattice laws.
class NotOrtholattice : public Error {
public:
    using Error::Error;
};

class UnknownName : public Error {
public:
    using Error::Error;
};

enum class Rel { Equal, Leq };

enum class Law { Ortholattice, Oml, Woml };

using Assignment = std::map<std::string, std::string>;

struct CheckResult {
    bool holds = true;
    std::optional<Assignment> witness;  // present iff !holds
    std::uint64_t assignments_checked = 0;
    std::string note;  // names the violated law/direction when it fails

    explicit operator bool() const { return holds; }
};

struct CheckMode {
    enum class Kind { Exhaustive, Random };
    Kind kind = Kind::Exhaustive;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    static CheckMode exhaustive() { return {}; }
    static CheckMode random(std::uint64_t trials, std::uint64_t seed) {
        return {Kind::Random, trials, seed};
    }
};

// Report on the relation theta_i = {(p,q) : p ==i q = 1}.
struct ThetaReport {
    int index = 0;
    bool reflexive = false;
    bool symmetric = false;
    bool transitive = false;
    bool meet_compatible = false;
    bool join_compatible = false;
    bool ortho_compatible = false;
    bool identity = false;  // relation coincides with equality
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<std::string> failures;  // counterexample description per failed property

    bool is_equivalence() const { return reflexive && symmetric && transitive; }
    bool is_congruence() const {
        return is_equivalence() && meet_compatible && join_compatible && ortho_compatible;
    }
};

// Finite ortholattice with cached meet/join tables. Immutable once built;
// construction validates every ortholattice law.
class Model {
public:
    // Parses the line-oriented model format:
    //   model <name> / elements e1 e2 ... / bottom e / top e /
    //   cover p q   (p is covered by q) / ortho p q (mutual) / end
    // '#' starts a comment.
    static Model load(std::string_view source);

    // boolean_1..boolean_5, mo2, o6, free2, woml20.
    static Model builtin(std::string_view name);

    // Builds from an explicit order relation; le must be a partial order.
    // ortho maps element index to complement index.
    static Model from_order(std::string name, std::vector<std::string> ids,
                            const std::function<bool(int, int)>& le, std::vector<int> ortho);

    const std::string& name() const { return name_; }
    int size() const { return static_cast<int>(ids_.size()); }
    const std::vector<std::string>& elements() const { return ids_; }
    const std::string& id(int e) const { return ids_[static_cast<std::size_t>(e)]; }
    int index_of(std::string_view id) const;  // throws UnknownName

    bool le(int p, int q) const { return le_[static_cast<std::size_t>(p) * n_ + q] != 0; }
    int meet(int p, int q) const { return meet_[static_cast<std::size_t>(p) * n_ + q]; }
    int join(int p, int q) const { return join_[static_cast<std::size_t>(p) * n_ + q]; }
    int ortho(int p) const { return ortho_[static_cast<std::size_t>(p)]; }
    int bottom() const { return bottom_; }
    int top() const { return top_; }

    // Evaluates a term (expanded internally) under an assignment of element
    // indices to its variables.
    int evaluate(const Term& t, const std::map<std::string, int>& assignment) const;

    // lhs rel rhs over all assignments (exhaustive, in lexicographic order
    // with the first variable most significant) or over seeded random
    // samples. The witness is the lexicographically least violation.
    CheckResult check_equation(const Term& lhs, Rel rel, const Term& rhs,
                               const CheckMode& mode = CheckMode::exhaustive()) const;

    CheckResult check_law(Law law) const;

    // (p ==i q) = 1  <=>  p = q, checked over all pairs.
    CheckResult iff_characterization(int i) const;

    // p commutes with q: p = (p^q) v (p^q').
    bool commutes(int p, int q) const;

    // Distributivity p^(qvr) = (p^q)v(p^r) on every triple whose three pairs
    // commute in both directions.
    CheckResult foulis_holland() const;

    ThetaReport theta_relation(int i) const;

    // The number of assignments of an exhaustive equation check (|m|^k).
    std::uint64_t assignment_count(int variable_count) const;

private:
    Model() = default;

    std::string name_;
    std::vector<std::string> ids_;
    std::map<std::string, int, std::less<>> index_;
    std::size_t n_ = 0;
    int bottom_ = 0;
    int top_ = 0;
    std::vector<std::uint8_t> le_;
    std::vector<std::uint16_t> meet_;
    std::vector<std::uint16_t> join_;
    std::vector<int> ortho_;
};

// Model-format source text of the shipped data files (mo2, o6, woml20).
std::string_view builtin_model_source(std::string_view name);

} // namespace oml
