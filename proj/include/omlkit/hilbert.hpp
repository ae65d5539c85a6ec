#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "omlkit/model.hpp"
#include "omlkit/term.hpp"

namespace oml {

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

using Rat = mpq_class;
using RatMatrix = std::vector<std::vector<Rat>>;  // rows are vectors

// Subspace of Q^n held as an exact-rational basis in reduced row-echelon
// form. RREF is canonical, so equality is plain field comparison.
class Subspace {
public:
    // Reduces the generators to RREF and drops zero rows.
    Subspace(int ambient_dim, RatMatrix generators);

    static Subspace zero_space(int n) { return Subspace(n, {}); }
    static Subspace full_space(int n);

    int ambient_dim() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const RatMatrix& basis() const { return basis_; }

    bool operator==(const Subspace& other) const {
        return n_ == other.n_ && basis_ == other.basis_;
    }
    bool operator!=(const Subspace& other) const { return !(*this == other); }

    std::string to_string() const;

private:
    int n_;
    RatMatrix basis_;
};

Subspace meet(const Subspace& u, const Subspace& v);   // intersection
Subspace join(const Subspace& u, const Subspace& v);   // span of the union
Subspace ortho(const Subspace& u);                     // orthogonal complement
bool leq(const Subspace& u, const Subspace& v);        // u contained in v

// RREF of a random integer matrix with entries in [-3,3] and a random row
// count in [0,n]; identical seed, identical subspace.
Subspace random_subspace(int n, std::uint64_t seed);

struct SubspaceCheckResult {
    bool holds = true;
    std::map<std::string, Subspace> witness;  // populated iff !holds
    std::uint64_t trials_checked = 0;

    explicit operator bool() const { return holds; }
};

// Evaluates a term under an assignment of subspaces to its variables.
Subspace evaluate_subspace(int n, const Term& t, const std::map<std::string, Subspace>& assignment);

// lhs rel rhs over `trials` random assignments in Q^n. Per-trial seeds come
// from the master seed, so verdicts do not depend on evaluation order.
SubspaceCheckResult check_equation_random(int n, const Term& lhs, Rel rel, const Term& rhs,
                                          std::uint64_t trials, std::uint64_t seed);

} // namespace oml
