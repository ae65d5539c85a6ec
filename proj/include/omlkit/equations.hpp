#pragma once

#include <string>
#include <vector>

#include "omlkit/model.hpp"
#include "omlkit/term.hpp"

namespace oml {

// Named equation with parsed sides. EQ1..EQ7 are the built-in aliases for
// the equivalence-term identities and the WOML law.
struct Equation {
    std::string name;
    std::string lhs_text;
    Rel rel;
    std::string rhs_text;
    int variable_count;

    Term lhs() const { return parse(lhs_text); }
    Term rhs() const { return parse(rhs_text); }
};

const std::vector<Equation>& builtin_equations();

// Alias lookup (case-insensitive on the EQn names); throws UnknownName.
const Equation& equation_by_name(std::string_view name);

bool is_equation_alias(std::string_view name);

} // namespace oml
