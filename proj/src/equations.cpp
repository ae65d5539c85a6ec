#include "omlkit/equations.hpp"

#include <algorithm>
#include <cctype>

namespace oml {

const std::vector<Equation>& builtin_equations() {
    static const std::vector<Equation> equations = {
        {"EQ1", "(a ->1 b) ^ (b ->2 c) ^ (c ->1 d) ^ (d ->2 a)", Rel::Equal,
         "(a ==5 b) ^ (b ==5 c) ^ (c ==5 d)", 4},
        {"EQ2", "(a ->5 b) ^ (b ->5 c) ^ (c ->5 d) ^ (d ->5 a)", Rel::Equal,
         "(a ==5 b) ^ (b ==5 c) ^ (c ==5 d)", 4},
        {"EQ3", "(a ->1 b) ^ (b ->2 c) ^ (c ->1 a)", Rel::Leq, "a ==5 c", 3},
        {"EQ4", "(a ==5 b) ^ ((b ==5 c) v (a ==5 c))", Rel::Equal,
         "((a ==5 b) ^ (b ==5 c)) v ((a ==5 b) ^ (a ==5 c))", 3},
        {"EQ5", "(a ==5 b) ^ ((b ==5 c) v (a ==5 c))", Rel::Leq, "a ==5 c", 3},
        {"EQ6", "(a ==5 b) ->0 ((a ==5 c) ==5 (b ==5 c))", Rel::Equal, "1", 3},
        {"EQ7", "(a' ^ (a v b)) v b' v (a ^ b)", Rel::Equal, "1", 2},
    };
    return equations;
}

bool is_equation_alias(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (const Equation& eq : builtin_equations())
        if (eq.name == upper)
            return true;
    return false;
}

const Equation& equation_by_name(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (const Equation& eq : builtin_equations())
        if (eq.name == upper)
            return eq;
    throw UnknownName("no built-in equation named '" + std::string(name) +
                      "' (expected EQ1..EQ7)");
}

} // namespace oml
