#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "omlkit/model.hpp"
#include "omlkit/term.hpp"

namespace oml {

// Raised by eval2 when a term mentions three or more distinct variables.
class TooManyVariables : public Error {
public:
    using Error::Error;
};

// MO2 component of the free orthomodular lattice on two generators.
// Canonical index m = 1..6 follows the declaration order.
enum class MO2 : std::uint8_t { zero = 0, x, y, y_comp, x_comp, one };

MO2 mo2_meet(MO2 a, MO2 b);
MO2 mo2_join(MO2 a, MO2 b);
inline MO2 mo2_complement(MO2 a) { return static_cast<MO2>(5 - static_cast<int>(a)); }
inline int mo2_index(MO2 a) { return static_cast<int>(a) + 1; }

// Boolean component: four bits meaning (a&b, a&b', a'&b, a'&b'), stored with
// the first coordinate in bit 3. Canonical index v = 1..16 orders the masks
// by weight, then by descending numeric value within a weight class.
int bool_part_index(std::uint8_t bits);           // 1..16
std::uint8_t bool_part_from_index(int v);         // inverse
inline int bool_weight(std::uint8_t bits) { return __builtin_popcount(bits & 0xF); }

// Element of MO2 x 2^4; bijective with the Beran numbers 1..96.
struct FreeElem {
    MO2 m;
    std::uint8_t bits;  // low 4 bits used

    friend bool operator==(const FreeElem& a, const FreeElem& b) {
        return a.m == b.m && a.bits == b.bits;
    }
    friend auto operator<=>(const FreeElem& a, const FreeElem& b) = default;
};

inline FreeElem fe_meet(FreeElem a, FreeElem b) {
    return {mo2_meet(a.m, b.m), static_cast<std::uint8_t>(a.bits & b.bits)};
}
inline FreeElem fe_join(FreeElem a, FreeElem b) {
    return {mo2_join(a.m, b.m), static_cast<std::uint8_t>(a.bits | b.bits)};
}
inline FreeElem fe_complement(FreeElem a) {
    return {mo2_complement(a.m), static_cast<std::uint8_t>(~a.bits & 0xF)};
}

constexpr FreeElem free_bottom{MO2::zero, 0x0};
constexpr FreeElem free_top{MO2::one, 0xF};
constexpr FreeElem free_gen_a{MO2::x, 0xC};  // (1,1,0,0)
constexpr FreeElem free_gen_b{MO2::y, 0xA};  // (1,0,1,0)

int beran_index(FreeElem e);       // 1..96
FreeElem from_beran(int n);        // throws std::out_of_range outside 1..96

// Evaluates a term with at most two distinct variables in MO2 x 2^4.
// First variable (by first occurrence) binds to generator a, second to b.
FreeElem eval2(const Term& t);

// Evaluates an expanded or unexpanded term under an explicit assignment of
// free elements to its variables.
FreeElem eval_free(const Term& t, const std::vector<std::pair<std::string, FreeElem>>& assignment);

// Evaluates a term over the named generators: variable a binds to the first
// generator and b to the second regardless of occurrence order. Rejects any
// other variable name.
FreeElem eval_ab(const Term& t);

// Smallest term over variables a,b (fewest connectives, deterministic
// tie-break) whose eval2 equals from_beran(n). Built once by breadth-first
// enumeration over the 96 elements and cached.
Term canonical_term(int n);

// Entry (i,j) is the Beran index of (a ->i b) ^ (b ->j a).
std::array<std::array<int, 6>, 6> product_table();

// The published reduction of those 36 products to Beran indices;
// product_table() must reproduce it entry for entry.
const std::array<std::array<int, 6>, 6>& reference_product_table();

// Least set containing the seeds that is closed under every op, each op a
// term in variables a and/or b applied to all ordered pairs.
std::set<FreeElem> closure(const std::set<FreeElem>& seeds, const std::vector<Term>& ops);

// The 96-element lattice as a finite model; element ids are the Beran
// numbers "1".."96".
Model free2_as_model();

} // namespace oml
