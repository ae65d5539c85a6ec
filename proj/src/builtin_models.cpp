#include "omlkit/model.hpp"

namespace oml {

namespace {

constexpr std::string_view kMo2Source = R"(# MO2: the six-element orthomodular lattice with two complementary atom
# pairs (also written OM6). Atoms x, y, y', x'; any two distinct atoms
# meet at 0 and join at 1.
model mo2
elements 0 x y y' x' 1
bottom 0
top 1
cover 0 x
cover 0 y
cover 0 y'
cover 0 x'
cover x 1
cover y 1
cover y' 1
cover x' 1
ortho 0 1
ortho x x'
ortho y y'
end
)";

constexpr std::string_view kO6Source = R"(# O6 (the benzene ring): the smallest ortholattice that is not
# orthomodular. 0 < p < q' < 1 and 0 < q < p' < 1.
model o6
elements 0 p q q' p' 1
bottom 0
top 1
cover 0 p
cover 0 q
cover p q'
cover q p'
cover q' 1
cover p' 1
ortho 0 1
ortho p p'
ortho q q'
end
)";

// 20-element weakly orthomodular lattice that is not orthomodular,
// reconstructed from its published Hasse drawing. The drawing renders some
// chains as single straight strokes (w-z-y-x, x-s-r and their duals), which
// leaves the covers of s ambiguous on paper; this reading takes every
// lattice point lying on a stroke to split it into covers, which is the
// unique reading where each element has both a lower and an upper cover.
// Gate checks (valid ortholattice, WOML law holds, OML law fails, the
// 3-variable equivalence-distributivity equation fails, the
// equivalence-implication tautology holds) pin the reconstruction down.
constexpr std::string_view kWoml20Source = R"(# woml20: a 20-element WOML in which the orthomodular law fails.
model woml20
elements 0 w v' x' z u' s' y t r t' y' s u z' r' x v w' 1
bottom 0
top 1
cover 0 w
cover 0 v'
cover 0 x'
cover w z
cover w r
cover v' z
cover v' u'
cover x' y'
cover x' s'
cover z y
cover z t
cover u' t
cover u' r'
cover s' t'
cover s' r'
cover y x
cover t s
cover r s
cover r u
cover t' z'
cover t' u
cover y' z'
cover s x
cover u v
cover z' w'
cover z' v
cover r' w'
cover x 1
cover v 1
cover w' 1
ortho 0 1
ortho x x'
ortho y y'
ortho z z'
ortho w w'
ortho r r'
ortho s s'
ortho t t'
ortho u u'
ortho v v'
end
)";

} // namespace

std::string_view builtin_model_source(std::string_view name) {
    if (name == "mo2")
        return kMo2Source;
    if (name == "o6")
        return kO6Source;
    if (name == "woml20")
        return kWoml20Source;
    throw UnknownName("no shipped model source named '" + std::string(name) + "'");
}

} // namespace oml
