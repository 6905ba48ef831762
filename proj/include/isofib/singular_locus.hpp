#pragma once

#include <string>
#include <vector>

#include "isofib/cover.hpp"
#include "isofib/generating_vector.hpp"
#include "isofib/group.hpp"

namespace isofib {

// Oriented cyclic quotient singularity type 1/n(1,q): the stabilizer
// generator normalized to act by (xi u, xi^q v) with u the C1-direction
// tangent coordinate. Orientation matters: 1/7(1,2) and 1/7(1,4) are
// distinct entries, and the orientation decides which end of the HJ string
// meets the fibre's central component.
struct SingularityType {
    int n = 1;
    int q = 0;

    bool operator==(const SingularityType&) const = default;
    auto operator<=>(const SingularityType&) const = default;
    std::string str() const;  // "1/7(1,2)"
};

// One G-orbit of stabilized points of C1 x C2, i.e. one singular point of
// T = (C1 x C2)/G.
struct BasketEntry {
    SingularityType type;
    int fibre1_index = -1;  // branch point of C1/G under the orbit (0-based)
    int fibre2_index = -1;  // branch point of C2/G under the orbit (0-based)
    long orbit_size = 0;    // |G| / n
};

struct Basket {
    std::vector<BasketEntry> entries;
    long stabilized_points = 0;  // points of C1 x C2 with nontrivial stabilizer
};

struct StabilizedPair {
    LabeledFixedPoint p1, p2;
    int stab_gen = 0;  // generator of Stab(p1) & Stab(p2)
    int stab_order = 1;
};

// All pairs (p1, p2) of labeled points with nontrivial common stabilizer,
// each with a generator of the (cyclic) intersection.
std::vector<StabilizedPair> stabilized_points(const FiniteGroup& G, const GeneratingVector& v1,
                                              const GeneratingVector& v2);

// Groups the stabilized pairs into G-orbits and computes each orbit's
// oriented singularity type from the rotation exponents of its stabilizer
// generator. The type is recomputed from every orbit member; disagreement
// raises internal_error.
Basket compute_basket(const FiniteGroup& G, const GeneratingVector& v1,
                      const GeneratingVector& v2);

// "2 x 1/2(1,1)" / "1/3(1,1) + 1/3(1,2)", grouped and sorted by (n, q).
std::string basket_str(const Basket& basket);

}  // namespace isofib
