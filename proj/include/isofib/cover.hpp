#pragma once

#include <vector>

#include "isofib/generating_vector.hpp"
#include "isofib/group.hpp"

namespace isofib {

// A ramification point of the cover curve C -> C/G encoded by covering
// theory: the point over branch point i labeled by the coset t<l_i> in
// G/<l_i>. Its stabilizer is the cyclic group <t l_i t^-1>, and the
// distinguished local generator t l_i t^-1 acts on the tangent line by
// the primitive rotation e^(2 pi i / m_i).
struct LabeledFixedPoint {
    int branch_index;    // 0-based index into the branching data
    int coset_rep;       // canonical (minimal) element of the coset t<l_i>
    int local_generator; // t l_i t^-1

    bool operator==(const LabeledFixedPoint&) const = default;
};

// Every point of the cover with nontrivial stabilizer, ordered by
// (branch_index, coset_rep).
std::vector<LabeledFixedPoint> ramification_points(const FiniteGroup& G,
                                                   const GeneratingVector& v);

// The fixed-point set of sigma != 1: sigma fixes the point labeled t<l_i>
// iff sigma lies in t<l_i>t^-1.
std::vector<LabeledFixedPoint> fixed_points(const FiniteGroup& G, const GeneratingVector& v,
                                            int sigma);

// For sigma in the stabilizer of p, the residue u mod o(sigma), coprime to
// o(sigma), such that sigma acts on the tangent line at p by the root of
// unity e^(2 pi i u / o(sigma)).
int rotation_exponent(const FiniteGroup& G, const LabeledFixedPoint& p, int sigma);

// g . (point labeled t<l_i>) = point labeled (g t)<l_i>.
LabeledFixedPoint translate_point(const FiniteGroup& G, const GeneratingVector& v,
                                  const LabeledFixedPoint& p, int g);

}  // namespace isofib
