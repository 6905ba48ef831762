#pragma once

#include <string>
#include <vector>

#include "isofib/invariants.hpp"
#include "isofib/rational.hpp"
#include "isofib/singular_locus.hpp"

namespace isofib {

struct FibreComponent {
    std::string label;
    long mult = 1;    // coefficient in the fibre class F
    long self = 0;    // self-intersection
    long k_deg = 0;   // K . Z
    long genus = 0;
    bool alive = true;
};

// One HJ string on a fibre. The curve list is oriented away from the
// central component: the first curve is the one meeting Y, and the stored
// expansion reads n/q_att from that end.
struct FibreString {
    SingularityType type;  // oriented basket type
    long q_att = 1;        // residue whose expansion is read from the Y end
    std::vector<int> comps;
    Rational B;            // the singular point's share of 8chi - K^2
};

// Weighted curve configuration of one fibre of the chosen projection:
// F = m Y + sum over strings of c_j Z_j, with full intersection matrix so
// blow-downs can be replayed on it.
struct FibreModel {
    int base_choice = 2;     // 1: base C1/G (fibres ~ C2); 2: base C2/G (fibres ~ C1)
    int branch_index = -1;   // 0-based branch point of the base curve; -1 = general fibre
    long m = 1;              // local period = multiplicity of the central component
    int fibre_genus = 0;     // genus of the general fibre curve
    int central = 0;
    std::vector<FibreComponent> comps;
    std::vector<std::vector<long>> inter;
    std::vector<FibreString> strings;

    // central-genus cross-check: adjunction vs Riemann-Hurwitz for
    // (fibre curve)/<local monodromy>
    long rh_central_genus = -1;
    bool genus_routes_agree = true;

    long fibre_k_degree() const;  // K.F, stays 2 g_fibre - 2 throughout
};

// Builds the fibre configuration over one branch point of the chosen base:
// central component with multiplicity m plus the HJ strings of all basket
// entries assigned to this fibre, multiplicities solved from F.Z = 0.
FibreModel build_fibre(const SurfaceRecord& rec, int base_choice, int branch_index);

struct BlowdownTrace {
    struct Step {
        std::string label;
        int comp = -1;
    };
    std::vector<Step> steps;
    long beta() const { return static_cast<long>(steps.size()); }
};

// Repeatedly contracts the first alive component with K-degree = self = -1
// (central first, then string curves in index order) until none remains.
// Returns the final configuration plus the ordered trace. The fibre class
// identities F.Z = 0, F^2 = 0, K.F = 2g-2 are re-checked after every step.
std::pair<FibreModel, BlowdownTrace> contract_to_relative_minimal(FibreModel f);

// delta(F) = sum of B over the singular points on F minus the number of
// blow-downs inside F.
Rational fibre_delta(const FibreModel& contracted, const BlowdownTrace& trace);

struct AmplenessVerdict {
    bool minimal = false;             // X itself has no (-1)-curves in fibres
    bool K_ample = false;             // K of the relatively minimal model is ample
    bool canonical_model_is_T = false;
};

// Judged from the contracted fibre configurations of both projections:
// minimal iff no contraction happened anywhere, K_ample iff no surviving
// component has K-degree <= 0, canonical_model_is_T iff minimal and every
// basket entry is a rational double point.
AmplenessVerdict ampleness_verdict(const SurfaceRecord& rec,
                                   const std::vector<FibreModel>& contracted,
                                   const std::vector<BlowdownTrace>& traces);

// Checks F.Z = 0 for every alive component, F^2 = 0 and K.F = 2g-2;
// throws internal_error on violation.
void check_fibre_class(const FibreModel& f);

// Text-art component tree with multiplicity, self-intersection and K-degree.
std::string fibre_diagram(const FibreModel& f);

// "7Y + 4A1 + A2 + 2B1 + B2 + C1" over alive components.
std::string fibre_class_str(const FibreModel& f);

}  // namespace isofib
