#pragma once

#include <string>

#include "isofib/fibre.hpp"
#include "isofib/invariants.hpp"
#include "isofib/rational.hpp"

namespace isofib {

// Evaluation of the two target inequalities on one analyzed surface:
//   K^2 <= 8 chi(O)       for the relatively minimal model (always reported),
//   K^2 <= 8 chi(O) - 2   when the surface passes the applicability guard,
//   K^2 <= 8 chi(O) - 5   additionally when K of the minimal model is ample.
struct GateVerdict {
    bool applicable = false;
    std::string reason;        // why the guard failed, empty when applicable

    bool serrano_tan_ok = false;
    bool serrano_tan_equality = false;

    bool main1_ok = false;
    bool main1_equality = false;
    // when main-1 equality holds: canonical model must have precisely two
    // ordinary double points
    bool equality_case_ok = false;
    std::string equality_case_note;

    bool main2_checked = false;
    bool main2_ok = false;
    bool main2_equality = false;

    long K2_minimal_model = 0;
    long gap = 0;              // 8 chi - K^2 of the minimal model
};

// The guard: the chosen fibration has base genus >= 1, the surface is not
// a quasi-bundle, and both curve genera are >= 2 (so the surface is of
// general type and in particular not ruled). The gate runs on the
// contracted model; total_beta is the blow-down count of the chosen
// fibration and delta_sum the sum of delta(F) over its fibres, which must
// equal the gap exactly.
GateVerdict theorem_check(const SurfaceRecord& rec, const Invariants& inv, int base_choice,
                          long total_beta, const Rational& delta_sum,
                          const AmplenessVerdict& ample);

}  // namespace isofib
