#include "isofib/theorem_gate.hpp"

#include "isofib/errors.hpp"
#include "isofib/hirzebruch_jung.hpp"

namespace isofib {

GateVerdict theorem_check(const SurfaceRecord& rec, const Invariants& inv, int base_choice,
                          long total_beta, const Rational& delta_sum,
                          const AmplenessVerdict& ample) {
    GateVerdict v;
    v.K2_minimal_model = inv.K2 + total_beta;
    v.gap = 8 * inv.chi - v.K2_minimal_model;
    if (Rational(v.gap) != delta_sum)
        throw internal_error("gap 8chi - K^2 = " + std::to_string(v.gap) +
                             " differs from sum of delta(F) = " + delta_sum.str());

    v.serrano_tan_ok = v.gap >= 0;
    v.serrano_tan_equality = v.gap == 0;

    int base_genus = base_choice == 2 ? rec.base2 : rec.base1;
    if (base_genus < 1)
        v.reason = "base curve of the chosen fibration has genus 0";
    else if (is_quasi_bundle(rec))
        v.reason = "surface is a quasi-bundle";
    else if (rec.g1 < 2 || rec.g2 < 2)
        v.reason = "a fibre genus is below 2 (surface may be ruled)";
    v.applicable = v.reason.empty();

    v.main1_ok = v.gap >= 2;
    v.main1_equality = v.applicable && v.gap == 2;
    if (v.main1_equality) {
        bool two_odp = rec.basket.entries.size() == 2;
        for (const auto& e : rec.basket.entries)
            if (!(e.type.n == 2 && e.type.q == 1)) two_odp = false;
        v.equality_case_ok = two_odp && ample.minimal && ample.canonical_model_is_T;
        v.equality_case_note =
            v.equality_case_ok
                ? "canonical model has precisely two ordinary double points"
                : "equality without the expected pair of ordinary double points";
    }

    v.main2_checked = v.applicable && ample.K_ample;
    if (v.main2_checked) {
        v.main2_ok = v.gap >= 5;
        v.main2_equality = v.gap == 5;
    }
    return v;
}

}  // namespace isofib
