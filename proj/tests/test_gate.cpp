#include <memory>

#include "doctest.h"
#include "isofib/fibre.hpp"
#include "isofib/theorem_gate.hpp"
#include "reference_surfaces.hpp"

using namespace isofib;

namespace {

struct Analyzed {
    SurfaceRecord rec;
    Invariants inv;
    GateVerdict verdict;
    AmplenessVerdict ample;
};

Analyzed analyze(std::shared_ptr<const FiniteGroup> G, const GeneratingVector& v1,
                 const GeneratingVector& v2) {
    Analyzed a{make_record(std::move(G), v1, v2), {}, {}, {}};
    a.inv = compute_invariants(a.rec);
    std::vector<FibreModel> models;
    std::vector<BlowdownTrace> traces;
    long beta2 = 0;
    Rational delta_sum;
    for (int bc : {1, 2}) {
        const auto& vb = bc == 2 ? a.rec.v2 : a.rec.v1;
        for (size_t bi = 0; bi < vb.data.periods.size(); ++bi) {
            auto [m, t] = contract_to_relative_minimal(build_fibre(a.rec, bc, (int)bi));
            if (bc == 2) {
                beta2 += t.beta();
                delta_sum += fibre_delta(m, t);
            }
            models.push_back(std::move(m));
            traces.push_back(std::move(t));
        }
    }
    a.ample = ampleness_verdict(a.rec, models, traces);
    a.verdict = theorem_check(a.rec, a.inv, 2, beta2, delta_sum, a.ample);
    return a;
}

Analyzed analyze(const testdata::Example& e) { return analyze(e.G, e.v1, e.v2); }

}  // namespace

TEST_CASE("gate on the sharp first-inequality surface") {
    auto a = analyze(testdata::ex1());
    CHECK(a.verdict.applicable);
    CHECK(a.verdict.gap == 2);
    CHECK(a.verdict.main1_ok);
    CHECK(a.verdict.main1_equality);
    CHECK(a.verdict.equality_case_ok);  // precisely two ordinary double points
    CHECK_FALSE(a.verdict.main2_checked);
    CHECK(a.verdict.serrano_tan_ok);
    CHECK_FALSE(a.verdict.serrano_tan_equality);
}

TEST_CASE("gate on the ample sharp second-inequality surface") {
    auto a = analyze(testdata::ex2());
    CHECK(a.verdict.applicable);
    CHECK(a.verdict.K2_minimal_model == 3);
    CHECK(a.verdict.gap == 5);
    CHECK(a.verdict.main1_ok);
    CHECK(a.verdict.main2_checked);
    CHECK(a.verdict.main2_ok);
    CHECK(a.verdict.main2_equality);
}

TEST_CASE("gate on the gap-3 and gap-4 non-ample surfaces") {
    auto a3 = analyze(testdata::ex3());
    CHECK(a3.verdict.applicable);
    CHECK(a3.verdict.gap == 3);
    CHECK(a3.verdict.main1_ok);
    CHECK_FALSE(a3.verdict.main1_equality);
    CHECK_FALSE(a3.verdict.main2_checked);  // K not ample
    CHECK_FALSE(a3.ample.K_ample);

    auto a4 = analyze(testdata::ex4());
    CHECK(a4.verdict.gap == 4);
    CHECK(a4.verdict.main1_ok);
    CHECK_FALSE(a4.verdict.main2_checked);
}

TEST_CASE("gate on the non-ample gap-5 surface") {
    auto a = analyze(testdata::ex5());
    CHECK(a.verdict.applicable);
    CHECK(a.verdict.K2_minimal_model == 3);
    CHECK(a.verdict.gap == 5);
    CHECK(a.verdict.main1_ok);
    CHECK_FALSE(a.verdict.main2_checked);  // gap 5 with K_m not ample
    CHECK_FALSE(a.ample.K_ample);
}

TEST_CASE("quasi-bundle: inapplicable but Serrano-Tan equality") {
    auto c2 = std::make_shared<isofib::FiniteGroup>(cyclic_group(2, "t"));
    GeneratingVector v;
    v.data.base_genus = 2;
    v.handle_images = {c2->generator_names().at("t"), c2->identity(), c2->identity(),
                       c2->identity()};
    auto a = analyze(c2, v, v);
    CHECK_FALSE(a.verdict.applicable);
    CHECK(a.verdict.reason == "surface is a quasi-bundle");
    CHECK(a.verdict.serrano_tan_ok);
    CHECK(a.verdict.serrano_tan_equality);
    CHECK(a.verdict.gap == 0);
}

TEST_CASE("genus-0 chosen base is out of the theorem's hypotheses") {
    auto e1 = testdata::ex1();
    auto rec = make_record(e1.G, e1.v1, e1.v2);
    auto inv = compute_invariants(rec);
    std::vector<FibreModel> models;
    std::vector<BlowdownTrace> traces;
    long beta1 = 0;
    Rational delta_sum;
    for (size_t bi = 0; bi < rec.v1.data.periods.size(); ++bi) {
        auto [m, t] = contract_to_relative_minimal(build_fibre(rec, 1, (int)bi));
        beta1 += t.beta();
        delta_sum += fibre_delta(m, t);
        models.push_back(std::move(m));
        traces.push_back(std::move(t));
    }
    auto ample = ampleness_verdict(rec, models, traces);
    auto verdict = theorem_check(rec, inv, 1, beta1, delta_sum, ample);
    CHECK_FALSE(verdict.applicable);
    CHECK(verdict.reason.find("genus 0") != std::string::npos);
}
