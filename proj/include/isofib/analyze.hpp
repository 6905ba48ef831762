#pragma once

#include <string>
#include <vector>

#include "isofib/config.hpp"
#include "isofib/report.hpp"

namespace isofib {

// Full single-surface pipeline: build the group, parse both vectors,
// compute the basket, invariants (with the two-route Euler cross-check),
// fibre models of both projections with contractions, delta values, the
// ampleness verdict and the theorem gate. Cross-module identities are
// asserted; a failure raises internal_error.
AnalysisReport run_analyze(const AnalysisConfig& cfg);

// Same pipeline given prebuilt pieces (used by the search loop).
AnalysisReport analyze_record(std::shared_ptr<const FiniteGroup> G, const GeneratingVector& v1,
                              const GeneratingVector& v2, int base_choice,
                              const std::string& group_text = "");

struct SearchOutcome {
    std::vector<AnalysisReport> reports;  // deterministic order
    struct Skipped {
        std::string group;
        std::string branching;
        std::string reason;
    };
    std::vector<Skipped> skipped;  // budget exhaustion, recorded per candidate
    long pairs_scanned = 0;
    long groups_scanned = 0;
    double ms = 0;
    bool any_gate_violation = false;  // a theorem inequality failed somewhere
};

// Enumerates vectors for every (group, branching data) within the config
// bounds, analyzes every compatible pair, applies the output filters, and
// returns deduplicated reports in deterministic order. Parallelizes over
// (group, branching-data) tasks with cfg.jobs workers.
SearchOutcome run_search(const AnalysisConfig& cfg);

int effective_jobs(const AnalysisConfig& cfg);

}  // namespace isofib
