#pragma once

#include <string>
#include <vector>

#include "isofib/config.hpp"
#include "isofib/fibre.hpp"
#include "isofib/invariants.hpp"
#include "isofib/theorem_gate.hpp"

namespace isofib {

struct FibreReport {
    FibreModel built;
    FibreModel contracted;
    BlowdownTrace trace;
    Rational delta;
};

struct FixRow {
    std::string element;
    int order = 0;
    long fix_c1 = 0, fix_c2 = 0;
};

// Everything run_analyze produces for one surface. JSON, text and CSV
// emission are projections of this struct.
struct AnalysisReport {
    std::string group_text;  // config echo
    std::string group_name;
    int group_order = 0;
    int base_choice = 2;
    std::string v1_text, v2_text;

    SurfaceRecord rec;
    Invariants inv;
    long euler_counting = 0;
    bool quasi_bundle = false;

    std::vector<FixRow> fixed_point_table;

    std::vector<FibreReport> fibres;        // chosen projection
    std::vector<FibreReport> other_fibres;  // the other projection
    Rational delta_sum;                     // over the chosen projection
    long beta_total = 0;                    // chosen projection

    AmplenessVerdict ample;
    GateVerdict verdict;

    double ms = 0;
};

std::string report_to_json(const AnalysisReport& r, bool pretty = true);
std::string report_to_text(const AnalysisReport& r);

std::string csv_header();
std::string csv_row(const AnalysisReport& r);

struct SearchOutcome;
std::string search_to_json(const SearchOutcome& out, bool pretty = true);
std::string search_to_text(const SearchOutcome& out);
std::string search_to_csv(const SearchOutcome& out);

}  // namespace isofib
