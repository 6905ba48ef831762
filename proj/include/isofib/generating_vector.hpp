#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isofib/group.hpp"

namespace isofib {

// Base genus g' plus the ordered list of branch orders (periods). Periods are
// matched index-wise to branch points of the base curve.
struct BranchingData {
    int base_genus = 0;
    std::vector<int> periods;

    bool operator==(const BranchingData&) const = default;
    std::string str() const;  // e.g. "(0 | 2,2,2,2,4)"
};

// Images in G of the standard generators of the Fuchsian-type group
// Gamma(g' | m1..mr): one branch image per period plus 2g' handle images.
// Encodes a branched G-cover of a genus-g' curve.
struct GeneratingVector {
    BranchingData data;
    std::vector<int> branch_images;
    std::vector<int> handle_images;

    bool operator==(const GeneratingVector&) const = default;
};

struct ValidationResult {
    bool ok = true;
    std::string violation;  // names the first violated condition
};

// Checks, in order: o(l_i) == m_i for all i; the long relation
// prod [h_{2j-1},h_{2j}] * prod l_i == 1; and that all images together
// generate G.
ValidationResult validate(const FiniteGroup& G, const GeneratingVector& v);

// Genus of the cover curve via Riemann-Hurwitz:
//   2g - 2 = |G| (2g' - 2) + sum_i (|G|/m_i)(m_i - 1).
// Throws invalid_input if the right-hand side is odd or below -2.
int genus(const FiniteGroup& G, const GeneratingVector& v);

struct EnumerateOptions {
    bool dedup = true;
    std::uint64_t node_budget = 50'000'000;
};

// All vectors over G with the given branching data (base genus 0 or 1),
// optionally reduced to one representative per orbit of simultaneous
// conjugation combined with reordering of equal periods.
std::vector<GeneratingVector> enumerate_vectors(const FiniteGroup& G, const BranchingData& data,
                                                const EnumerateOptions& opts = {});

// Canonical form under simultaneous conjugation + equal-period reordering;
// two vectors are identified by enumerate's dedup iff their canonical forms
// coincide.
GeneratingVector canonical_form(const FiniteGroup& G, const GeneratingVector& v);

// "[x, x*y, x, x*y^2, y]" for genus 0; "[y^2 ; y, x]" for genus >= 1
// (branch images before ';', handle images after).
std::string format_vector(const FiniteGroup& G, const GeneratingVector& v);

// Parses the format above. Periods are inferred from the image orders unless
// `periods` is given, in which case they are used verbatim (validate reports
// any mismatch).
GeneratingVector parse_vector(const FiniteGroup& G, const std::string& text, int base_genus,
                              const std::vector<int>* periods = nullptr);

}  // namespace isofib
