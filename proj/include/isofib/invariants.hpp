#pragma once

#include <memory>
#include <string>

#include "isofib/generating_vector.hpp"
#include "isofib/group.hpp"
#include "isofib/rational.hpp"
#include "isofib/singular_locus.hpp"

namespace isofib {

// Everything the invariant and fibre machinery needs about one surface
// X -> T = (C1 x C2)/G: the two covers, their genera, and the basket of
// singularities of T. Shares ownership of the group so records stay valid
// across worker threads.
struct SurfaceRecord {
    std::shared_ptr<const FiniteGroup> group;
    GeneratingVector v1, v2;
    int g1 = 0, g2 = 0;          // genera of C1, C2
    int base1 = 0, base2 = 0;    // genera of C1/G, C2/G
    Basket basket;
};

// Validates both vectors, computes genera and the basket.
SurfaceRecord make_record(std::shared_ptr<const FiniteGroup> G, const GeneratingVector& v1,
                          const GeneratingVector& v2);

struct Invariants {
    Rational KT2;       // 8 (g1-1)(g2-1) / |G|
    long K2 = 0;        // K^2 of the minimal desingularization X
    long euler = 0;     // e(X)
    long chi = 0;       // chi(O_X), from Noether
    long pg = 0, q = 0;
    long stabilized_count = 0;
    long singular_count = 0;
};

// K2 = KT2 - sum c_x, euler = 4(g1-1)(g2-1)/|G| + sum e_x, chi = (K2+euler)/12.
// Non-integral K2/euler/chi raises internal_error (it would mean a basket
// or correction bug, not bad input).
Invariants compute_invariants(const SurfaceRecord& rec);

// Independent Euler route: e = [e(C1) e(C2) - N]/|G| + s + sum k_x with
// N the stabilized-point count, s the singular-point count and k_x the
// resolution string lengths. Must equal compute_invariants(rec).euler.
long euler_by_counting(const SurfaceRecord& rec);

// Free diagonal action, i.e. empty basket.
bool is_quasi_bundle(const SurfaceRecord& rec);

}  // namespace isofib
