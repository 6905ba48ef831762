#include "isofib/invariants.hpp"

#include "isofib/errors.hpp"
#include "isofib/hirzebruch_jung.hpp"

namespace isofib {

SurfaceRecord make_record(std::shared_ptr<const FiniteGroup> G, const GeneratingVector& v1,
                          const GeneratingVector& v2) {
    if (!G) throw invalid_input("make_record: null group");
    for (const auto* v : {&v1, &v2}) {
        auto res = validate(*G, *v);
        if (!res.ok) throw invalid_input("invalid generating vector: " + res.violation);
    }
    SurfaceRecord rec;
    rec.group = std::move(G);
    rec.v1 = v1;
    rec.v2 = v2;
    rec.g1 = genus(*rec.group, v1);
    rec.g2 = genus(*rec.group, v2);
    rec.base1 = v1.data.base_genus;
    rec.base2 = v2.data.base_genus;
    rec.basket = compute_basket(*rec.group, v1, v2);
    return rec;
}

Invariants compute_invariants(const SurfaceRecord& rec) {
    const FiniteGroup& G = *rec.group;
    Invariants inv;
    Rational prod = Rational(static_cast<long>(rec.g1 - 1) * (rec.g2 - 1), G.order());
    inv.KT2 = Rational(8) * prod;

    Rational k2 = inv.KT2;
    Rational euler = Rational(4) * prod;
    for (const auto& entry : rec.basket.entries) {
        auto corr = hj_corrections(hj_expand(entry.type.n, entry.type.q));
        k2 -= corr.c;
        euler += corr.e;
    }
    if (!k2.is_integer()) throw internal_error("K^2 is not integral: " + k2.str());
    if (!euler.is_integer()) throw internal_error("e(X) is not integral: " + euler.str());
    inv.K2 = k2.as_integer();
    inv.euler = euler.as_integer();
    if ((inv.K2 + inv.euler) % 12 != 0)
        throw internal_error("Noether integrality fails: K2+e = " +
                             std::to_string(inv.K2 + inv.euler));
    inv.chi = (inv.K2 + inv.euler) / 12;
    inv.q = rec.base1 + rec.base2;
    inv.pg = inv.chi - 1 + inv.q;
    inv.stabilized_count = rec.basket.stabilized_points;
    inv.singular_count = static_cast<long>(rec.basket.entries.size());
    return inv;
}

long euler_by_counting(const SurfaceRecord& rec) {
    const FiniteGroup& G = *rec.group;
    long e1 = 2 - 2L * rec.g1, e2 = 2 - 2L * rec.g2;
    long numerator = e1 * e2 - rec.basket.stabilized_points;
    if (numerator % G.order() != 0)
        throw internal_error("free part of the Euler count is not divisible by |G|");
    long e = numerator / G.order() + static_cast<long>(rec.basket.entries.size());
    for (const auto& entry : rec.basket.entries)
        e += static_cast<long>(hj_expand(entry.type.n, entry.type.q).b.size());
    return e;
}

bool is_quasi_bundle(const SurfaceRecord& rec) { return rec.basket.entries.empty(); }

}  // namespace isofib
