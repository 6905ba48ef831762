#include "isofib/cover.hpp"

#include <algorithm>
#include <numeric>

#include "isofib/errors.hpp"

namespace isofib {

namespace {

int coset_min(const FiniteGroup& G, int t, int l) {
    int best = t, cur = t;
    do {
        cur = G.mul(cur, l);
        best = std::min(best, cur);
    } while (cur != t);
    return best;
}

}  // namespace

std::vector<LabeledFixedPoint> ramification_points(const FiniteGroup& G,
                                                   const GeneratingVector& v) {
    std::vector<LabeledFixedPoint> pts;
    for (size_t i = 0; i < v.branch_images.size(); ++i) {
        int l = v.branch_images[i];
        if (l < 0 || l >= G.order())
            throw invalid_input("branch image index out of range for the group");
        std::vector<char> seen(G.order(), 0);
        for (int t = 0; t < G.order(); ++t) {
            if (seen[t]) continue;
            int rep = coset_min(G, t, l);
            int cur = t;
            do {
                seen[cur] = 1;
                cur = G.mul(cur, l);
            } while (cur != t);
            pts.push_back({static_cast<int>(i), rep, G.conjugate(l, rep)});
        }
    }
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return std::tie(a.branch_index, a.coset_rep) < std::tie(b.branch_index, b.coset_rep);
    });
    return pts;
}

std::vector<LabeledFixedPoint> fixed_points(const FiniteGroup& G, const GeneratingVector& v,
                                            int sigma) {
    if (sigma == G.identity())
        throw invalid_input("fixed_points: sigma must be a nontrivial element");
    std::vector<LabeledFixedPoint> out;
    for (const auto& p : ramification_points(G, v)) {
        auto stab = G.cyclic_subgroup(p.local_generator);
        if (std::binary_search(stab.begin(), stab.end(), sigma)) out.push_back(p);
    }
    return out;
}

int rotation_exponent(const FiniteGroup& G, const LabeledFixedPoint& p, int sigma) {
    if (sigma == G.identity())
        throw invalid_input("rotation_exponent: sigma must be nontrivial");
    int m = G.element_order(p.local_generator);
    int a = -1, cur = G.identity();
    for (int k = 0; k < m; ++k) {
        if (cur == sigma) {
            a = k;
            break;
        }
        cur = G.mul(cur, p.local_generator);
    }
    if (a < 0) throw invalid_input("rotation_exponent: sigma is not in the point stabilizer");
    int n = G.element_order(sigma);
    // sigma = h^a acts by e^(2 pi i a / m); renormalize to a primitive
    // o(sigma)-th root: u = a n / m.
    if ((static_cast<long>(a) * n) % m != 0)
        throw internal_error("rotation exponent renormalization is not integral");
    int u = static_cast<int>((static_cast<long>(a) * n / m) % n);
    if (std::gcd(u, n) != 1) throw internal_error("rotation exponent is not coprime to o(sigma)");
    return u;
}

LabeledFixedPoint translate_point(const FiniteGroup& G, const GeneratingVector& v,
                                  const LabeledFixedPoint& p, int g) {
    int l = v.branch_images[p.branch_index];
    int t = G.mul(g, p.coset_rep);
    int rep = coset_min(G, t, l);
    return {p.branch_index, rep, G.conjugate(l, rep)};
}

}  // namespace isofib
