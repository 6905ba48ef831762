#include "isofib/singular_locus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "isofib/errors.hpp"

namespace isofib {

std::string SingularityType::str() const {
    return "1/" + std::to_string(n) + "(1," + std::to_string(q) + ")";
}

std::vector<StabilizedPair> stabilized_points(const FiniteGroup& G, const GeneratingVector& v1,
                                              const GeneratingVector& v2) {
    auto pts1 = ramification_points(G, v1);
    auto pts2 = ramification_points(G, v2);
    std::vector<std::vector<int>> subs2(pts2.size());
    for (size_t j = 0; j < pts2.size(); ++j)
        subs2[j] = G.cyclic_subgroup(pts2[j].local_generator);
    std::vector<StabilizedPair> out;
    std::vector<int> common;
    for (const auto& p1 : pts1) {
        auto s1 = G.cyclic_subgroup(p1.local_generator);
        for (size_t j = 0; j < pts2.size(); ++j) {
            common.clear();
            std::set_intersection(s1.begin(), s1.end(), subs2[j].begin(), subs2[j].end(),
                                  std::back_inserter(common));
            if (common.size() <= 1) continue;
            int d = static_cast<int>(common.size());
            int gen = -1;
            for (int g : common)
                if (G.element_order(g) == d) {
                    gen = g;
                    break;
                }
            if (gen < 0)
                throw internal_error("stabilizer intersection is not cyclic");
            out.push_back({p1, pts2[j], gen, d});
        }
    }
    return out;
}

namespace {

int inverse_mod(int a, int n) {
    for (int t = 1; t < n; ++t)
        if (static_cast<long>(t) * a % n == 1) return t;
    if (n == 1) return 0;
    throw internal_error("non-invertible residue in type normalization");
}

SingularityType oriented_type(const FiniteGroup& G, const StabilizedPair& pair) {
    int n = pair.stab_order;
    int u1 = rotation_exponent(G, pair.p1, pair.stab_gen);
    int u2 = rotation_exponent(G, pair.p2, pair.stab_gen);
    // normalize the generator so the C1-direction weight is 1
    int q = static_cast<int>(static_cast<long>(u2) * inverse_mod(u1, n) % n);
    if (n > 1 && (q <= 0 || q >= n || std::gcd(q, n) != 1))
        throw internal_error("singularity type normalization produced q=" + std::to_string(q));
    return {n, q};
}

}  // namespace

Basket compute_basket(const FiniteGroup& G, const GeneratingVector& v1,
                      const GeneratingVector& v2) {
    auto pairs = stabilized_points(G, v1, v2);
    Basket basket;
    basket.stabilized_points = static_cast<long>(pairs.size());

    // index pairs by (point labels) for orbit grouping
    auto key_of = [](const StabilizedPair& sp) {
        return std::tuple(sp.p1.branch_index, sp.p1.coset_rep, sp.p2.branch_index,
                          sp.p2.coset_rep);
    };
    std::map<std::tuple<int, int, int, int>, size_t> index;
    for (size_t i = 0; i < pairs.size(); ++i) index[key_of(pairs[i])] = i;

    std::vector<char> used(pairs.size(), 0);
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (used[i]) continue;
        std::vector<size_t> orbit;
        SingularityType type = oriented_type(G, pairs[i]);
        for (int g = 0; g < G.order(); ++g) {
            auto q1 = translate_point(G, v1, pairs[i].p1, g);
            auto q2 = translate_point(G, v2, pairs[i].p2, g);
            auto it = index.find(std::tuple(q1.branch_index, q1.coset_rep, q2.branch_index,
                                            q2.coset_rep));
            if (it == index.end())
                throw internal_error("orbit of a stabilized pair left the stabilized set");
            if (!used[it->second]) {
                used[it->second] = 1;
                orbit.push_back(it->second);
            }
        }
        for (size_t j : orbit)
            if (oriented_type(G, pairs[j]) != type)
                throw internal_error("singularity type differs across orbit representatives");
        if (static_cast<long>(orbit.size()) * pairs[i].stab_order != G.order())
            throw internal_error("orbit size times stabilizer order differs from |G|");
        basket.entries.push_back({type, pairs[i].p1.branch_index, pairs[i].p2.branch_index,
                                  static_cast<long>(orbit.size())});
    }
    std::sort(basket.entries.begin(), basket.entries.end(), [](const auto& a, const auto& b) {
        return std::tuple(a.type, a.fibre2_index, a.fibre1_index) <
               std::tuple(b.type, b.fibre2_index, b.fibre1_index);
    });
    return basket;
}

std::string basket_str(const Basket& basket) {
    if (basket.entries.empty()) return "empty";
    std::map<SingularityType, int> counts;
    for (const auto& e : basket.entries) ++counts[e.type];
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, k] : counts) {
        if (!first) os << " + ";
        first = false;
        if (k > 1) os << k << " x ";
        os << t.str();
    }
    return os.str();
}

}  // namespace isofib
