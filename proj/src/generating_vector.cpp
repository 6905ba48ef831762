#include "isofib/generating_vector.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "isofib/errors.hpp"

namespace isofib {

std::string BranchingData::str() const {
    std::ostringstream os;
    os << "(" << base_genus << " | ";
    for (size_t i = 0; i < periods.size(); ++i) {
        if (i) os << ",";
        os << periods[i];
    }
    os << ")";
    return os.str();
}

ValidationResult validate(const FiniteGroup& G, const GeneratingVector& v) {
    if (v.data.periods.size() != v.branch_images.size())
        return {false, "branch image count does not match period count"};
    if (v.handle_images.size() != static_cast<size_t>(2 * v.data.base_genus))
        return {false, "handle image count does not match base genus"};
    for (size_t i = 0; i < v.branch_images.size(); ++i) {
        if (v.data.periods[i] < 2) return {false, "period m_" + std::to_string(i + 1) + " < 2"};
        int o = G.element_order(v.branch_images[i]);
        if (o != v.data.periods[i])
            return {false, "o(l_" + std::to_string(i + 1) + ") = " + std::to_string(o) +
                               " != " + std::to_string(v.data.periods[i])};
    }
    int rel = G.identity();
    for (size_t j = 0; j + 1 < v.handle_images.size(); j += 2) {
        int h1 = v.handle_images[j], h2 = v.handle_images[j + 1];
        int comm = G.mul(G.mul(h1, h2), G.mul(G.inv(h1), G.inv(h2)));
        rel = G.mul(rel, comm);
    }
    for (int l : v.branch_images) rel = G.mul(rel, l);
    if (rel != G.identity()) return {false, "long relation does not evaluate to the identity"};

    std::vector<int> gens = v.branch_images;
    gens.insert(gens.end(), v.handle_images.begin(), v.handle_images.end());
    if (!G.generates(gens)) return {false, "images generate a proper subgroup"};
    return {};
}

int genus(const FiniteGroup& G, const GeneratingVector& v) {
    long twice = static_cast<long>(G.order()) * (2L * v.data.base_genus - 2);
    for (int m : v.data.periods) {
        if (m < 2 || G.order() % m != 0)
            throw invalid_input("period " + std::to_string(m) + " does not divide the group order");
        twice += static_cast<long>(G.order() / m) * (m - 1);
    }
    if (twice < -2 || twice % 2 != 0)
        throw invalid_input("branching data is inconsistent: 2g-2 evaluates to " +
                            std::to_string(twice));
    return static_cast<int>(twice / 2 + 1);
}

GeneratingVector canonical_form(const FiniteGroup& G, const GeneratingVector& v) {
    // Positions sharing a period value may be freely reordered; within each
    // such class of positions we sort the conjugated images.
    std::map<int, std::vector<size_t>> period_positions;
    for (size_t i = 0; i < v.data.periods.size(); ++i)
        period_positions[v.data.periods[i]].push_back(i);

    GeneratingVector best = v;
    bool first = true;
    for (int g = 0; g < G.order(); ++g) {
        GeneratingVector cand = v;
        for (auto& l : cand.branch_images) l = G.conjugate(l, g);
        for (auto& h : cand.handle_images) h = G.conjugate(h, g);
        for (auto& [m, pos] : period_positions) {
            std::vector<int> imgs;
            for (size_t i : pos) imgs.push_back(cand.branch_images[i]);
            std::sort(imgs.begin(), imgs.end());
            for (size_t k = 0; k < pos.size(); ++k) cand.branch_images[pos[k]] = imgs[k];
        }
        if (first || std::tie(cand.branch_images, cand.handle_images) <
                         std::tie(best.branch_images, best.handle_images)) {
            best = cand;
            first = false;
        }
    }
    return best;
}

namespace {

struct BranchSearch {
    const FiniteGroup& G;
    const std::vector<int>& periods;
    int target;
    std::uint64_t* nodes;
    std::uint64_t budget;
    std::vector<std::vector<int>> candidates;   // elements of order m_i
    std::vector<std::vector<int>> suffix_pool;  // distinct candidates from position i on
    std::vector<int> chosen;
    std::vector<int> extra_gens;  // handle images, included in generation checks

    std::vector<GeneratingVector>* out;
    int base_genus;
    std::vector<int> handles;

    void tick() {
        if (++*nodes > budget)
            throw budget_exceeded("enumeration node budget exceeded (" +
                                  std::to_string(budget) + ")");
    }

    bool suffix_can_generate(size_t depth) {
        std::vector<int> gens = chosen;
        gens.insert(gens.end(), extra_gens.begin(), extra_gens.end());
        if (depth < suffix_pool.size())
            gens.insert(gens.end(), suffix_pool[depth].begin(), suffix_pool[depth].end());
        return G.generates(gens);
    }

    void emit() {
        std::vector<int> gens = chosen;
        gens.insert(gens.end(), extra_gens.begin(), extra_gens.end());
        if (!G.generates(gens)) return;
        GeneratingVector v;
        v.data.base_genus = base_genus;
        v.data.periods = periods;
        v.branch_images = chosen;
        v.handle_images = handles;
        out->push_back(std::move(v));
    }

    void rec(size_t depth, int prefix) {
        size_t r = periods.size();
        if (depth == r) {
            if (prefix == target) emit();
            return;
        }
        if (depth + 1 == r) {
            tick();
            // last image forced by the long relation
            int forced = G.mul(G.inv(prefix), target);
            if (G.element_order(forced) == periods[depth]) {
                chosen.push_back(forced);
                emit();
                chosen.pop_back();
            }
            return;
        }
        if (!suffix_can_generate(depth)) return;
        for (int cand : candidates[depth]) {
            tick();
            chosen.push_back(cand);
            rec(depth + 1, G.mul(prefix, cand));
            chosen.pop_back();
        }
    }
};

}  // namespace

std::vector<GeneratingVector> enumerate_vectors(const FiniteGroup& G, const BranchingData& data,
                                                const EnumerateOptions& opts) {
    if (data.base_genus != 0 && data.base_genus != 1)
        throw invalid_input("enumeration supports base genus 0 and 1 only");
    for (int m : data.periods)
        if (m < 2) throw invalid_input("periods must be >= 2");

    std::uint64_t nodes = 0;
    std::vector<GeneratingVector> raw;

    BranchSearch search{G, data.periods, G.identity(), &nodes, opts.node_budget, {}, {}, {}, {}, nullptr, 0, {}};
    search.out = &raw;
    search.base_genus = data.base_genus;
    search.candidates.resize(data.periods.size());
    for (size_t i = 0; i < data.periods.size(); ++i)
        search.candidates[i] = G.elements_of_order(data.periods[i]);
    // with dedup on, the first free image may be fixed to a conjugacy class
    // representative: simultaneous conjugation is modded out afterwards
    auto class_reps = [&](const std::vector<int>& pool) {
        std::vector<int> reps;
        for (int g : pool) {
            auto cls = G.conjugacy_class(g);
            if (g == cls.front()) reps.push_back(g);
        }
        return reps;
    };
    if (opts.dedup && data.base_genus == 0 && data.periods.size() > 1)
        search.candidates[0] = class_reps(search.candidates[0]);
    search.suffix_pool.resize(data.periods.size());
    for (size_t i = data.periods.size(); i-- > 0;) {
        std::set<int> pool;
        if (i + 1 < data.periods.size())
            pool.insert(search.suffix_pool[i + 1].begin(), search.suffix_pool[i + 1].end());
        auto full = G.elements_of_order(data.periods[i]);
        pool.insert(full.begin(), full.end());
        search.suffix_pool[i] = {pool.begin(), pool.end()};
    }

    if (data.base_genus == 0) {
        search.rec(0, G.identity());
    } else {
        std::vector<int> h1_pool(G.order());
        for (int h = 0; h < G.order(); ++h) h1_pool[h] = h;
        if (opts.dedup) h1_pool = class_reps(h1_pool);
        for (int h1 : h1_pool)
            for (int h2 = 0; h2 < G.order(); ++h2) {
                search.tick();
                int comm = G.mul(G.mul(h1, h2), G.mul(G.inv(h1), G.inv(h2)));
                search.target = G.inv(comm);
                search.handles = {h1, h2};
                search.extra_gens = {h1, h2};
                search.rec(0, G.identity());
            }
    }

    if (!opts.dedup) return raw;

    std::map<std::pair<std::vector<int>, std::vector<int>>, GeneratingVector> reps;
    for (auto& v : raw) {
        GeneratingVector key = canonical_form(G, v);
        reps.try_emplace(std::make_pair(key.branch_images, key.handle_images), std::move(v));
    }
    std::vector<GeneratingVector> out;
    out.reserve(reps.size());
    for (auto& [k, v] : reps) out.push_back(std::move(v));
    return out;
}

std::string format_vector(const FiniteGroup& G, const GeneratingVector& v) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.branch_images.size(); ++i) {
        if (i) os << ", ";
        os << G.word(v.branch_images[i]);
    }
    if (v.data.base_genus > 0) {
        os << " ; ";
        for (size_t i = 0; i < v.handle_images.size(); ++i) {
            if (i) os << ", ";
            os << G.word(v.handle_images[i]);
        }
    }
    os << "]";
    return os.str();
}

GeneratingVector parse_vector(const FiniteGroup& G, const std::string& text, int base_genus,
                              const std::vector<int>* periods) {
    std::string s = text;
    auto lb = s.find('['), rb = s.rfind(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        throw invalid_input("vector '" + text + "': expected [ ... ]");
    s = s.substr(lb + 1, rb - lb - 1);

    std::string branch_part = s, handle_part;
    auto semi = s.find(';');
    if (semi != std::string::npos) {
        branch_part = s.substr(0, semi);
        handle_part = s.substr(semi + 1);
    }
    if (base_genus > 0 && semi == std::string::npos)
        throw invalid_input("vector '" + text + "': base genus " + std::to_string(base_genus) +
                            " requires handle images after ';'");

    auto split_words = [&](const std::string& part) {
        std::vector<int> elems;
        std::string cur;
        for (char ch : part) {
            if (ch == ',') {
                if (cur.find_first_not_of(" \t") != std::string::npos)
                    elems.push_back(G.element_by_word(cur));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (cur.find_first_not_of(" \t") != std::string::npos)
            elems.push_back(G.element_by_word(cur));
        return elems;
    };

    GeneratingVector v;
    v.data.base_genus = base_genus;
    v.branch_images = split_words(branch_part);
    v.handle_images = split_words(handle_part);
    if (v.handle_images.size() != static_cast<size_t>(2 * base_genus))
        throw invalid_input("vector '" + text + "': expected " + std::to_string(2 * base_genus) +
                            " handle images, got " + std::to_string(v.handle_images.size()));
    if (periods) {
        v.data.periods = *periods;
    } else {
        for (int l : v.branch_images) v.data.periods.push_back(G.element_order(l));
    }
    return v;
}

}  // namespace isofib
