#include "isofib/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "isofib/errors.hpp"

namespace isofib {

FiniteGroup::FiniteGroup(int order, std::vector<int> table, std::string name,
                         std::map<std::string, int> generator_names,
                         std::vector<std::string> element_words)
    : order_(order),
      table_(std::move(table)),
      name_(std::move(name)),
      generator_names_(std::move(generator_names)),
      element_words_(std::move(element_words)) {
    if (order_ <= 0 || table_.size() != static_cast<size_t>(order_) * order_)
        throw invalid_input("group table size does not match order");

    // locate the identity
    identity_ = -1;
    for (int e = 0; e < order_; ++e) {
        bool ok = true;
        for (int a = 0; a < order_ && ok; ++a)
            if (mul(e, a) != a || mul(a, e) != a) ok = false;
        if (ok) {
            identity_ = e;
            break;
        }
    }
    if (identity_ < 0) throw invalid_input("group table has no identity element");

    validate();

    inverse_.assign(order_, -1);
    for (int a = 0; a < order_; ++a) {
        for (int b = 0; b < order_; ++b)
            if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                inverse_[a] = b;
                break;
            }
        if (inverse_[a] < 0) throw invalid_input("group element without inverse");
    }

    element_order_.assign(order_, 0);
    for (int g = 0; g < order_; ++g) {
        int k = 1, p = g;
        while (p != identity_) {
            p = mul(p, g);
            ++k;
            if (k > order_) throw internal_error("element order exceeds group order");
        }
        element_order_[g] = k;
    }

    if (element_words_.empty()) {
        element_words_.resize(order_);
        for (int g = 0; g < order_; ++g) element_words_[g] = "e" + std::to_string(g);
        element_words_[identity_] = "1";
    }
    if (element_words_.size() != static_cast<size_t>(order_))
        throw invalid_input("element word list size mismatch");
}

void FiniteGroup::validate() const {
    // Latin square: every row and column is a permutation of 0..order-1.
    std::vector<char> seen(order_);
    for (int a = 0; a < order_; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < order_; ++b) {
            int p = mul(a, b);
            if (p < 0 || p >= order_ || seen[p])
                throw invalid_input("group table row is not a permutation");
            seen[p] = 1;
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < order_; ++b) {
            int p = mul(b, a);
            if (p < 0 || p >= order_ || seen[p])
                throw invalid_input("group table column is not a permutation");
            seen[p] = 1;
        }
    }
    // Associativity: exhaustive for small orders, sampled above.
    if (order_ <= 128) {
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b)
                for (int c = 0; c < order_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw invalid_input("group table is not associative");
    } else {
        std::mt19937 rng(0x5eed);
        std::uniform_int_distribution<int> pick(0, order_ - 1);
        for (int t = 0; t < 65536; ++t) {
            int a = pick(rng), b = pick(rng), c = pick(rng);
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                throw invalid_input("group table is not associative");
        }
    }
}

int FiniteGroup::power(int g, long e) const {
    int o = element_order_[g];
    long r = e % o;
    if (r < 0) r += o;
    int acc = identity_;
    for (long i = 0; i < r; ++i) acc = mul(acc, g);
    return acc;
}

std::vector<int> FiniteGroup::conjugacy_class(int g) const {
    std::set<int> cls;
    for (int h = 0; h < order_; ++h) cls.insert(conjugate(g, h));
    return {cls.begin(), cls.end()};
}

int FiniteGroup::centralizer_size(int g) const {
    int c = 0;
    for (int h = 0; h < order_; ++h)
        if (mul(h, g) == mul(g, h)) ++c;
    return c;
}

std::vector<int> FiniteGroup::cyclic_subgroup(int g) const {
    std::set<int> sub;
    int p = identity_;
    do {
        sub.insert(p);
        p = mul(p, g);
    } while (p != identity_);
    return {sub.begin(), sub.end()};
}

std::vector<int> FiniteGroup::subgroup_generated(std::span<const int> gens) const {
    std::vector<char> in(order_, 0);
    std::vector<int> frontier;
    in[identity_] = 1;
    frontier.push_back(identity_);
    std::vector<int> basis;
    for (int g : gens) {
        if (g < 0 || g >= order_) throw invalid_input("generator index out of range");
        basis.push_back(g);
    }
    size_t head = 0;
    while (head < frontier.size()) {
        int cur = frontier[head++];
        for (int g : basis) {
            int nxt = mul(cur, g);
            if (!in[nxt]) {
                in[nxt] = 1;
                frontier.push_back(nxt);
            }
        }
    }
    std::sort(frontier.begin(), frontier.end());
    return frontier;
}

bool FiniteGroup::generates(std::span<const int> gens) const {
    return subgroup_generated(gens).size() == static_cast<size_t>(order_);
}

std::vector<int> FiniteGroup::elements_of_order(int k) const {
    std::vector<int> out;
    for (int g = 0; g < order_; ++g)
        if (element_order_[g] == k) out.push_back(g);
    return out;
}

namespace {

// Minimal recursive-descent parser for generator words:
//   word   := factor ('*' factor)*
//   factor := atom ('^' int)?
//   atom   := name | '1' | '(' word ')'
struct WordParser {
    const FiniteGroup& G;
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    long parse_int() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw invalid_input("word '" + s + "': expected integer exponent");
        return std::stol(s.substr(start, pos - start));
    }
    int parse_atom() {
        skip_ws();
        if (pos >= s.size()) throw invalid_input("word '" + s + "': unexpected end");
        if (s[pos] == '(') {
            ++pos;
            int w = parse_word();
            if (!eat(')')) throw invalid_input("word '" + s + "': missing ')'");
            return w;
        }
        if (s[pos] == '1' &&
            (pos + 1 >= s.size() || !std::isalnum(static_cast<unsigned char>(s[pos + 1])))) {
            ++pos;
            return G.identity();
        }
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start) throw invalid_input("word '" + s + "': expected generator name");
        std::string name = s.substr(start, pos - start);
        auto it = G.generator_names().find(name);
        if (it == G.generator_names().end())
            throw invalid_input("word '" + s + "': unknown generator '" + name + "'");
        return it->second;
    }
    int parse_factor() {
        int a = parse_atom();
        skip_ws();
        if (eat('^')) return G.power(a, parse_int());
        return a;
    }
    int parse_word() {
        int acc = parse_factor();
        while (true) {
            skip_ws();
            if (eat('*'))
                acc = G.mul(acc, parse_factor());
            else
                break;
        }
        return acc;
    }
};

}  // namespace

int FiniteGroup::element_by_word(const std::string& w) const {
    WordParser p{*this, w};
    int g = p.parse_word();
    p.skip_ws();
    if (p.pos != w.size()) throw invalid_input("word '" + w + "': trailing characters");
    return g;
}

// ---------------------------------------------------------------------------
// builders

namespace {

std::string pow_word(const std::string& g, long e) {
    if (e == 0) return "1";
    if (e == 1) return g;
    return g + "^" + std::to_string(e);
}

std::string join_words(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (p == "1" || p.empty()) continue;
        if (!out.empty()) out += "*";
        out += p;
    }
    return out.empty() ? "1" : out;
}

FiniteGroup build_cyclic(long n, std::string gen, int /*cap*/) {
    if (n <= 0) throw invalid_input("cyclic group order must be positive");
    if (gen.empty()) gen = "g";
    int order = static_cast<int>(n);
    std::vector<int> table(static_cast<size_t>(order) * order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) table[static_cast<size_t>(i) * order + j] = (i + j) % order;
    std::vector<std::string> words(order);
    for (int i = 0; i < order; ++i) words[i] = pow_word(gen, i);
    std::map<std::string, int> gens;
    if (order > 1) gens[gen] = 1;
    return FiniteGroup(order, std::move(table), "C" + std::to_string(n), std::move(gens),
                       std::move(words));
}

FiniteGroup build_direct_product(const std::vector<GroupSpec>& factor_specs, int cap) {
    if (factor_specs.empty()) throw invalid_input("direct product needs at least one factor");
    std::vector<FiniteGroup> factors;
    long order = 1;
    for (const auto& fs : factor_specs) {
        factors.push_back(build_group(fs, cap));
        order *= factors.back().order();
        if (order > cap) throw invalid_input("direct product order exceeds cap");
    }
    int n = static_cast<int>(order);
    size_t t = factors.size();

    auto decode = [&](int idx) {
        std::vector<int> comp(t);
        for (size_t k = t; k-- > 0;) {
            comp[k] = idx % factors[k].order();
            idx /= factors[k].order();
        }
        return comp;
    };
    auto encode = [&](const std::vector<int>& comp) {
        int idx = 0;
        for (size_t k = 0; k < t; ++k) idx = idx * factors[k].order() + comp[k];
        return idx;
    };

    std::vector<int> table(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        auto ci = decode(i);
        for (int j = 0; j < n; ++j) {
            auto cj = decode(j);
            std::vector<int> ck(t);
            for (size_t k = 0; k < t; ++k) ck[k] = factors[k].mul(ci[k], cj[k]);
            table[static_cast<size_t>(i) * n + j] = encode(ck);
        }
    }

    std::vector<std::string> words(n);
    for (int i = 0; i < n; ++i) {
        auto ci = decode(i);
        std::vector<std::string> parts;
        for (size_t k = 0; k < t; ++k) parts.push_back(factors[k].word(ci[k]));
        words[i] = join_words(parts);
    }

    std::map<std::string, int> gens;
    for (size_t k = 0; k < t; ++k)
        for (const auto& [name, idx] : factors[k].generator_names()) {
            std::vector<int> comp(t, 0);
            for (size_t l = 0; l < t; ++l) comp[l] = factors[l].identity();
            comp[k] = idx;
            if (!gens.emplace(name, encode(comp)).second)
                throw invalid_input("duplicate generator name '" + name + "' in direct product");
        }

    std::string name;
    for (size_t k = 0; k < t; ++k) {
        if (k) name += "x";
        name += factors[k].name();
    }
    return FiniteGroup(n, std::move(table), std::move(name), std::move(gens), std::move(words));
}

FiniteGroup build_dihedral(long order, int /*cap*/) {
    if (order < 2 || order % 2 != 0) throw invalid_input("dihedral group order must be even and >= 2");
    long half = order / 2;
    int n = static_cast<int>(order);
    // element y^r x^s at index s*half + r
    auto idx = [&](long r, long s) { return static_cast<int>(s * half + r); };
    std::vector<int> table(static_cast<size_t>(n) * n);
    for (long s = 0; s < 2; ++s)
        for (long r = 0; r < half; ++r)
            for (long s2 = 0; s2 < 2; ++s2)
                for (long r2 = 0; r2 < half; ++r2) {
                    long rr = ((s == 0 ? r + r2 : r - r2) % half + half) % half;
                    table[static_cast<size_t>(idx(r, s)) * n + idx(r2, s2)] = idx(rr, (s + s2) % 2);
                }
    std::vector<std::string> words(n);
    for (long r = 0; r < half; ++r) {
        words[idx(r, 0)] = pow_word("y", r);
        // y^r x = x y^(-r); display reflections in x-first form
        words[idx(r, 1)] = join_words({"x", pow_word("y", (half - r) % half)});
    }
    std::map<std::string, int> gens;
    gens["x"] = idx(0, 1);
    if (half > 1) gens["y"] = idx(1, 0);
    return FiniteGroup(n, std::move(table), "D" + std::to_string(order), std::move(gens),
                       std::move(words));
}

long mod_pow(long base, long exp, long mod) {
    long r = 1 % mod;
    base %= mod;
    for (; exp > 0; exp >>= 1) {
        if (exp & 1) r = r * base % mod;
        base = base * base % mod;
    }
    return r;
}

FiniteGroup build_metacyclic(long a, long b, long c, int cap) {
    if (a <= 0 || b <= 0) throw invalid_input("metacyclic parameters must be positive");
    c = ((c % b) + b) % b;
    if (std::gcd(c, b) != 1)
        throw invalid_input("metacyclic action parameter c must be invertible mod b");
    if (mod_pow(c, a, b) != 1 % b)
        throw invalid_input("inconsistent metacyclic presentation: c^a != 1 mod b");
    if (a * b > cap) throw invalid_input("metacyclic group order exceeds cap");

    // c' = c^-1 mod b, so that x^-1 y x = y^(c')
    long cinv = 0;
    for (long t = 1; t < b; ++t)
        if (t * c % b == 1) {
            cinv = t;
            break;
        }
    if (b == 1) cinv = 0;

    int n = static_cast<int>(a * b);
    auto idx = [&](long i, long j) { return static_cast<int>(i * b + j); };
    std::vector<int> table(static_cast<size_t>(n) * n);
    for (long i = 0; i < a; ++i)
        for (long j = 0; j < b; ++j)
            for (long i2 = 0; i2 < a; ++i2)
                for (long j2 = 0; j2 < b; ++j2) {
                    long twist = mod_pow(cinv, i2, b);
                    table[static_cast<size_t>(idx(i, j)) * n + idx(i2, j2)] =
                        idx((i + i2) % a, (j * twist + j2) % b);
                }
    std::vector<std::string> words(n);
    for (long i = 0; i < a; ++i)
        for (long j = 0; j < b; ++j)
            words[idx(i, j)] = join_words({pow_word("x", i), pow_word("y", j)});
    std::map<std::string, int> gens;
    if (a > 1) gens["x"] = idx(1, 0);
    if (b > 1) gens["y"] = idx(0, 1);
    std::string name = "M(" + std::to_string(a) + "," + std::to_string(b) + "," +
                       std::to_string(c) + ")";
    return FiniteGroup(n, std::move(table), std::move(name), std::move(gens), std::move(words));
}

FiniteGroup build_semidirect(const GroupSpec& spec, int cap) {
    if (spec.kernel_moduli.empty() || spec.kernel_moduli.size() != spec.kernel_names.size())
        throw invalid_input("semidirect kernel moduli/names mismatch");
    if (spec.action_words.size() != spec.kernel_moduli.size())
        throw invalid_input("semidirect action must name an image for each kernel generator");
    if (spec.actor_order <= 0) throw invalid_input("semidirect actor order must be positive");

    std::vector<GroupSpec> kf;
    for (size_t i = 0; i < spec.kernel_moduli.size(); ++i) {
        GroupSpec f;
        f.kind = GroupSpec::Kind::cyclic;
        f.n = spec.kernel_moduli[i];
        f.gen_name = spec.kernel_names[i];
        kf.push_back(std::move(f));
    }
    FiniteGroup K = build_direct_product(kf, cap);
    long a = spec.actor_order;
    if (a * K.order() > cap) throw invalid_input("semidirect product order exceeds cap");

    // phi on kernel generators, extended multiplicatively (K abelian).
    std::vector<int> gen_elt(kf.size()), gen_img(kf.size());
    for (size_t j = 0; j < kf.size(); ++j) {
        gen_elt[j] = K.generator_names().count(spec.kernel_names[j])
                         ? K.generator_names().at(spec.kernel_names[j])
                         : K.identity();
        gen_img[j] = K.element_by_word(spec.action_words[j]);
        if (K.element_order(gen_img[j]) > K.element_order(gen_elt[j]) ||
            K.element_order(gen_elt[j]) % K.element_order(gen_img[j]) != 0)
            throw invalid_input("semidirect action image order incompatible with generator '" +
                                spec.kernel_names[j] + "'");
    }
    // decode kernel element into generator exponents via mixed radix
    std::vector<int> phi(K.order());
    for (int k = 0; k < K.order(); ++k) {
        int rem = k, img = K.identity();
        for (size_t j = 0; j < kf.size(); ++j) {
            long radix = 1;
            for (size_t l = j + 1; l < kf.size(); ++l) radix *= spec.kernel_moduli[l];
            int expo = static_cast<int>(rem / radix);
            rem = static_cast<int>(rem % radix);
            img = K.mul(img, K.power(gen_img[j], expo));
        }
        phi[k] = img;
    }
    {
        std::vector<char> hit(K.order(), 0);
        for (int k = 0; k < K.order(); ++k) hit[phi[k]] = 1;
        for (int k = 0; k < K.order(); ++k)
            if (!hit[k]) throw invalid_input("semidirect action is not an automorphism");
    }
    // phi^a must be the identity for x^a = 1 to hold
    std::vector<std::vector<int>> phi_pow(a);
    phi_pow[0].resize(K.order());
    for (int k = 0; k < K.order(); ++k) phi_pow[0][k] = k;
    for (long i = 1; i < a; ++i) {
        phi_pow[i].resize(K.order());
        for (int k = 0; k < K.order(); ++k) phi_pow[i][k] = phi[phi_pow[i - 1][k]];
    }
    for (int k = 0; k < K.order(); ++k)
        if (phi[phi_pow[a - 1][k]] != k)
            throw invalid_input("semidirect action order does not divide actor order");

    std::string actor = spec.actor_name.empty() ? "x" : spec.actor_name;
    int n = static_cast<int>(a * K.order());
    auto idx = [&](long i, int k) { return static_cast<int>(i * K.order() + k); };
    std::vector<int> table(static_cast<size_t>(n) * n);
    for (long i = 0; i < a; ++i)
        for (int k = 0; k < K.order(); ++k)
            for (long i2 = 0; i2 < a; ++i2)
                for (int k2 = 0; k2 < K.order(); ++k2) {
                    // x^i k x^i2 k2 = x^(i+i2) phi^(-i2)(k) k2
                    int tw = phi_pow[(a - i2) % a][k];
                    table[static_cast<size_t>(idx(i, k)) * n + idx(i2, k2)] =
                        idx((i + i2) % a, K.mul(tw, k2));
                }
    std::vector<std::string> words(n);
    for (long i = 0; i < a; ++i)
        for (int k = 0; k < K.order(); ++k)
            words[idx(i, k)] = join_words({pow_word(actor, i), K.word(k)});
    std::map<std::string, int> gens;
    gens[actor] = idx(1 % a, K.identity());
    for (const auto& [nm, g] : K.generator_names()) {
        if (nm == actor) throw invalid_input("semidirect actor name collides with kernel generator");
        gens[nm] = idx(0, g);
    }
    std::string name = "C" + std::to_string(a) + ":(" + K.name() + ")";
    return FiniteGroup(n, std::move(table), std::move(name), std::move(gens), std::move(words));
}

FiniteGroup build_permutation(const GroupSpec& spec, int cap) {
    long letters = spec.n;
    if (letters <= 0) throw invalid_input("permutation group needs a positive letter count");
    if (spec.perm_gens.empty()) throw invalid_input("permutation group needs generators");

    using Perm = std::vector<int>;
    auto compose = [](const Perm& p, const Perm& q) {  // (p*q)(i) = p(q(i))
        Perm r(p.size());
        for (size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
        return r;
    };

    std::vector<Perm> gens;
    std::vector<std::string> gen_names;
    for (const auto& [nm, cycles] : spec.perm_gens) {
        Perm p(letters);
        std::iota(p.begin(), p.end(), 0);
        for (const auto& cyc : cycles) {
            for (size_t i = 0; i < cyc.size(); ++i) {
                int from = cyc[i] - 1, to = cyc[(i + 1) % cyc.size()] - 1;
                if (from < 0 || from >= letters || to < 0 || to >= letters)
                    throw invalid_input("permutation cycle letter out of range");
                p[from] = to;
            }
        }
        gens.push_back(std::move(p));
        gen_names.push_back(nm);
    }

    Perm id(letters);
    std::iota(id.begin(), id.end(), 0);
    std::map<Perm, int> index;
    std::vector<Perm> elems{id};
    std::vector<std::string> words{"1"};
    index[id] = 0;
    size_t head = 0;
    while (head < elems.size()) {
        Perm cur = elems[head];
        std::string cur_word = words[head];
        ++head;
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            Perm nxt = compose(cur, gens[gi]);
            if (index.emplace(nxt, static_cast<int>(elems.size())).second) {
                elems.push_back(nxt);
                words.push_back(cur_word == "1" ? gen_names[gi] : cur_word + "*" + gen_names[gi]);
                if (elems.size() > static_cast<size_t>(cap))
                    throw invalid_input("permutation closure exceeds group order cap");
            }
        }
    }

    int n = static_cast<int>(elems.size());
    std::vector<int> table(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table[static_cast<size_t>(i) * n + j] = index.at(compose(elems[i], elems[j]));
    std::map<std::string, int> gmap;
    for (size_t gi = 0; gi < gens.size(); ++gi)
        if (!gmap.emplace(gen_names[gi], index.at(gens[gi])).second)
            throw invalid_input("duplicate permutation generator name");
    std::string name = "Perm" + std::to_string(letters) + "#" + std::to_string(n);
    return FiniteGroup(n, std::move(table), std::move(name), std::move(gmap), std::move(words));
}

}  // namespace

FiniteGroup build_group(const GroupSpec& spec, int order_cap) {
    switch (spec.kind) {
        case GroupSpec::Kind::cyclic:
            if (spec.n > order_cap) throw invalid_input("cyclic group order exceeds cap");
            return build_cyclic(spec.n, spec.gen_name, order_cap);
        case GroupSpec::Kind::direct_product:
            return build_direct_product(spec.factors, order_cap);
        case GroupSpec::Kind::dihedral:
            if (spec.n > order_cap) throw invalid_input("dihedral group order exceeds cap");
            return build_dihedral(spec.n, order_cap);
        case GroupSpec::Kind::metacyclic:
            return build_metacyclic(spec.a, spec.b, spec.c, order_cap);
        case GroupSpec::Kind::semidirect:
            return build_semidirect(spec, order_cap);
        case GroupSpec::Kind::permutation:
            return build_permutation(spec, order_cap);
    }
    throw invalid_input("unknown group spec kind");
}

FiniteGroup cyclic_group(long n, const std::string& gen_name) {
    GroupSpec s;
    s.kind = GroupSpec::Kind::cyclic;
    s.n = n;
    s.gen_name = gen_name;
    return build_group(s);
}

FiniteGroup dihedral_group(long order) {
    GroupSpec s;
    s.kind = GroupSpec::Kind::dihedral;
    s.n = order;
    return build_group(s);
}

FiniteGroup metacyclic_group(long a, long b, long c) {
    GroupSpec s;
    s.kind = GroupSpec::Kind::metacyclic;
    s.a = a;
    s.b = b;
    s.c = c;
    return build_group(s);
}

FiniteGroup direct_product(const std::vector<GroupSpec>& factors) {
    GroupSpec s;
    s.kind = GroupSpec::Kind::direct_product;
    s.factors = factors;
    return build_group(s);
}

}  // namespace isofib
