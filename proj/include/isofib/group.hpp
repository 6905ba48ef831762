#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace isofib {

// Small finite group materialized as a full multiplication table. Immutable
// after construction; every query is pure, so instances are safe to share
// across worker threads.
class FiniteGroup {
public:
    static constexpr int kDefaultOrderCap = 2048;

    // Takes a complete composition table over element indices 0..order-1
    // (row-major: table[a*order+b] = a*b) plus display metadata. Validates
    // the Latin-square and identity invariants; associativity is checked
    // exhaustively up to order 128 and on sampled triples above that.
    FiniteGroup(int order, std::vector<int> table, std::string name,
                std::map<std::string, int> generator_names,
                std::vector<std::string> element_words);

    int order() const { return order_; }
    const std::string& name() const { return name_; }

    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[static_cast<size_t>(a) * order_ + b]; }
    int inv(int a) const { return inverse_[a]; }
    // h g h^-1
    int conjugate(int g, int h) const { return mul(mul(h, g), inv(h)); }
    int power(int g, long e) const;

    int element_order(int g) const { return element_order_[g]; }

    std::vector<int> conjugacy_class(int g) const;      // sorted
    int centralizer_size(int g) const;
    std::vector<int> cyclic_subgroup(int g) const;      // sorted
    std::vector<int> subgroup_generated(std::span<const int> gens) const;  // sorted
    bool generates(std::span<const int> gens) const;
    std::vector<int> elements_of_order(int k) const;

    const std::map<std::string, int>& generator_names() const { return generator_names_; }
    const std::string& word(int g) const { return element_words_[g]; }

    // Parses a word in the named generators, e.g. "x*y^2", "(y*z)^-1", "1".
    int element_by_word(const std::string& w) const;

private:
    void validate() const;

    int order_;
    int identity_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<int> element_order_;
    std::string name_;
    std::map<std::string, int> generator_names_;
    std::vector<std::string> element_words_;
};

// Structured group constructors. Presentations are not solved by coset
// enumeration; these builders cover cyclic groups, direct products,
// dihedral and metacyclic groups, explicit abelian-by-cyclic semidirect
// products and permutation closures.
struct GroupSpec {
    enum class Kind { cyclic, direct_product, dihedral, metacyclic, semidirect, permutation };
    Kind kind = Kind::cyclic;

    long n = 0;                // cyclic order / dihedral group order / permutation letters
    std::string gen_name;      // cyclic generator name (default "g")

    std::vector<GroupSpec> factors;  // direct_product

    long a = 0, b = 0, c = 0;  // metacyclic: x^a = y^b = 1, x y x^-1 = y^c

    // semidirect: abelian kernel given by cyclic moduli with named generators,
    // acted on by a cyclic group <actor> of the given order; action_words[j]
    // is the image of kernel generator j as a word in the kernel generators.
    std::vector<long> kernel_moduli;
    std::vector<std::string> kernel_names;
    std::string actor_name;
    long actor_order = 0;
    std::vector<std::string> action_words;

    // permutation: generators as cycle lists on letters 1..n.
    std::vector<std::pair<std::string, std::vector<std::vector<int>>>> perm_gens;
};

FiniteGroup build_group(const GroupSpec& spec, int order_cap = FiniteGroup::kDefaultOrderCap);

// Convenience builders used throughout the tests.
FiniteGroup cyclic_group(long n, const std::string& gen_name = "g");
FiniteGroup dihedral_group(long order);                 // x^2 = y^(order/2) = 1, x y x^-1 = y^-1
FiniteGroup metacyclic_group(long a, long b, long c);   // x^a = y^b = 1, x y x^-1 = y^c
FiniteGroup direct_product(const std::vector<GroupSpec>& factors);

}  // namespace isofib
