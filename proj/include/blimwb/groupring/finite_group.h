#pragma once

#include "blimwb/words.h"

#include <cstddef>
#include <string>
#include <vector>

namespace blimwb::groupring {

/// Finite group on elements 0..n-1 given by its multiplication table.
class FiniteGroup {
  public:
    FiniteGroup() = default;
    /// Validates closure, associativity, identity and inverses.
    explicit FiniteGroup(std::vector<std::vector<int>> table);

    static FiniteGroup trivial();
    static FiniteGroup cyclic(int n);
    /// Z/n_1 x ... x Z/n_k; element index is mixed radix with the first
    /// factor most significant.
    static FiniteGroup abelian(const std::vector<int> &orders);
    static FiniteGroup dihedral(int n); // order 2n
    static FiniteGroup quaternion();
    static FiniteGroup symmetric(int n);
    static FiniteGroup direct_product(const FiniteGroup &a, const FiniteGroup &b);

    int order() const { return static_cast<int>(table_.size()); }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[a][b]; }
    int inv(int a) const { return inverse_[a]; }
    int pow(int a, long e) const;
    int element_order(int a) const;
    bool is_abelian() const;
    const std::vector<std::vector<int>> &table() const { return table_; }

    /// Smallest subgroup containing the given elements, as a sorted list.
    std::vector<int> generated_subgroup(const std::vector<int> &gens) const;
    /// A generating set chosen greedily in element order.
    std::vector<int> generators() const;
    bool is_subgroup(const std::vector<bool> &mask) const;
    bool is_normal_subgroup(const std::vector<bool> &mask) const;
    std::vector<int> center() const;

  private:
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    int identity_ = 0;
};

/// Homomorphism check between finite groups given by an element map.
bool is_homomorphism(const FiniteGroup &source, const FiniteGroup &target, const std::vector<int> &map);

struct EnumeratedGroup {
    FiniteGroup group;
    /// Element index of each presentation generator.
    std::vector<int> generator_images;
    /// A word representing each element.
    std::vector<words::Word> representatives;
};

/// Todd–Coxeter enumeration of the cosets of the trivial subgroup; the
/// regular action gives the multiplication table. Throws CapExceeded when
/// more than `coset_cap` cosets are defined.
EnumeratedGroup enumerate_group(const words::FreePresentation &p, size_t coset_cap = 200000);

/// Element of the enumerated group represented by a word.
int evaluate_word(const EnumeratedGroup &g, const words::Word &w);

} // namespace blimwb::groupring
