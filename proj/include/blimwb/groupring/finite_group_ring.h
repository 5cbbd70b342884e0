#pragma once

#include "blimwb/groupring/finite_group.h"
#include "blimwb/intlin/lattice.h"

namespace blimwb::groupring {

inline constexpr size_t default_group_cap = 4096;

/// Z[G] for a finite group, elements as integer vectors indexed by G.
class FiniteGroupRing {
  public:
    explicit FiniteGroupRing(FiniteGroup g, size_t cap = default_group_cap);

    const FiniteGroup &group() const { return group_; }
    size_t dimension() const { return static_cast<size_t>(group_.order()); }

    intlin::IntVector multiply(std::span<const intlin::BigInt> a, std::span<const intlin::BigInt> b) const;
    /// g - 1
    intlin::IntVector augmentation_vector(int g) const;

    /// g^n as a lattice in Z^|G|, built by n-1 span products with g.
    intlin::Lattice augmentation_power(int n) const;
    /// D_n(G) = G ∩ (1 + g^n), sorted element indices.
    std::vector<int> dimension_subgroup(int n) const;

  private:
    FiniteGroup group_;
};

} // namespace blimwb::groupring
