#pragma once

#include "blimwb/intlin/matrix.h"

namespace blimwb::intlin {

class FgAbelian;

/// Sublattice of Z^n stored by its row Hermite basis, so equality of
/// lattices is equality of bases.
class Lattice {
  public:
    Lattice() = default;
    explicit Lattice(size_t ambient_rank) : basis_(0, ambient_rank) {}
    static Lattice span(const IntMatrix &generators);
    static Lattice span(const std::vector<IntVector> &generators, size_t ambient_rank);
    static Lattice full(size_t ambient_rank);

    size_t ambient_rank() const { return basis_.cols(); }
    size_t rank() const { return basis_.rows(); }
    const IntMatrix &basis() const { return basis_; }
    const std::vector<size_t> &pivots() const { return pivots_; }
    bool is_zero() const { return basis_.rows() == 0; }

    bool contains(std::span<const BigInt> v) const;
    bool contains(const Lattice &other) const;

    /// Adds generators. Large row sets are folded into the basis in chunks so
    /// each Hermite reduction stays near the ambient rank.
    void add(std::span<const BigInt> v);
    void add(const IntMatrix &rows);

    /// Reduces v modulo the lattice: remainder with pivot entries in
    /// [0, pivot).
    IntVector reduce(std::span<const BigInt> v) const;

    bool operator==(const Lattice &other) const;

  private:
    void rebuild(const IntMatrix &rows);

    IntMatrix basis_;
    std::vector<size_t> pivots_;
};

Lattice lattice_sum(const Lattice &a, const Lattice &b);
Lattice lattice_intersect(const Lattice &a, const Lattice &b);
/// Z^ambient / L.
FgAbelian quotient_invariants(const Lattice &l);
/// outer / inner for inner ⊆ outer.
FgAbelian quotient_invariants(const Lattice &outer, const Lattice &inner);

/// Preimage {v : v * m ∈ target}.
Lattice preimage(const IntMatrix &m, const Lattice &target);

} // namespace blimwb::intlin
