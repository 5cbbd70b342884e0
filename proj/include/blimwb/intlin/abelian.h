#pragma once

#include "blimwb/intlin/lattice.h"

#include <string>
#include <utility>
#include <vector>

namespace blimwb::intlin {

/// Finitely generated abelian group in canonical form: torsion invariants
/// d_1 | d_2 | ... (each >= 2) plus a free rank.
class FgAbelian {
  public:
    FgAbelian() = default;
    FgAbelian(std::vector<BigInt> torsion, size_t free_rank);
    /// Canonicalizes an arbitrary list of cyclic orders (0 = infinite cyclic,
    /// 1 = trivial factor).
    static FgAbelian from_cyclic(const std::vector<BigInt> &orders);
    static FgAbelian from_cyclic_ints(const std::vector<long> &orders);
    static FgAbelian free(size_t rank) { return FgAbelian({}, rank); }

    const std::vector<BigInt> &torsion() const { return torsion_; }
    size_t free_rank() const { return free_rank_; }
    bool is_trivial() const { return torsion_.empty() && free_rank_ == 0; }
    bool is_finite() const { return free_rank_ == 0; }
    /// Group order; requires is_finite().
    BigInt order() const;

    FgAbelian operator+(const FgAbelian &other) const; // direct sum
    bool operator==(const FgAbelian &) const = default;
    std::string to_string() const;

  private:
    std::vector<BigInt> torsion_;
    size_t free_rank_ = 0;
};

/// Abelian group Z^generators / rowspan(relations), kept with its chosen
/// generators so maps can be written on them.
class AbelianGroup {
  public:
    AbelianGroup() = default;
    AbelianGroup(size_t generators, Lattice relations);
    static AbelianGroup free(size_t rank) { return AbelianGroup(rank, Lattice(rank)); }
    /// Presentation Z^k / diag(orders); a 0 order is an infinite cyclic factor.
    static AbelianGroup cyclic(const std::vector<BigInt> &orders);
    static AbelianGroup from_relation_rows(size_t generators, const IntMatrix &rows);

    size_t generators() const { return relations_.ambient_rank(); }
    const Lattice &relations() const { return relations_; }
    FgAbelian invariants() const;
    /// True iff v represents zero.
    bool is_zero(std::span<const BigInt> v) const { return relations_.contains(v); }

  private:
    Lattice relations_;
};

/// Homomorphism given on generators: row i is the image of source generator
/// i in target coordinates.
class AbelianMap {
  public:
    AbelianMap(AbelianGroup source, AbelianGroup target, IntMatrix matrix);

    const AbelianGroup &source() const { return source_; }
    const AbelianGroup &target() const { return target_; }
    const IntMatrix &matrix() const { return matrix_; }

    /// Every source relation maps into the target relations.
    bool is_well_defined() const;
    IntVector apply(std::span<const BigInt> v) const { return vec_times_matrix(v, matrix_); }
    /// Lattice {v : v ↦ 0} in source generator coordinates (contains the
    /// source relations).
    Lattice kernel_lattice() const;
    FgAbelian kernel() const;
    FgAbelian image() const;
    FgAbelian cokernel() const;
    bool is_injective() const;

  private:
    AbelianGroup source_;
    AbelianGroup target_;
    IntMatrix matrix_;
};

struct TensorTor {
    FgAbelian tensor;
    FgAbelian tor;
};

/// A ⊗ B and Tor(A, B) by bilinearity over the cyclic decompositions.
TensorTor tensor_and_tor(const FgAbelian &a, const FgAbelian &b);

/// Tensor product of presented groups on generator pairs (i, j), index
/// i * b.generators() + j.
AbelianGroup tensor(const AbelianGroup &a, const AbelianGroup &b);

/// Multisets of size `degree` over `variables` letters, sorted
/// lexicographically (each multiset is a nondecreasing index list).
std::vector<std::vector<int>> monomials(int variables, int degree);

struct SymmetricPower {
    int degree = 0;
    std::vector<std::vector<int>> monomials;
    AbelianGroup group;
    size_t index_of(const std::vector<int> &sorted_monomial) const;
};

/// S^k(A) for A = Z^n / R: cokernel of R ⊗ S^{k-1}(Z^n) -> S^k(Z^n), on
/// generators indexed by degree-k multisets of A's generators.
SymmetricPower sym_power(const AbelianGroup &a, int degree);

struct LieCube {
    FgAbelian invariants;
    /// Inclusion of L^3(A) into S^2(A) ⊗ A; its source is presented on a
    /// basis of the kernel lattice.
    AbelianMap inclusion;
    SymmetricPower s2;
    SymmetricPower s3;
    AbelianGroup s2_tensor_a;
    /// Multiplication S^2(A) ⊗ A -> S^3(A).
    AbelianMap multiplication;
};

/// L^3(A) as the kernel of the multiplication S^2(A) ⊗ A -> S^3(A).
LieCube lie_cube(const AbelianGroup &a);

} // namespace blimwb::intlin
