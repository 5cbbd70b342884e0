#pragma once

// Truncated free associative algebra Z<X_1..X_k> / (degree >= n), the image
// of Z[F]/f^n under x_j -> 1 + X_j.

#include "blimwb/intlin/matrix.h"
#include "blimwb/words.h"

#include <memory>
#include <vector>

namespace blimwb::groupring {

using intlin::BigInt;
using intlin::IntVector;

/// Noncommutative monomials of degree < n in k letters, ordered by degree
/// and then lexicographically by generator index. Degree-d monomial
/// (j_1..j_d) sits at offset(d) + Σ j_t k^{d-t}.
class MonomialBasis {
  public:
    MonomialBasis(int generators, int order);

    int generators() const { return k_; }
    int order() const { return n_; }
    size_t size() const { return offsets_.back(); }
    size_t offset(int degree) const { return offsets_[degree]; }
    size_t count(int degree) const { return offsets_[degree + 1] - offsets_[degree]; }

    size_t index(const std::vector<int> &letters) const;
    std::vector<int> letters(size_t index) const;
    int degree(size_t index) const;

    bool operator==(const MonomialBasis &o) const { return k_ == o.k_ && n_ == o.n_; }

  private:
    int k_;
    int n_;
    std::vector<size_t> offsets_; // offsets_[d] for d = 0..n
};

class TruncatedElement {
  public:
    TruncatedElement(int generators, int order);

    static TruncatedElement one(int generators, int order);
    /// X_j
    static TruncatedElement variable(int generators, int order, int j);
    static TruncatedElement monomial(int generators, int order, const std::vector<int> &letters);

    const MonomialBasis &basis() const { return *basis_; }
    int generators() const { return basis_->generators(); }
    int order() const { return basis_->order(); }

    const BigInt &coefficient(const std::vector<int> &letters) const;
    const BigInt &coefficient(size_t index) const { return coeffs_[index]; }
    BigInt &coefficient_ref(size_t index) { return coeffs_[index]; }
    /// Nonzero terms as (monomial, coefficient) pairs in basis order.
    std::vector<std::pair<std::vector<int>, BigInt>> terms() const;
    bool is_zero() const;

    /// Smallest degree with a nonzero coefficient (order() if zero).
    int valuation() const;
    TruncatedElement truncate(int order) const;
    TruncatedElement homogeneous_part(int degree) const;
    /// Coordinates in degrees 1..n-1 (drops the constant term).
    IntVector augmentation_coordinates() const;

    TruncatedElement operator+(const TruncatedElement &o) const;
    TruncatedElement operator-(const TruncatedElement &o) const;
    TruncatedElement operator-() const;
    TruncatedElement operator*(const BigInt &s) const;
    friend TruncatedElement operator*(const TruncatedElement &a, const TruncatedElement &b);
    bool operator==(const TruncatedElement &o) const;

    /// Inverse of a unit 1 + z with z of positive valuation.
    TruncatedElement unit_inverse() const;

  private:
    void check_compatible(const TruncatedElement &o) const;

    std::shared_ptr<const MonomialBasis> basis_;
    std::vector<BigInt> coeffs_;
};

/// Truncated product, multiplicative image of a word: x_j -> 1 + X_j,
/// x_j^e -> Σ_{i<n} binom(e, i) X_j^i.
TruncatedElement expand_group_element(const words::Word &w, int generators, int order);

/// Ring map sending X_j to `images[j]` (all images of the target shape).
TruncatedElement substitute(const TruncatedElement &a, const std::vector<TruncatedElement> &images);

/// Ring map Z[F]/f^n -> Z[F']/f'^n induced by a homomorphism of free groups.
TruncatedElement apply_group_map(const TruncatedElement &a, const words::GroupMap &m);

} // namespace blimwb::groupring
