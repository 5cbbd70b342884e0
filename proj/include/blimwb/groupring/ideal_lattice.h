#pragma once

#include "blimwb/groupring/truncated.h"
#include "blimwb/intlin/lattice.h"

namespace blimwb::groupring {

enum class IdealMode {
    r,  // (r + f^n) / f^n
    rf, // (rf + f^n) / f^n
};

/// Sublattice of f / f^n in the monomial coordinates of degrees 1..n-1.
struct IdealLattice {
    int generators = 0;
    int order = 0;
    intlin::Lattice lattice;

    size_t ambient_rank() const { return lattice.ambient_rank(); }
    bool contains(const TruncatedElement &augmentation_element) const;
};

/// Span of m_L (ρ - 1) m_R over relators ρ and monomials with
/// deg m_L + deg m_R <= n - 2 (and deg m_R >= 1 in rf mode).
IdealLattice relator_ideal_lattice(const words::FreePresentation &p, int order, IdealMode mode);

/// w - 1 ∈ r + f^n (or rf + f^n).
bool dimension_membership_free(const IdealLattice &ideal, const words::Word &w);
bool dimension_membership_free(const words::FreePresentation &p, int order, const words::Word &w,
                               IdealMode mode);

} // namespace blimwb::groupring
