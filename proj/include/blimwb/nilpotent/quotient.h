#pragma once

#include "blimwb/nilpotent/free_nilpotent.h"
#include "blimwb/nilpotent/subgroup.h"

namespace blimwb::nilpotent {

/// Homomorphism of pc groups given by the images of the source pc
/// generators; the defining relations are checked on construction.
class PcHom {
  public:
    PcHom() = default;
    PcHom(PcGroup source, PcGroup target, std::vector<PcElement> images);

    const PcGroup &source() const { return source_; }
    const PcGroup &target() const { return target_; }
    const std::vector<PcElement> &images() const { return images_; }
    PcElement apply(const PcElement &x) const;
    PcSubgroup image(const PcSubgroup &h) const;

  private:
    PcGroup source_;
    PcGroup target_;
    std::vector<PcElement> images_;
};

struct PcQuotient {
    PcGroup group;
    PcHom projection;
    /// Parent position of each quotient generator.
    std::vector<int> source_positions;
    PcSubgroup kernel;

    /// Preimage Π a_{source(t)}^{y_t} of a quotient normal form.
    PcElement lift(const PcElement &y) const;
};

/// Q / N for a normal subgroup N; generators are the parent generators whose
/// layer is not swallowed by N.
PcQuotient quotient_pc(const PcSubgroup &n);

/// Homomorphism out of a quotient of a free nilpotent group (or the group
/// itself when `quotient` is null) fixed by the images of the free
/// generators, evaluated through the basic commutator definitions.
PcHom hom_from_generator_images(const FreeNilpotent &fn, const PcQuotient *quotient, const PcGroup &target,
                                const std::vector<PcElement> &generator_images);

struct NilpotentQuotient {
    FreeNilpotent free;
    PcSubgroup relators; // normal closure of the relator images in the free group
    PcQuotient quotient;

    const PcGroup &group() const { return quotient.group; }
    /// Images of the presentation generators.
    std::vector<PcElement> generator_images() const;
    PcElement evaluate(const words::Word &w) const;
    /// Word lift of a quotient normal form.
    words::Word lift(const PcElement &y) const;
};

/// F / R γ_{c+1}(F) for the presentation F/R.
NilpotentQuotient nilpotent_quotient(const words::FreePresentation &p, int c);

} // namespace blimwb::nilpotent
