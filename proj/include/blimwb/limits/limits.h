#pragma once

// The functor F/R'γ_n(F) on free presentations: its values, the equalizer
// description of Lim, the colimit G/γ_n(G), the boundary limit and the
// dimension quotient, plus verifiers for the statements relating them.

#include "blimwb/intlin/abelian.h"
#include "blimwb/nilpotent/quotient.h"
#include "blimwb/words.h"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace blimwb::limits {

using nilpotent::PcElement;
using nilpotent::PcGroup;
using nilpotent::PcHom;
using nilpotent::PcSubgroup;

/// Default bound on enumerated group orders.
inline constexpr size_t default_cap = size_t{1} << 20;

/// F/R'γ_n(F) as (free nilpotent of class n-1) / [R̄, R̄].
struct FunctorValue {
    int n = 0;
    nilpotent::FreeNilpotent free;
    PcSubgroup relators; // R̄ in the free nilpotent group
    nilpotent::PcQuotient quotient;
    /// Images of the presentation generators.
    std::vector<PcElement> labeled_generators;

    const PcGroup &group() const { return quotient.group; }
    PcElement evaluate(const words::Word &w) const;
};

FunctorValue evaluate_f(const words::FreePresentation &p, int n);

struct CoproductMaps {
    FunctorValue value;     // at c
    FunctorValue coproduct; // at c ⊔ c
    PcHom first;            // induced by ι₁
    PcHom second;           // induced by ι₂
};

CoproductMaps two_coproduct_maps(const words::FreePresentation &p, int n);

struct DescentStep {
    int weight = 0;
    /// Rank of the layer Pt_w / Pt_{w+1} image lattice hit by the defect map.
    size_t image_rank = 0;
    /// Number of induced generators of E after this step.
    size_t generators = 0;
};

struct EqualizerResult {
    PcSubgroup subgroup;
    std::vector<DescentStep> trace;
};

/// {x : φ(x) = ψ(x)} by descent along the weight filtration of the target.
EqualizerResult equalizer_subgroup(const PcHom &phi, const PcHom &psi);

/// Defect φ(x)ψ(x)^-1.
PcElement defect(const PcHom &phi, const PcHom &psi, const PcElement &x);

PcSubgroup lim_f(const words::FreePresentation &p, int n);

struct Colimit {
    nilpotent::NilpotentQuotient quotient; // G/γ_n(G)
    PcHom projection;                      // F/R'γ_n(F) -> G/γ_n(G)
};

Colimit colim_f(const FunctorValue &value, const words::FreePresentation &p);
Colimit colim_f(const words::FreePresentation &p, int n);

/// Sorted element list of a finite subgroup.
std::vector<PcElement> subgroup_elements(const PcSubgroup &h, size_t cap = default_cap);

/// Image of Lim in G/γ_n(G) as a sorted element list.
std::vector<PcElement> blim_f(const words::FreePresentation &p, int n, size_t cap = default_cap);

/// D_n(G)/γ_n(G) as a sorted element list of G/γ_n(G). Each membership is
/// rechecked on a second lift altered by a relator conjugate and a weight-n
/// commutator; disagreement raises InternalError.
std::vector<PcElement> dimension_quotient_subgroup(const words::FreePresentation &p, int n,
                                                   size_t cap = default_cap, uint64_t seed = 1);

struct ComparisonReport {
    std::string presentation;
    int n = 4;
    PcGroup quotient; // G/γ_n(G)
    std::vector<PcElement> blim;
    std::vector<PcElement> dimension_quotient;
    bool equal = false;
    bool exponent_two = false;
    intlin::FgAbelian blim_invariants;
    intlin::FgAbelian dimension_quotient_invariants;
    /// Stage name -> milliseconds.
    std::map<std::string, double> timings;
};

ComparisonReport compare_blim_dimension(const words::FreePresentation &p, int n, size_t cap = default_cap,
                                     uint64_t seed = 1);
ComparisonReport verify_main_theorem(const words::FreePresentation &p, size_t cap = default_cap, uint64_t seed = 1);

bool verify_inclusion(const words::FreePresentation &p, int n, size_t cap = default_cap);

struct SymSequenceReport {
    intlin::FgAbelian source;   // γ₃(F)/[R,F']γ₄(F)
    intlin::FgAbelian target;   // S²(G_ab) ⊗ F_ab
    intlin::FgAbelian cokernel;
    intlin::FgAbelian s3;       // S³(G_ab)
    bool well_defined = false;  // [R,F'] maps to zero
    bool injective = false;
    bool cokernel_matches = false;
    bool holds() const { return well_defined && injective && cokernel_matches; }
};

/// γ₃(F)/[R,F']γ₄(F) → S²(G_ab)⊗F_ab, [[a,b],c] ↦ āc̄⊗b − b̄c̄⊗a.
SymSequenceReport verify_sym_sequence(const words::FreePresentation &p);

struct MonoadditiveReport {
    /// Lim f/(rf+fⁿ) as the equalizer of the two coproduct maps.
    intlin::FgAbelian limit;
    bool vanishes() const { return limit.is_trivial(); }
};

MonoadditiveReport monoadditive_limit(const words::FreePresentation &p, int n);
bool verify_monoadditive_vanishing(const words::FreePresentation &p, int n);

struct CommutatorIdentityReport {
    PcSubgroup lhs; // R' ∩ γ₃(F) in F/γ₄(F)
    PcSubgroup rhs; // [R ∩ F', R]
    bool equal() const { return lhs == rhs; }
};

CommutatorIdentityReport verify_commutator_identity(const words::FreePresentation &p);

} // namespace blimwb::limits
