#pragma once

// Lim and non-abelian Lim^1 of functors to finite groups by enumeration, the
// connecting map δ and the exact sequences of pointed sets.

#include "blimwb/catcoh/category.h"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace blimwb::catcoh {

/// An element of Π_c F(c), one entry per object.
using Family = std::vector<int>;
/// A 1-cochain: a(α) ∈ F(cod α), one entry per morphism.
using Cochain1 = std::vector<int>;

/// Bound on search nodes in the cocycle enumeration.
inline constexpr size_t default_z1_cap = 10'000'000;

/// Compatible families x(cod α) = ^α x(dom α), sorted.
std::vector<Family> lim0_direct(const FiniteCategory &c, const FunctorToGroups &f);

bool is_cocycle(const FiniteCategory &c, const FunctorToGroups &f, const Cochain1 &a);

/// All a with a(αβ) = a(α)·^α a(β), sorted; the basepoint a ≡ 1 is first.
/// Throws CapExceeded when the search visits more than `cap` nodes.
std::vector<Cochain1> z1_nonabelian(const FiniteCategory &c, const FunctorToGroups &f, size_t cap = default_z1_cap);

/// (a^x)(α) = x(cod α)^-1 · a(α) · ^α x(dom α).
Cochain1 act(const FiniteCategory &c, const FunctorToGroups &f, const Cochain1 &a, const Family &x);

enum class OrbitMethod {
    generators, // union-find over one generator family per object-group generator
    full,       // the whole of Π_c F(c)
};

/// Lim^1 F as the orbit set of Z^1 under Π_c F(c).
struct Lim1 {
    std::vector<Cochain1> cocycles;
    std::vector<int> orbit_of; // orbit index per cocycle, orbits numbered by first member
    std::vector<int> representatives;
    std::map<Cochain1, int> index;

    size_t orbit_count() const { return representatives.size(); }
    int basepoint() const { return 0; }
    /// Orbit of a cocycle; throws InputError if it is not one.
    int orbit(const Cochain1 &a) const;
};

Lim1 lim1_nonabelian(const FiniteCategory &c, const FunctorToGroups &f, OrbitMethod method = OrbitMethod::generators,
                     size_t cap = default_z1_cap);

/// Left cosets x·S(c) of a subfunctor, numbered per object.
struct CosetTable {
    std::vector<std::vector<int>> coset_of;        // [c][x]
    std::vector<std::vector<int>> representatives; // [c][coset]
};
CosetTable left_cosets(const FunctorToGroups &f, const Subfunctor &s);

/// Lim F/S: compatible families of left cosets (coset indices per object).
std::vector<Family> lim_quotient(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s,
                                 const CosetTable &cosets);

/// d(x̄)(α) = x̄(cod α)^-1 · ^α x̄(dom α), written in the local element indices
/// of the restriction to S.
Cochain1 connecting_cocycle(const FiniteCategory &c, const FunctorToGroups &f, const RestrictedFunctor &s,
                            const Family &lift);

/// δ(x) as an orbit of Lim^1 S, for x given by coset indices.
int connecting_delta(const FiniteCategory &c, const FunctorToGroups &f, const RestrictedFunctor &s,
                     const CosetTable &cosets, const Lim1 &lim1_s, const Family &x);

struct ExactnessReport {
    /// Sizes of the terms in sequence order.
    std::vector<std::pair<std::string, size_t>> terms;
    std::vector<std::string> violations;
    size_t lift_checks = 0;
    /// Only for central subfunctors.
    bool central = false;
    size_t additivity_checks = 0;
    bool exact() const { return violations.empty(); }
};

/// 1 → Lim S → Lim F → Lim F/S → Lim^1 S → Lim^1 F, with δ rechecked on
/// `alternative_lifts` random lifts per element and, for central S,
/// additivity of δ.
ExactnessReport check_exact_seq1(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s,
                                 uint64_t seed = 1, int alternative_lifts = 10, size_t cap = default_z1_cap);

/// 1 → Lim F' → Lim F → Lim F'' → Lim^1 F' → Lim^1 F → Lim^1 F'' for
/// F' = S normal and F'' = F/S.
ExactnessReport check_exact_seq2(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s,
                                 uint64_t seed = 1, int alternative_lifts = 10, size_t cap = default_z1_cap);

} // namespace blimwb::catcoh
