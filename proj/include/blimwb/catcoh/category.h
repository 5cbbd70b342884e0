#pragma once

// Finite categories and functors from them to finite groups or to finitely
// generated abelian groups.

#include "blimwb/groupring/finite_group.h"
#include "blimwb/intlin/abelian.h"

#include <array>
#include <string>
#include <vector>

namespace blimwb::catcoh {

struct Morphism {
    std::string name;
    int dom = 0;
    int cod = 0;
};

/// Composition g∘f (f first) is defined when dom(g) = cod(f).
class FiniteCategory {
  public:
    FiniteCategory() = default;
    /// `compose[g][f]` is g∘f for composable pairs and -1 otherwise. Throws
    /// InputError naming the offending triple when a law fails.
    FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms, std::vector<int> identities,
                   std::vector<std::vector<int>> compose);

    /// Builds the table from triples (g, f, g∘f); pairs not listed are an
    /// error when composable.
    static FiniteCategory from_triples(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                                       const std::vector<std::array<int, 3>> &triples);

    /// One object, identity only.
    static FiniteCategory point();
    /// One object with the elements of G as morphisms; g∘h = gh.
    static FiniteCategory from_group(const groupring::FiniteGroup &g, const std::string &name = "G");
    /// Preorder on n objects: leq[a][b] means a unique morphism a -> b; must
    /// be reflexive and transitive.
    static FiniteCategory poset(const std::vector<std::vector<bool>> &leq);
    /// Path category of an acyclic quiver; arrows as (source, target).
    /// Throws CapExceeded when there are more than `max_morphisms` paths.
    /// `morphism_paths`, when given, receives each morphism's arrow list in
    /// application order.
    static FiniteCategory paths(int objects, const std::vector<std::pair<int, int>> &arrows,
                                size_t max_morphisms = 64,
                                std::vector<std::vector<int>> *morphism_paths = nullptr);
    /// One object with morphisms {1, e}, e∘e = e.
    static FiniteCategory idempotent();

    int object_count() const { return static_cast<int>(objects_.size()); }
    int morphism_count() const { return static_cast<int>(morphisms_.size()); }
    const std::string &object_name(int c) const { return objects_[c]; }
    const Morphism &morphism(int m) const { return morphisms_[m]; }
    int dom(int m) const { return morphisms_[m].dom; }
    int cod(int m) const { return morphisms_[m].cod; }
    int identity(int c) const { return identities_[c]; }
    bool is_identity(int m) const { return identities_[dom(m)] == m; }
    /// g∘f or -1.
    int compose(int g, int f) const { return compose_[g][f]; }

  private:
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<int> identities_;
    std::vector<std::vector<int>> compose_;
};

/// Functor to finite groups: a group per object and an element map per
/// morphism.
struct FunctorToGroups {
    std::vector<groupring::FiniteGroup> groups;
    std::vector<std::vector<int>> maps;

    int act(int m, int x) const { return maps[m][x]; }
    /// Throws InputError on a broken homomorphism or functor law.
    void validate(const FiniteCategory &c) const;
};

/// Functor to abelian groups given by presentations and integer matrices
/// acting on row vectors of generator coordinates.
struct AbelianFunctor {
    std::vector<intlin::AbelianGroup> values;
    std::vector<intlin::IntMatrix> maps;

    /// Throws InputError when a map is not well defined or a law fails.
    void validate(const FiniteCategory &c) const;
};

/// Presentation of a finite abelian group given by a table: generators are
/// the table's greedy generators; `coordinates[x]` writes element x in them.
struct AbelianCoordinates {
    std::vector<int> generators;
    intlin::AbelianGroup group;
    std::vector<intlin::IntVector> coordinates;
};
AbelianCoordinates abelian_coordinates(const groupring::FiniteGroup &g);

/// The abelian view of a functor whose values are abelian.
AbelianFunctor to_abelian(const FiniteCategory &c, const FunctorToGroups &f);

/// Constant functor with identity maps.
FunctorToGroups constant_functor(const FiniteCategory &c, const groupring::FiniteGroup &g);

/// Per-object subgroups given as sorted element lists.
struct Subfunctor {
    std::vector<std::vector<int>> subgroups;
    bool contains(int c, int x) const;
};

/// Checks that each entry is a subgroup mapped into its counterpart.
void validate_subfunctor(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s);
bool is_normal(const FunctorToGroups &f, const Subfunctor &s);
bool is_central(const FunctorToGroups &f, const Subfunctor &s);

/// Smallest subfunctor containing the given elements at each object
/// (normal subgroups when `normal` is set).
Subfunctor generated_subfunctor(const FiniteCategory &c, const FunctorToGroups &f,
                                const std::vector<std::vector<int>> &seeds, bool normal = false);

/// Objectwise quotient by a normal subfunctor, with the projection maps.
struct QuotientFunctor {
    FunctorToGroups functor;
    /// projection[c][x]: coset index of x in F(c)/S(c).
    std::vector<std::vector<int>> projection;
};
QuotientFunctor quotient_functor(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s);

/// Restriction of a functor to a subfunctor, with inclusion maps.
struct RestrictedFunctor {
    FunctorToGroups functor;
    /// inclusion[c][i]: element of F(c) for element i of the restriction.
    std::vector<std::vector<int>> inclusion;
};
RestrictedFunctor restrict_functor(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s);

} // namespace blimwb::catcoh
