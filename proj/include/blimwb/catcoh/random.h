#pragma once

// Seeded random small categories with functors to finite groups, used by the
// property tests and the acceptance checks.

#include "blimwb/catcoh/category.h"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace blimwb::catcoh {

enum class InstanceKind { point, poset, paths, group, idempotent, constant };

struct RandomInstance {
    std::string kind;
    FiniteCategory category;
    FunctorToGroups functor;
};

/// Named groups of order at most 8.
struct LibraryGroup {
    std::string name;
    groupring::FiniteGroup group;
};
const std::vector<LibraryGroup> &small_groups();

/// Every homomorphism A -> B as an element map.
std::vector<std::vector<int>> all_homs(const groupring::FiniteGroup &a, const groupring::FiniteGroup &b);

RandomInstance random_instance(InstanceKind kind, std::mt19937_64 &rng);
/// Kind drawn uniformly.
RandomInstance random_instance(std::mt19937_64 &rng);

enum class SubfunctorKind { any, normal, central };

/// A subfunctor generated by random seeds. For `central` the seeds come from
/// the centres and generation is retried; returns nullopt if no non-trivial
/// central subfunctor turned up.
std::optional<Subfunctor> random_subfunctor(const FiniteCategory &c, const FunctorToGroups &f, SubfunctorKind kind,
                                            std::mt19937_64 &rng, int attempts = 20);

/// The subfunctor of centres when it is one.
std::optional<Subfunctor> center_subfunctor(const FiniteCategory &c, const FunctorToGroups &f);

} // namespace blimwb::catcoh
