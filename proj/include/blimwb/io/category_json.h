#pragma once

// JSON input for finite categories with a functor:
//
//   {"objects": ["a", "b"],
//    "morphisms": [{"id": "1a", "dom": "a", "cod": "a"}, ...],
//    "compose": [["g", "f", "g∘f"], ...],
//    "groups": {"a": {"table": [[...]]} | {"library": "D4"} | {"cyclic": 4}},
//    "maps": {"f": [image of each element]},
//    "subfunctor": {"a": [elements]},            optional
//    "degree": 2}                                 optional, for Lim^n
//
// "group": <group spec> replaces objects/morphisms/compose by BG with
// morphisms named "id", "g1", "g2", ... after the element indices.
// Abelian coefficients replace groups/maps by
//   "abelian": {"a": {"rank": 1, "relations": [[2]]}}, "matrices": {"f": [[1]]}.

#include "blimwb/catcoh/category.h"

#include <json.hpp>

#include <optional>
#include <string>

namespace blimwb::io {

struct CategoryInput {
    catcoh::FiniteCategory category;
    std::optional<catcoh::FunctorToGroups> groups;
    std::optional<catcoh::AbelianFunctor> abelian;
    std::optional<catcoh::Subfunctor> subfunctor;
    int degree = 1;
};

/// Throws InputError naming the offending field.
CategoryInput parse_category(const nlohmann::json &j);
CategoryInput load_category(const std::string &path);

/// The explicit form of a category with a group-valued functor.
nlohmann::ordered_json category_to_json(const catcoh::FiniteCategory &c, const catcoh::FunctorToGroups &f,
                                        const catcoh::Subfunctor *s = nullptr);

} // namespace blimwb::io
