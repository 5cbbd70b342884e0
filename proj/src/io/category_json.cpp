#include "blimwb/io/category_json.h"

#include "blimwb/catcoh/random.h"
#include "blimwb/error.h"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <map>

namespace blimwb::io {

using catcoh::FiniteCategory;
using groupring::FiniteGroup;
using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string &where, const std::string &what)
{
    throw InputError(fmt::format("{}: {}", where, what));
}

const json &field(const json &j, const std::string &key, const std::string &where)
{
    if (!j.is_object() || !j.contains(key))
        bad(where, fmt::format("missing field '{}'", key));
    return j.at(key);
}

template <class T> T as(const json &j, const std::string &where)
{
    try {
        return j.get<T>();
    } catch (const json::exception &e) {
        bad(where, e.what());
    }
}

FiniteGroup parse_group(const json &j, const std::string &where)
{
    if (j.contains("library")) {
        const auto name = as<std::string>(j.at("library"), where);
        for (const auto &e : catcoh::small_groups())
            if (e.name == name)
                return e.group;
        bad(where, fmt::format("unknown library group '{}'", name));
    }
    if (j.contains("cyclic")) {
        const int n = as<int>(j.at("cyclic"), where);
        if (n < 1 || n > 4096)
            bad(where, "cyclic order out of range");
        return FiniteGroup::cyclic(n);
    }
    const auto table = as<std::vector<std::vector<int>>>(field(j, "table", where), where);
    try {
        return FiniteGroup(table);
    } catch (const InputError &e) {
        bad(where, e.what());
    }
}

intlin::AbelianGroup parse_abelian(const json &j, const std::string &where)
{
    const int rank = as<int>(field(j, "rank", where), where);
    if (rank < 0)
        bad(where, "negative rank");
    intlin::IntMatrix rel(0, rank);
    if (j.contains("relations"))
        for (const auto &row : as<std::vector<std::vector<long>>>(j.at("relations"), where)) {
            if (static_cast<int>(row.size()) != rank)
                bad(where, "relation length differs from the rank");
            intlin::IntVector v(rank);
            for (int k = 0; k < rank; ++k)
                v[k] = row[k];
            rel.append_row(v);
        }
    return intlin::AbelianGroup::from_relation_rows(rank, rel);
}

template <class F> auto per_name(const json &j, const std::vector<std::string> &names, const std::string &where, F parse)
{
    using T = decltype(parse(json(), std::string()));
    if (!j.is_object())
        bad(where, "expected an object keyed by name");
    std::vector<T> out;
    for (const auto &n : names) {
        const std::string w = fmt::format("{}.{}", where, n);
        out.push_back(parse(field(j, n, where), w));
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(names.begin(), names.end(), it.key()) == names.end())
            bad(where, fmt::format("unknown name '{}'", it.key()));
    return out;
}

} // namespace

CategoryInput parse_category(const json &j)
{
    if (!j.is_object())
        bad("category", "expected a JSON object");
    CategoryInput in;
    if (j.contains("group")) {
        in.category = FiniteCategory::from_group(parse_group(j.at("group"), "group"));
    } else {
        const auto objects = as<std::vector<std::string>>(field(j, "objects", "category"), "objects");
        std::map<std::string, int> obj;
        for (size_t i = 0; i < objects.size(); ++i)
            if (!obj.emplace(objects[i], static_cast<int>(i)).second)
                bad("objects", fmt::format("duplicate object '{}'", objects[i]));
        std::vector<catcoh::Morphism> ms;
        std::map<std::string, int> mor;
        for (const auto &m : field(j, "morphisms", "category")) {
            const auto id = as<std::string>(field(m, "id", "morphisms"), "morphisms");
            const std::string where = "morphisms." + id;
            const auto dom = as<std::string>(field(m, "dom", where), where);
            const auto cod = as<std::string>(field(m, "cod", where), where);
            if (!obj.count(dom) || !obj.count(cod))
                bad(where, "unknown object");
            if (!mor.emplace(id, static_cast<int>(ms.size())).second)
                bad(where, "duplicate morphism");
            ms.push_back({id, obj.at(dom), obj.at(cod)});
        }
        std::vector<std::array<int, 3>> triples;
        if (j.contains("compose"))
            for (const auto &t : as<std::vector<std::vector<std::string>>>(j.at("compose"), "compose")) {
                if (t.size() != 3)
                    bad("compose", "triples [g, f, g∘f] expected");
                std::array<int, 3> r{};
                for (int k = 0; k < 3; ++k) {
                    auto it = mor.find(t[k]);
                    if (it == mor.end())
                        bad("compose", fmt::format("unknown morphism '{}'", t[k]));
                    r[k] = it->second;
                }
                triples.push_back(r);
            }
        in.category = FiniteCategory::from_triples(objects, ms, triples);
    }
    const auto &c = in.category;
    std::vector<std::string> objects, morphisms;
    for (int o = 0; o < c.object_count(); ++o)
        objects.push_back(c.object_name(o));
    for (int m = 0; m < c.morphism_count(); ++m)
        morphisms.push_back(c.morphism(m).name);

    if (j.contains("groups")) {
        catcoh::FunctorToGroups f;
        f.groups = per_name(j.at("groups"), objects, "groups", parse_group);
        f.maps = per_name(field(j, "maps", "functor"), morphisms, "maps", [](const json &v, const std::string &w) {
            return as<std::vector<int>>(v, w);
        });
        for (int m = 0; m < c.morphism_count(); ++m) {
            const auto &src = f.groups[c.dom(m)];
            const auto &dst = f.groups[c.cod(m)];
            if (static_cast<int>(f.maps[m].size()) != src.order())
                bad("maps." + morphisms[m], "one image per source element required");
            for (int y : f.maps[m])
                if (y < 0 || y >= dst.order())
                    bad("maps." + morphisms[m], "image outside the target group");
        }
        f.validate(c);
        if (std::all_of(f.groups.begin(), f.groups.end(), [](const FiniteGroup &g) { return g.is_abelian(); }))
            in.abelian = catcoh::to_abelian(c, f);
        in.groups = std::move(f);
    } else if (j.contains("abelian")) {
        catcoh::AbelianFunctor f;
        f.values = per_name(j.at("abelian"), objects, "abelian", parse_abelian);
        f.maps = per_name(field(j, "matrices", "functor"), morphisms, "matrices",
                          [](const json &v, const std::string &w) {
                              return intlin::IntMatrix::from_ints(as<std::vector<std::vector<long>>>(v, w));
                          });
        for (int m = 0; m < c.morphism_count(); ++m) {
            const auto &M = f.maps[m];
            const size_t r = f.values[c.dom(m)].generators(), k = f.values[c.cod(m)].generators();
            if (M.rows() != r || (r > 0 && M.cols() != k))
                bad("matrices." + morphisms[m], fmt::format("expected a {}x{} matrix", r, k));
            if (r == 0)
                f.maps[m] = intlin::IntMatrix(0, k);
        }
        f.validate(c);
        in.abelian = std::move(f);
    } else {
        bad("category", "either 'groups' or 'abelian' is required");
    }

    if (j.contains("subfunctor")) {
        if (!in.groups)
            bad("subfunctor", "requires group-valued coefficients");
        catcoh::Subfunctor s;
        s.subgroups = per_name(j.at("subfunctor"), objects, "subfunctor", [](const json &v, const std::string &w) {
            auto xs = as<std::vector<int>>(v, w);
            std::sort(xs.begin(), xs.end());
            xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
            return xs;
        });
        for (int o = 0; o < c.object_count(); ++o)
            for (int x : s.subgroups[o])
                if (x < 0 || x >= in.groups->groups[o].order())
                    bad("subfunctor." + objects[o], "element out of range");
        catcoh::validate_subfunctor(c, *in.groups, s);
        in.subfunctor = std::move(s);
    }
    if (j.contains("degree")) {
        in.degree = as<int>(j.at("degree"), "degree");
        if (in.degree < 0)
            bad("degree", "must be non-negative");
    }
    return in;
}

CategoryInput load_category(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError(fmt::format("cannot read {}", path));
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError(fmt::format("{}: {}", path, e.what()));
    }
    try {
        return parse_category(j);
    } catch (const InputError &e) {
        throw InputError(fmt::format("{}: {}", path, e.what()));
    }
}

nlohmann::ordered_json category_to_json(const FiniteCategory &c, const catcoh::FunctorToGroups &f,
                                        const catcoh::Subfunctor *s)
{
    nlohmann::ordered_json j;
    std::vector<std::string> objects;
    for (int o = 0; o < c.object_count(); ++o)
        objects.push_back(c.object_name(o));
    j["objects"] = objects;
    j["morphisms"] = nlohmann::ordered_json::array();
    for (int m = 0; m < c.morphism_count(); ++m)
        j["morphisms"].push_back(
            {{"id", c.morphism(m).name}, {"dom", objects[c.dom(m)]}, {"cod", objects[c.cod(m)]}});
    j["compose"] = nlohmann::ordered_json::array();
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int h = 0; h < c.morphism_count(); ++h)
            if (c.compose(g, h) >= 0)
                j["compose"].push_back({c.morphism(g).name, c.morphism(h).name, c.morphism(c.compose(g, h)).name});
    j["groups"] = nlohmann::ordered_json::object();
    for (int o = 0; o < c.object_count(); ++o)
        j["groups"][objects[o]] = {{"table", f.groups[o].table()}};
    j["maps"] = nlohmann::ordered_json::object();
    for (int m = 0; m < c.morphism_count(); ++m)
        j["maps"][c.morphism(m).name] = f.maps[m];
    if (s) {
        j["subfunctor"] = nlohmann::ordered_json::object();
        for (int o = 0; o < c.object_count(); ++o)
            j["subfunctor"][objects[o]] = s->subgroups[o];
    }
    return j;
}

} // namespace blimwb::io
