#include "blimwb/catcoh/category.h"

#include "blimwb/error.h"

#include <fmt/format.h>

#include <algorithm>
#include <map>

namespace blimwb::catcoh {

using intlin::BigInt;
using intlin::IntMatrix;
using intlin::IntVector;

FiniteCategory::FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                               std::vector<int> identities, std::vector<std::vector<int>> compose)
    : objects_(std::move(objects)), morphisms_(std::move(morphisms)), identities_(std::move(identities)),
      compose_(std::move(compose))
{
    const int n = object_count();
    const int m = morphism_count();
    auto mname = [&](int a) { return morphisms_[a].name.empty() ? fmt::format("#{}", a) : morphisms_[a].name; };
    for (int a = 0; a < m; ++a)
        if (dom(a) < 0 || dom(a) >= n || cod(a) < 0 || cod(a) >= n)
            throw InputError(fmt::format("morphism {} has an unknown endpoint", mname(a)));
    if (static_cast<int>(identities_.size()) != n)
        throw InputError("one identity per object required");
    for (int c = 0; c < n; ++c) {
        const int i = identities_[c];
        if (i < 0 || i >= m || dom(i) != c || cod(i) != c)
            throw InputError(fmt::format("identity of object {} is not an endomorphism of it", objects_[c]));
    }
    if (static_cast<int>(compose_.size()) != m)
        throw InputError("composition table has the wrong size");
    for (int g = 0; g < m; ++g) {
        if (static_cast<int>(compose_[g].size()) != m)
            throw InputError("composition table has the wrong size");
        for (int f = 0; f < m; ++f) {
            const int h = compose_[g][f];
            if (dom(g) != cod(f)) {
                if (h != -1)
                    throw InputError(fmt::format("composition ({}, {}) defined for a non-composable pair", mname(g),
                                                 mname(f)));
                continue;
            }
            if (h < 0 || h >= m)
                throw InputError(fmt::format("composition ({}, {}) is missing", mname(g), mname(f)));
            if (dom(h) != dom(f) || cod(h) != cod(g))
                throw InputError(fmt::format("composition ({}, {}, {}) has the wrong endpoints", mname(g), mname(f),
                                             mname(h)));
        }
    }
    for (int a = 0; a < m; ++a) {
        if (compose_[identities_[cod(a)]][a] != a || compose_[a][identities_[dom(a)]] != a)
            throw InputError(fmt::format("identity law fails for {}", mname(a)));
    }
    for (int h = 0; h < m; ++h)
        for (int g = 0; g < m; ++g) {
            if (dom(h) != cod(g))
                continue;
            const int hg = compose_[h][g];
            for (int f = 0; f < m; ++f) {
                if (dom(g) != cod(f))
                    continue;
                if (compose_[hg][f] != compose_[h][compose_[g][f]])
                    throw InputError(
                        fmt::format("associativity fails for ({}, {}, {})", mname(h), mname(g), mname(f)));
            }
        }
}

FiniteCategory FiniteCategory::from_triples(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                                            const std::vector<std::array<int, 3>> &triples)
{
    const int m = static_cast<int>(morphisms.size());
    std::vector<std::vector<int>> table(m, std::vector<int>(m, -1));
    for (const auto &[g, f, h] : triples) {
        if (g < 0 || g >= m || f < 0 || f >= m)
            throw InputError(fmt::format("composition triple ({}, {}, {}) names an unknown morphism", g, f, h));
        if (table[g][f] != -1 && table[g][f] != h)
            throw InputError(fmt::format("composition ({}, {}) given twice with different values", g, f));
        table[g][f] = h;
    }
    // Identities are the endomorphisms acting trivially on both sides.
    std::vector<int> ids(objects.size(), -1);
    for (int a = 0; a < m; ++a) {
        const int c = morphisms[a].dom;
        if (c < 0 || c >= static_cast<int>(objects.size()) || morphisms[a].cod != c || ids[c] != -1)
            continue;
        bool unit = true;
        for (int b = 0; b < m && unit; ++b) {
            if (morphisms[b].cod == c && table[a][b] != b)
                unit = false;
            if (morphisms[b].dom == c && table[b][a] != b)
                unit = false;
        }
        if (unit)
            ids[c] = a;
    }
    for (size_t c = 0; c < objects.size(); ++c)
        if (ids[c] == -1)
            throw InputError(fmt::format("object {} has no identity morphism", objects[c]));
    return FiniteCategory(std::move(objects), std::move(morphisms), std::move(ids), std::move(table));
}

FiniteCategory FiniteCategory::point() { return FiniteCategory({"*"}, {{"id", 0, 0}}, {0}, {{0}}); }

FiniteCategory FiniteCategory::from_group(const groupring::FiniteGroup &g, const std::string &name)
{
    std::vector<Morphism> ms;
    for (int a = 0; a < g.order(); ++a)
        ms.push_back({a == g.identity() ? "id" : fmt::format("g{}", a), 0, 0});
    return FiniteCategory({name}, std::move(ms), {g.identity()}, g.table());
}

FiniteCategory FiniteCategory::poset(const std::vector<std::vector<bool>> &leq)
{
    const int n = static_cast<int>(leq.size());
    std::vector<std::string> objs;
    for (int c = 0; c < n; ++c)
        objs.push_back(fmt::format("o{}", c));
    std::vector<Morphism> ms;
    std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
    std::vector<int> ids(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (leq[a][b]) {
                index[a][b] = static_cast<int>(ms.size());
                ms.push_back({a == b ? fmt::format("id{}", a) : fmt::format("o{}<o{}", a, b), a, b});
            }
    for (int c = 0; c < n; ++c) {
        if (index[c][c] < 0)
            throw InputError("preorder must be reflexive");
        ids[c] = index[c][c];
    }
    const int m = static_cast<int>(ms.size());
    std::vector<std::vector<int>> table(m, std::vector<int>(m, -1));
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (ms[g].dom == ms[f].cod) {
                const int h = index[ms[f].dom][ms[g].cod];
                if (h < 0)
                    throw InputError("preorder must be transitive");
                table[g][f] = h;
            }
    return FiniteCategory(std::move(objs), std::move(ms), std::move(ids), std::move(table));
}

FiniteCategory FiniteCategory::paths(int objects, const std::vector<std::pair<int, int>> &arrows,
                                     size_t max_morphisms, std::vector<std::vector<int>> *morphism_paths)
{
    // A path is its arrow list in application order.
    std::vector<std::vector<int>> paths;
    std::vector<Morphism> ms;
    std::vector<std::string> objs;
    for (int c = 0; c < objects; ++c) {
        objs.push_back(fmt::format("o{}", c));
        paths.push_back({});
        ms.push_back({fmt::format("id{}", c), c, c});
    }
    for (size_t i = 0; i < paths.size(); ++i) {
        const int end = ms[i].cod;
        for (size_t a = 0; a < arrows.size(); ++a) {
            if (arrows[a].first != end)
                continue;
            if (arrows[a].second < 0 || arrows[a].second >= objects)
                throw InputError("arrow endpoint out of range");
            auto p = paths[i];
            p.push_back(static_cast<int>(a));
            if (paths.size() >= max_morphisms)
                throw CapExceeded(fmt::format("path category has more than {} morphisms (cycle?)", max_morphisms));
            std::string name;
            for (int x : p)
                name += (name.empty() ? "" : ".") + fmt::format("a{}", x);
            ms.push_back({name, ms[i].dom, arrows[a].second});
            paths.push_back(std::move(p));
        }
    }
    const int m = static_cast<int>(ms.size());
    std::map<std::pair<int, std::vector<int>>, int> lookup;
    for (int i = 0; i < m; ++i)
        lookup[{ms[i].dom, paths[i]}] = i;
    std::vector<std::vector<int>> table(m, std::vector<int>(m, -1));
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (ms[g].dom == ms[f].cod) {
                auto p = paths[f];
                p.insert(p.end(), paths[g].begin(), paths[g].end());
                table[g][f] = lookup.at({ms[f].dom, p});
            }
    std::vector<int> ids(objects);
    for (int c = 0; c < objects; ++c)
        ids[c] = c;
    if (morphism_paths)
        *morphism_paths = paths;
    return FiniteCategory(std::move(objs), std::move(ms), std::move(ids), std::move(table));
}

FiniteCategory FiniteCategory::idempotent()
{
    return FiniteCategory({"*"}, {{"id", 0, 0}, {"e", 0, 0}}, {0}, {{0, 1}, {1, 1}});
}

void FunctorToGroups::validate(const FiniteCategory &c) const
{
    if (static_cast<int>(groups.size()) != c.object_count() || static_cast<int>(maps.size()) != c.morphism_count())
        throw InputError("functor: one group per object and one map per morphism required");
    for (int m = 0; m < c.morphism_count(); ++m) {
        const auto &src = groups[c.dom(m)];
        const auto &dst = groups[c.cod(m)];
        if (!groupring::is_homomorphism(src, dst, maps[m]))
            throw InputError(fmt::format("functor: the map of {} is not a homomorphism", c.morphism(m).name));
        if (c.is_identity(m))
            for (int x = 0; x < src.order(); ++x)
                if (maps[m][x] != x)
                    throw InputError(fmt::format("functor: identity {} is not sent to the identity", c.morphism(m).name));
    }
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int f = 0; f < c.morphism_count(); ++f) {
            const int h = c.compose(g, f);
            if (h < 0)
                continue;
            for (int x = 0; x < groups[c.dom(f)].order(); ++x)
                if (maps[h][x] != maps[g][maps[f][x]])
                    throw InputError(fmt::format("functor: F({}∘{}) differs from F({})∘F({})", c.morphism(g).name,
                                                 c.morphism(f).name, c.morphism(g).name, c.morphism(f).name));
        }
}

void AbelianFunctor::validate(const FiniteCategory &c) const
{
    if (static_cast<int>(values.size()) != c.object_count() || static_cast<int>(maps.size()) != c.morphism_count())
        throw InputError("functor: one group per object and one map per morphism required");
    for (int m = 0; m < c.morphism_count(); ++m) {
        const auto &src = values[c.dom(m)];
        const auto &dst = values[c.cod(m)];
        const auto &M = maps[m];
        if (M.rows() != src.generators() || M.cols() != dst.generators())
            throw InputError(fmt::format("functor: matrix of {} has the wrong shape", c.morphism(m).name));
        if (!intlin::AbelianMap(src, dst, M).is_well_defined())
            throw InputError(fmt::format("functor: the map of {} is not well defined", c.morphism(m).name));
        if (c.is_identity(m))
            for (size_t r = 0; r < M.rows(); ++r) {
                IntVector d = M.row_vector(r);
                d[r] -= 1;
                if (!dst.is_zero(d))
                    throw InputError(
                        fmt::format("functor: identity {} is not sent to the identity", c.morphism(m).name));
            }
    }
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int f = 0; f < c.morphism_count(); ++f) {
            const int h = c.compose(g, f);
            if (h < 0)
                continue;
            const IntMatrix fg = maps[f] * maps[g];
            for (size_t r = 0; r < fg.rows(); ++r) {
                IntVector d = fg.row_vector(r);
                for (size_t k = 0; k < d.size(); ++k)
                    d[k] -= maps[h](r, k);
                if (!values[c.cod(h)].is_zero(d))
                    throw InputError(fmt::format("functor: F({}∘{}) differs from F({})∘F({})", c.morphism(g).name,
                                                 c.morphism(f).name, c.morphism(g).name, c.morphism(f).name));
            }
        }
}

AbelianCoordinates abelian_coordinates(const groupring::FiniteGroup &g)
{
    if (!g.is_abelian())
        throw InputError("abelian coordinates of a non-abelian group");
    AbelianCoordinates out;
    out.generators = g.generators();
    const size_t r = out.generators.size();
    out.coordinates.assign(g.order(), IntVector());
    std::vector<bool> seen(g.order(), false);
    std::vector<int> queue{g.identity()};
    seen[g.identity()] = true;
    out.coordinates[g.identity()] = IntVector(r);
    IntMatrix rel(0, r);
    for (size_t i = 0; i < queue.size(); ++i) {
        const int x = queue[i];
        for (size_t t = 0; t < r; ++t) {
            const int y = g.mul(x, out.generators[t]);
            IntVector v = out.coordinates[x];
            v[t] += 1;
            if (!seen[y]) {
                seen[y] = true;
                out.coordinates[y] = std::move(v);
                queue.push_back(y);
            } else {
                for (size_t k = 0; k < r; ++k)
                    v[k] -= out.coordinates[y][k];
                if (!intlin::is_zero(v))
                    rel.append_row(v);
            }
        }
    }
    out.group = intlin::AbelianGroup::from_relation_rows(r, rel);
    return out;
}

AbelianFunctor to_abelian(const FiniteCategory &c, const FunctorToGroups &f)
{
    f.validate(c);
    std::vector<AbelianCoordinates> coords;
    AbelianFunctor out;
    for (const auto &g : f.groups) {
        coords.push_back(abelian_coordinates(g));
        out.values.push_back(coords.back().group);
    }
    for (int m = 0; m < c.morphism_count(); ++m) {
        const auto &src = coords[c.dom(m)];
        const auto &dst = coords[c.cod(m)];
        IntMatrix M(0, dst.generators.size());
        for (int x : src.generators)
            M.append_row(dst.coordinates[f.act(m, x)]);
        out.maps.push_back(std::move(M));
    }
    return out;
}

FunctorToGroups constant_functor(const FiniteCategory &c, const groupring::FiniteGroup &g)
{
    FunctorToGroups f;
    f.groups.assign(c.object_count(), g);
    std::vector<int> id(g.order());
    for (int x = 0; x < g.order(); ++x)
        id[x] = x;
    f.maps.assign(c.morphism_count(), id);
    return f;
}

bool Subfunctor::contains(int c, int x) const
{
    return std::binary_search(subgroups[c].begin(), subgroups[c].end(), x);
}

void validate_subfunctor(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s)
{
    if (static_cast<int>(s.subgroups.size()) != c.object_count())
        throw InputError("subfunctor: one subgroup per object required");
    for (int o = 0; o < c.object_count(); ++o) {
        std::vector<bool> mask(f.groups[o].order(), false);
        for (int x : s.subgroups[o]) {
            if (x < 0 || x >= f.groups[o].order())
                throw InputError("subfunctor: element out of range");
            mask[x] = true;
        }
        if (!std::is_sorted(s.subgroups[o].begin(), s.subgroups[o].end()) || !f.groups[o].is_subgroup(mask))
            throw InputError(fmt::format("subfunctor: entry at {} is not a sorted subgroup", c.object_name(o)));
    }
    for (int m = 0; m < c.morphism_count(); ++m)
        for (int x : s.subgroups[c.dom(m)])
            if (!s.contains(c.cod(m), f.act(m, x)))
                throw InputError(fmt::format("subfunctor: not preserved by {}", c.morphism(m).name));
}

bool is_normal(const FunctorToGroups &f, const Subfunctor &s)
{
    for (size_t o = 0; o < f.groups.size(); ++o) {
        std::vector<bool> mask(f.groups[o].order(), false);
        for (int x : s.subgroups[o])
            mask[x] = true;
        if (!f.groups[o].is_normal_subgroup(mask))
            return false;
    }
    return true;
}

bool is_central(const FunctorToGroups &f, const Subfunctor &s)
{
    for (size_t o = 0; o < f.groups.size(); ++o) {
        const auto z = f.groups[o].center();
        for (int x : s.subgroups[o])
            if (!std::binary_search(z.begin(), z.end(), x))
                return false;
    }
    return true;
}

Subfunctor generated_subfunctor(const FiniteCategory &c, const FunctorToGroups &f,
                                const std::vector<std::vector<int>> &seeds, bool normal)
{
    const int n = c.object_count();
    if (static_cast<int>(seeds.size()) != n)
        throw InputError("subfunctor seeds: one list per object required");
    std::vector<std::vector<int>> gens = seeds;
    Subfunctor s;
    for (;;) {
        s.subgroups.assign(n, {});
        for (int o = 0; o < n; ++o) {
            const auto &G = f.groups[o];
            std::vector<int> g = gens[o];
            if (normal) {
                std::vector<int> conj;
                for (int x : g)
                    for (int y = 0; y < G.order(); ++y)
                        conj.push_back(G.mul(G.mul(G.inv(y), x), y));
                g = conj;
            }
            s.subgroups[o] = G.generated_subgroup(g);
        }
        bool grew = false;
        for (int m = 0; m < c.morphism_count(); ++m)
            for (int x : s.subgroups[c.dom(m)]) {
                const int y = f.act(m, x);
                if (!s.contains(c.cod(m), y)) {
                    gens[c.cod(m)].push_back(y);
                    grew = true;
                }
            }
        if (!grew)
            return s;
    }
}

QuotientFunctor quotient_functor(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s)
{
    validate_subfunctor(c, f, s);
    if (!is_normal(f, s))
        throw InputError("quotient by a subfunctor that is not normal");
    QuotientFunctor q;
    const int n = c.object_count();
    std::vector<std::vector<int>> reps(n);
    q.projection.assign(n, {});
    for (int o = 0; o < n; ++o) {
        const auto &G = f.groups[o];
        auto &proj = q.projection[o];
        proj.assign(G.order(), -1);
        for (int x = 0; x < G.order(); ++x) {
            if (proj[x] != -1)
                continue;
            const int idx = static_cast<int>(reps[o].size());
            reps[o].push_back(x);
            for (int h : s.subgroups[o])
                proj[G.mul(x, h)] = idx;
        }
        const int k = static_cast<int>(reps[o].size());
        std::vector<std::vector<int>> table(k, std::vector<int>(k));
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                table[a][b] = proj[G.mul(reps[o][a], reps[o][b])];
        q.functor.groups.emplace_back(std::move(table));
    }
    for (int m = 0; m < c.morphism_count(); ++m) {
        std::vector<int> map;
        for (int x : reps[c.dom(m)])
            map.push_back(q.projection[c.cod(m)][f.act(m, x)]);
        q.functor.maps.push_back(std::move(map));
    }
    q.functor.validate(c);
    return q;
}

RestrictedFunctor restrict_functor(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s)
{
    validate_subfunctor(c, f, s);
    RestrictedFunctor r;
    const int n = c.object_count();
    std::vector<std::vector<int>> local(n);
    for (int o = 0; o < n; ++o) {
        const auto &G = f.groups[o];
        const auto &H = s.subgroups[o];
        local[o].assign(G.order(), -1);
        for (size_t i = 0; i < H.size(); ++i)
            local[o][H[i]] = static_cast<int>(i);
        std::vector<std::vector<int>> table(H.size(), std::vector<int>(H.size()));
        for (size_t a = 0; a < H.size(); ++a)
            for (size_t b = 0; b < H.size(); ++b)
                table[a][b] = local[o][G.mul(H[a], H[b])];
        r.functor.groups.emplace_back(std::move(table));
        r.inclusion.push_back(H);
    }
    for (int m = 0; m < c.morphism_count(); ++m) {
        std::vector<int> map;
        for (int x : s.subgroups[c.dom(m)])
            map.push_back(local[c.cod(m)][f.act(m, x)]);
        r.functor.maps.push_back(std::move(map));
    }
    return r;
}

} // namespace blimwb::catcoh
