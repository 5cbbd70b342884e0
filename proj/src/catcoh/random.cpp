#include "blimwb/catcoh/random.h"

#include "blimwb/error.h"

#include <algorithm>
#include <deque>
#include <functional>

namespace blimwb::catcoh {

using groupring::FiniteGroup;

namespace {

template <class T> const T &pick(const std::vector<T> &v, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<size_t> d(0, v.size() - 1);
    return v[d(rng)];
}

int uniform(int lo, int hi, std::mt19937_64 &rng) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(double p, std::mt19937_64 &rng) { return std::bernoulli_distribution(p)(rng); }

const FiniteGroup &random_group(std::mt19937_64 &rng)
{
    const auto &lib = small_groups();
    return lib[uniform(1, static_cast<int>(lib.size()) - 1, rng)].group;
}

std::vector<int> compose_maps(const std::vector<int> &outer, const std::vector<int> &inner)
{
    std::vector<int> out(inner.size());
    for (size_t x = 0; x < inner.size(); ++x)
        out[x] = outer[inner[x]];
    return out;
}

std::vector<int> identity_map(int n)
{
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = i;
    return out;
}

RandomInstance random_poset(std::mt19937_64 &rng)
{
    const int n = uniform(2, 4, rng);
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) {
        leq[a][a] = true;
        for (int b = a + 1; b < n; ++b)
            leq[a][b] = coin(0.5, rng);
    }
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (leq[a][k] && leq[k][b])
                    leq[a][b] = true;
    std::vector<int> height(n, 0);
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < b; ++a)
            if (leq[a][b])
                height[b] = std::max(height[b], height[a] + 1);

    RandomInstance inst{"poset", FiniteCategory::poset(leq), {}};
    const FiniteGroup &A = random_group(rng);
    const auto phi = pick(all_homs(A, A), rng);
    std::vector<bool> trivial(n, false);
    if (coin(0.3, rng)) {
        const int u = uniform(0, n - 1, rng);
        for (int c = 0; c < n; ++c)
            trivial[c] = leq[u][c];
    }
    for (int c = 0; c < n; ++c)
        inst.functor.groups.push_back(trivial[c] ? FiniteGroup::trivial() : A);
    const auto &C = inst.category;
    for (int m = 0; m < C.morphism_count(); ++m) {
        const int a = C.dom(m), b = C.cod(m);
        std::vector<int> map;
        if (trivial[b]) {
            map.assign(inst.functor.groups[a].order(), FiniteGroup::trivial().identity());
        } else {
            map = identity_map(A.order());
            for (int k = 0; k < height[b] - height[a]; ++k)
                map = compose_maps(phi, map);
        }
        inst.functor.maps.push_back(std::move(map));
    }
    return inst;
}

RandomInstance random_paths(std::mt19937_64 &rng)
{
    const int n = uniform(2, 4, rng);
    const int count = uniform(1, 5, rng);
    std::vector<std::pair<int, int>> arrows;
    for (int i = 0; i < count; ++i) {
        const int s = uniform(0, n - 2, rng);
        arrows.emplace_back(s, uniform(s + 1, n - 1, rng));
    }
    std::vector<std::vector<int>> paths;
    RandomInstance inst{"paths", FiniteCategory::paths(n, arrows, 64, &paths), {}};
    for (int c = 0; c < n; ++c)
        inst.functor.groups.push_back(random_group(rng));
    std::vector<std::vector<int>> arrow_maps;
    for (const auto &[s, t] : arrows)
        arrow_maps.push_back(pick(all_homs(inst.functor.groups[s], inst.functor.groups[t]), rng));
    const auto &C = inst.category;
    for (int m = 0; m < C.morphism_count(); ++m) {
        std::vector<int> map = identity_map(inst.functor.groups[C.dom(m)].order());
        for (int a : paths[m])
            map = compose_maps(arrow_maps[a], map);
        inst.functor.maps.push_back(std::move(map));
    }
    return inst;
}

RandomInstance random_group_action(std::mt19937_64 &rng)
{
    static const std::vector<FiniteGroup> acting = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3),
                                                    FiniteGroup::cyclic(4), FiniteGroup::abelian({2, 2}),
                                                    FiniteGroup::symmetric(3)};
    const FiniteGroup &G = pick(acting, rng);
    const FiniteGroup &A = random_group(rng);
    std::vector<std::vector<int>> autos;
    for (auto &h : all_homs(A, A)) {
        auto sorted = h;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end())
            autos.push_back(std::move(h));
    }
    std::sort(autos.begin(), autos.end());
    const int k = static_cast<int>(autos.size());
    std::vector<std::vector<int>> table(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const auto prod = compose_maps(autos[i], autos[j]);
            table[i][j] = static_cast<int>(std::lower_bound(autos.begin(), autos.end(), prod) - autos.begin());
        }
    const FiniteGroup aut(std::move(table));
    const auto rho = pick(all_homs(G, aut), rng);
    RandomInstance inst{"group", FiniteCategory::from_group(G), {}};
    inst.functor.groups.push_back(A);
    for (int g = 0; g < G.order(); ++g)
        inst.functor.maps.push_back(autos[rho[g]]);
    return inst;
}

RandomInstance random_idempotent(std::mt19937_64 &rng)
{
    const FiniteGroup &A = random_group(rng);
    std::vector<std::vector<int>> idem;
    for (auto &h : all_homs(A, A))
        if (compose_maps(h, h) == h)
            idem.push_back(std::move(h));
    RandomInstance inst{"idempotent", FiniteCategory::idempotent(), {}};
    inst.functor.groups.push_back(A);
    inst.functor.maps = {identity_map(A.order()), pick(idem, rng)};
    return inst;
}

} // namespace

const std::vector<LibraryGroup> &small_groups()
{
    static const std::vector<LibraryGroup> lib = {
        {"1", FiniteGroup::trivial()},
        {"C2", FiniteGroup::cyclic(2)},
        {"C3", FiniteGroup::cyclic(3)},
        {"C4", FiniteGroup::cyclic(4)},
        {"C2xC2", FiniteGroup::abelian({2, 2})},
        {"C6", FiniteGroup::cyclic(6)},
        {"S3", FiniteGroup::symmetric(3)},
        {"C8", FiniteGroup::cyclic(8)},
        {"C4xC2", FiniteGroup::abelian({4, 2})},
        {"C2xC2xC2", FiniteGroup::abelian({2, 2, 2})},
        {"D4", FiniteGroup::dihedral(4)},
        {"Q8", FiniteGroup::quaternion()},
    };
    return lib;
}

std::vector<std::vector<int>> all_homs(const FiniteGroup &a, const FiniteGroup &b)
{
    const auto gens = a.generators();
    std::vector<std::vector<int>> out;
    std::vector<int> images(gens.size());
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i < gens.size()) {
            for (int y = 0; y < b.order(); ++y) {
                images[i] = y;
                rec(i + 1);
            }
            return;
        }
        std::vector<int> map(a.order(), -1);
        map[a.identity()] = b.identity();
        std::deque<int> queue{a.identity()};
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop_front();
            for (size_t k = 0; k < gens.size(); ++k) {
                const int y = a.mul(x, gens[k]);
                const int v = b.mul(map[x], images[k]);
                if (map[y] < 0) {
                    map[y] = v;
                    queue.push_back(y);
                } else if (map[y] != v) {
                    return;
                }
            }
        }
        if (groupring::is_homomorphism(a, b, map))
            out.push_back(std::move(map));
    };
    rec(0);
    return out;
}

RandomInstance random_instance(InstanceKind kind, std::mt19937_64 &rng)
{
    switch (kind) {
    case InstanceKind::point: {
        const FiniteGroup &A = random_group(rng);
        return {"point", FiniteCategory::point(), {{A}, {identity_map(A.order())}}};
    }
    case InstanceKind::poset:
        return random_poset(rng);
    case InstanceKind::paths:
        return random_paths(rng);
    case InstanceKind::group:
        return random_group_action(rng);
    case InstanceKind::idempotent:
        return random_idempotent(rng);
    case InstanceKind::constant: {
        static const std::vector<InstanceKind> shapes = {InstanceKind::poset, InstanceKind::paths,
                                                         InstanceKind::group, InstanceKind::idempotent};
        auto inst = random_instance(pick(shapes, rng), rng);
        inst.kind = "constant-" + inst.kind;
        inst.functor = constant_functor(inst.category, random_group(rng));
        return inst;
    }
    }
    throw InternalError("unknown instance kind");
}

RandomInstance random_instance(std::mt19937_64 &rng)
{
    static const std::vector<InstanceKind> kinds = {InstanceKind::point,      InstanceKind::poset,
                                                    InstanceKind::paths,      InstanceKind::group,
                                                    InstanceKind::idempotent, InstanceKind::constant};
    return random_instance(pick(kinds, rng), rng);
}

std::optional<Subfunctor> random_subfunctor(const FiniteCategory &c, const FunctorToGroups &f, SubfunctorKind kind,
                                            std::mt19937_64 &rng, int attempts)
{
    const int n = c.object_count();
    for (int t = 0; t < attempts; ++t) {
        std::vector<std::vector<int>> seeds(n);
        bool any = false;
        for (int o = 0; o < n; ++o) {
            const auto &G = f.groups[o];
            const std::vector<int> pool = kind == SubfunctorKind::central ? G.center() : identity_map(G.order());
            if (pool.size() > 1 && coin(0.5, rng)) {
                seeds[o].push_back(pick(pool, rng));
                any = any || seeds[o].back() != G.identity();
            }
        }
        if (!any)
            continue;
        auto s = generated_subfunctor(c, f, seeds, kind != SubfunctorKind::any);
        if (kind != SubfunctorKind::central || is_central(f, s))
            return s;
    }
    return std::nullopt;
}

std::optional<Subfunctor> center_subfunctor(const FiniteCategory &c, const FunctorToGroups &f)
{
    Subfunctor s;
    for (const auto &g : f.groups)
        s.subgroups.push_back(g.center());
    for (int m = 0; m < c.morphism_count(); ++m)
        for (int x : s.subgroups[c.dom(m)])
            if (!s.contains(c.cod(m), f.act(m, x)))
                return std::nullopt;
    return s;
}

} // namespace blimwb::catcoh
