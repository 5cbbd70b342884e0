#include "blimwb/catcoh/nonabelian.h"

#include "blimwb/error.h"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

namespace blimwb::catcoh {

namespace {

/// Depth-first search over per-object choices with per-object checks.
void enumerate_families(int objects, const std::vector<int> &choices,
                        const std::function<bool(const Family &, int)> &consistent,
                        const std::function<void(const Family &)> &emit)
{
    Family x(objects, 0);
    std::function<void(int)> rec = [&](int o) {
        if (o == objects) {
            emit(x);
            return;
        }
        for (int v = 0; v < choices[o]; ++v) {
            x[o] = v;
            if (consistent(x, o))
                rec(o + 1);
        }
    };
    rec(0);
}

/// Morphisms whose endpoints are both among the first o+1 objects and one
/// of them is o.
std::vector<std::vector<int>> morphisms_closing_at(const FiniteCategory &c)
{
    std::vector<std::vector<int>> out(c.object_count());
    for (int m = 0; m < c.morphism_count(); ++m)
        if (!c.is_identity(m))
            out[std::max(c.dom(m), c.cod(m))].push_back(m);
    return out;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a)
    {
        while (parent[a] != a)
            a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

std::vector<Family> lim0_direct(const FiniteCategory &c, const FunctorToGroups &f)
{
    f.validate(c);
    const auto closing = morphisms_closing_at(c);
    std::vector<int> sizes;
    for (const auto &g : f.groups)
        sizes.push_back(g.order());
    std::vector<Family> out;
    enumerate_families(
        c.object_count(), sizes,
        [&](const Family &x, int o) {
            for (int m : closing[o])
                if (x[c.cod(m)] != f.act(m, x[c.dom(m)]))
                    return false;
            return true;
        },
        [&](const Family &x) { out.push_back(x); });
    return out;
}

bool is_cocycle(const FiniteCategory &c, const FunctorToGroups &f, const Cochain1 &a)
{
    if (static_cast<int>(a.size()) != c.morphism_count())
        return false;
    for (int m = 0; m < c.morphism_count(); ++m)
        if (a[m] < 0 || a[m] >= f.groups[c.cod(m)].order())
            return false;
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int h = 0; h < c.morphism_count(); ++h) {
            const int gh = c.compose(g, h);
            if (gh >= 0 && a[gh] != f.groups[c.cod(g)].mul(a[g], f.act(g, a[h])))
                return false;
        }
    return true;
}

std::vector<Cochain1> z1_nonabelian(const FiniteCategory &c, const FunctorToGroups &f, size_t cap)
{
    f.validate(c);
    const int m = c.morphism_count();
    // Triples (g, h, g∘h) of non-identities, checked once all three are set;
    // a composite whose factors come earlier is forced.
    std::vector<std::vector<std::array<int, 3>>> checks(m);
    std::vector<std::pair<int, int>> forced(m, {-1, -1});
    for (int g = 0; g < m; ++g)
        for (int h = 0; h < m; ++h) {
            const int gh = c.compose(g, h);
            if (gh < 0 || c.is_identity(g) || c.is_identity(h))
                continue;
            const int last = std::max({g, h, gh});
            checks[last].push_back({g, h, gh});
            if (gh == last && g < gh && h < gh && forced[gh].first < 0)
                forced[gh] = {g, h};
        }

    Cochain1 a(m, 0);
    std::vector<Cochain1> out;
    size_t nodes = 0;
    auto ok = [&](int k) {
        for (const auto &[g, h, gh] : checks[k])
            if (a[gh] != f.groups[c.cod(g)].mul(a[g], f.act(g, a[h])))
                return false;
        return true;
    };
    std::function<void(int)> rec = [&](int k) {
        if (++nodes > cap)
            throw CapExceeded(fmt::format("cocycle search exceeded {} nodes", cap));
        if (k == m) {
            out.push_back(a);
            return;
        }
        const auto &G = f.groups[c.cod(k)];
        if (c.is_identity(k)) {
            a[k] = G.identity();
            rec(k + 1);
            return;
        }
        if (forced[k].first >= 0) {
            const auto [g, h] = forced[k];
            a[k] = G.mul(a[g], f.act(g, a[h]));
            if (ok(k))
                rec(k + 1);
            return;
        }
        for (int v = 0; v < G.order(); ++v) {
            a[k] = v;
            if (ok(k))
                rec(k + 1);
        }
    };
    rec(0);

    Cochain1 base(m);
    for (int k = 0; k < m; ++k)
        base[k] = f.groups[c.cod(k)].identity();
    auto it = std::find(out.begin(), out.end(), base);
    if (it == out.end())
        throw InternalError("cocycle enumeration lost the basepoint");
    std::rotate(out.begin(), it, it + 1);
    return out;
}

Cochain1 act(const FiniteCategory &c, const FunctorToGroups &f, const Cochain1 &a, const Family &x)
{
    Cochain1 out(a.size());
    for (int m = 0; m < c.morphism_count(); ++m) {
        const auto &G = f.groups[c.cod(m)];
        out[m] = G.mul(G.mul(G.inv(x[c.cod(m)]), a[m]), f.act(m, x[c.dom(m)]));
    }
    return out;
}

int Lim1::orbit(const Cochain1 &a) const
{
    auto it = index.find(a);
    if (it == index.end())
        throw InputError("not a 1-cocycle");
    return orbit_of[it->second];
}

Lim1 lim1_nonabelian(const FiniteCategory &c, const FunctorToGroups &f, OrbitMethod method, size_t cap)
{
    Lim1 out;
    out.cocycles = z1_nonabelian(c, f, cap);
    const size_t z = out.cocycles.size();
    for (size_t i = 0; i < z; ++i)
        out.index[out.cocycles[i]] = static_cast<int>(i);
    UnionFind uf(z);
    const int n = c.object_count();
    Family one(n);
    for (int o = 0; o < n; ++o)
        one[o] = f.groups[o].identity();

    if (method == OrbitMethod::generators) {
        for (int o = 0; o < n; ++o)
            for (int g : f.groups[o].generators()) {
                Family x = one;
                x[o] = g;
                for (size_t i = 0; i < z; ++i)
                    uf.unite(static_cast<int>(i), out.index.at(act(c, f, out.cocycles[i], x)));
            }
    } else {
        std::vector<int> sizes;
        for (const auto &g : f.groups)
            sizes.push_back(g.order());
        std::vector<bool> done(z, false);
        for (size_t i = 0; i < z; ++i) {
            if (done[i])
                continue;
            enumerate_families(
                n, sizes, [](const Family &, int) { return true; },
                [&](const Family &x) {
                    const int j = out.index.at(act(c, f, out.cocycles[i], x));
                    uf.unite(static_cast<int>(i), j);
                    done[j] = true;
                });
        }
    }

    out.orbit_of.assign(z, -1);
    std::vector<int> orbit_of_root(z, -1);
    for (size_t i = 0; i < z; ++i) {
        const int r = uf.find(static_cast<int>(i));
        if (orbit_of_root[r] < 0) {
            orbit_of_root[r] = static_cast<int>(out.representatives.size());
            out.representatives.push_back(static_cast<int>(i));
        }
        out.orbit_of[i] = orbit_of_root[r];
    }
    return out;
}

CosetTable left_cosets(const FunctorToGroups &f, const Subfunctor &s)
{
    CosetTable t;
    for (size_t o = 0; o < f.groups.size(); ++o) {
        const auto &G = f.groups[o];
        std::vector<int> coset(G.order(), -1);
        std::vector<int> reps;
        for (int x = 0; x < G.order(); ++x) {
            if (coset[x] != -1)
                continue;
            const int id = static_cast<int>(reps.size());
            reps.push_back(x);
            for (int h : s.subgroups[o])
                coset[G.mul(x, h)] = id;
        }
        t.coset_of.push_back(std::move(coset));
        t.representatives.push_back(std::move(reps));
    }
    return t;
}

std::vector<Family> lim_quotient(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s,
                                 const CosetTable &cosets)
{
    validate_subfunctor(c, f, s);
    const auto closing = morphisms_closing_at(c);
    std::vector<int> sizes;
    for (const auto &r : cosets.representatives)
        sizes.push_back(static_cast<int>(r.size()));
    std::vector<Family> out;
    enumerate_families(
        c.object_count(), sizes,
        [&](const Family &x, int o) {
            for (int m : closing[o]) {
                const int image = f.act(m, cosets.representatives[c.dom(m)][x[c.dom(m)]]);
                if (cosets.coset_of[c.cod(m)][image] != x[c.cod(m)])
                    return false;
            }
            return true;
        },
        [&](const Family &x) { out.push_back(x); });
    return out;
}

Cochain1 connecting_cocycle(const FiniteCategory &c, const FunctorToGroups &f, const RestrictedFunctor &s,
                            const Family &lift)
{
    Cochain1 d(c.morphism_count());
    for (int m = 0; m < c.morphism_count(); ++m) {
        const auto &G = f.groups[c.cod(m)];
        const int v = G.mul(G.inv(lift[c.cod(m)]), f.act(m, lift[c.dom(m)]));
        const auto &H = s.inclusion[c.cod(m)];
        auto it = std::lower_bound(H.begin(), H.end(), v);
        if (it == H.end() || *it != v)
            throw InputError("family is not compatible modulo the subfunctor");
        d[m] = static_cast<int>(it - H.begin());
    }
    return d;
}

int connecting_delta(const FiniteCategory &c, const FunctorToGroups &f, const RestrictedFunctor &s,
                     const CosetTable &cosets, const Lim1 &lim1_s, const Family &x)
{
    Family lift(x.size());
    for (size_t o = 0; o < x.size(); ++o)
        lift[o] = cosets.representatives[o][x[o]];
    return lim1_s.orbit(connecting_cocycle(c, f, s, lift));
}

namespace {

template <class T> std::string describe(const std::set<T> &a, const std::set<T> &b)
{
    return fmt::format("{} vs {} elements", a.size(), b.size());
}

/// Pieces shared by both sequences; `cosets` describes F/S and `quotient`
/// (when present) the group-valued F/S.
struct SequenceData {
    RestrictedFunctor sub;
    CosetTable cosets;
    std::vector<Family> lim_s;   // in F coordinates
    std::vector<Family> lim_f;
    std::vector<Family> lim_fs;  // coset indices
    Lim1 lim1_s;
    Lim1 lim1_f;
};

Family project(const CosetTable &t, const Family &x)
{
    Family y(x.size());
    for (size_t o = 0; o < x.size(); ++o)
        y[o] = t.coset_of[o][x[o]];
    return y;
}

void check_common(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s, SequenceData &d,
                  ExactnessReport &rep, uint64_t seed, int alternative_lifts)
{
    const int n = c.object_count();
    // Lim S -> Lim F is injective and its image is the kernel of Lim F -> Lim F/S.
    std::set<Family> image_s(d.lim_s.begin(), d.lim_s.end());
    if (image_s.size() != d.lim_s.size())
        rep.violations.push_back("Lim S -> Lim F is not injective");
    std::set<Family> kernel_f;
    Family identity_cosets(n);
    for (int o = 0; o < n; ++o)
        identity_cosets[o] = d.cosets.coset_of[o][f.groups[o].identity()];
    for (const auto &x : d.lim_f) {
        if (project(d.cosets, x) == identity_cosets)
            kernel_f.insert(x);
    }
    if (kernel_f != image_s)
        rep.violations.push_back("exactness at Lim F: " + describe(kernel_f, image_s));

    // ker δ = image of Lim F in Lim F/S.
    std::set<Family> lim_fs(d.lim_fs.begin(), d.lim_fs.end());
    std::set<Family> image_f;
    for (const auto &x : d.lim_f) {
        const Family y = project(d.cosets, x);
        if (!lim_fs.count(y))
            rep.violations.push_back("Lim F -> Lim F/S leaves the limit");
        image_f.insert(y);
    }
    std::mt19937_64 rng(seed);
    std::set<Family> kernel_delta;
    std::set<int> image_delta;
    std::vector<int> delta(d.lim_fs.size());
    for (size_t i = 0; i < d.lim_fs.size(); ++i) {
        const auto &x = d.lim_fs[i];
        delta[i] = connecting_delta(c, f, d.sub, d.cosets, d.lim1_s, x);
        image_delta.insert(delta[i]);
        if (delta[i] == d.lim1_s.basepoint())
            kernel_delta.insert(x);
        for (int t = 0; t < alternative_lifts; ++t) {
            Family lift(n);
            for (int o = 0; o < n; ++o) {
                const auto &H = s.subgroups[o];
                std::uniform_int_distribution<size_t> pick(0, H.size() - 1);
                lift[o] = f.groups[o].mul(d.cosets.representatives[o][x[o]], H[pick(rng)]);
            }
            ++rep.lift_checks;
            if (d.lim1_s.orbit(connecting_cocycle(c, f, d.sub, lift)) != delta[i])
                rep.violations.push_back("δ depends on the chosen lift");
        }
    }
    if (kernel_delta != image_f)
        rep.violations.push_back("exactness at Lim F/S: " + describe(kernel_delta, image_f));

    // ker(Lim^1 S -> Lim^1 F) = image δ.
    std::set<int> kernel_incl;
    for (size_t k = 0; k < d.lim1_s.orbit_count(); ++k) {
        const auto &a = d.lim1_s.cocycles[d.lim1_s.representatives[k]];
        Cochain1 b(a.size());
        for (int m = 0; m < c.morphism_count(); ++m)
            b[m] = d.sub.inclusion[c.cod(m)][a[m]];
        if (d.lim1_f.orbit(b) == d.lim1_f.basepoint())
            kernel_incl.insert(static_cast<int>(k));
    }
    if (kernel_incl != image_delta)
        rep.violations.push_back("exactness at Lim^1 S: " + describe(kernel_incl, image_delta));

    // δ is additive for central S.
    rep.central = is_central(f, s);
    if (!rep.central)
        return;
    const size_t q = d.lim_fs.size();
    std::map<Family, size_t> pos;
    for (size_t i = 0; i < q; ++i)
        pos[d.lim_fs[i]] = i;
    for (size_t i = 0; i < q; ++i)
        for (size_t j = 0; j < q; ++j) {
            Family prod(n);
            for (int o = 0; o < n; ++o)
                prod[o] = d.cosets.coset_of[o][f.groups[o].mul(d.cosets.representatives[o][d.lim_fs[i][o]],
                                                               d.cosets.representatives[o][d.lim_fs[j][o]])];
            auto it = pos.find(prod);
            if (it == pos.end()) {
                rep.violations.push_back("Lim F/S is not closed under products");
                continue;
            }
            const auto &a1 = d.lim1_s.cocycles[d.lim1_s.representatives[delta[i]]];
            const auto &a2 = d.lim1_s.cocycles[d.lim1_s.representatives[delta[j]]];
            Cochain1 sum(a1.size());
            for (int m = 0; m < c.morphism_count(); ++m)
                sum[m] = d.sub.functor.groups[c.cod(m)].mul(a1[m], a2[m]);
            ++rep.additivity_checks;
            if (d.lim1_s.orbit(sum) != delta[it->second])
                rep.violations.push_back("δ is not additive on a central subfunctor");
        }
}

std::vector<Family> to_parent(const RestrictedFunctor &r, const std::vector<Family> &xs)
{
    std::vector<Family> out;
    for (const auto &x : xs) {
        Family y(x.size());
        for (size_t o = 0; o < x.size(); ++o)
            y[o] = r.inclusion[o][x[o]];
        out.push_back(std::move(y));
    }
    return out;
}

SequenceData common_data(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s, size_t cap)
{
    validate_subfunctor(c, f, s);
    SequenceData d;
    d.sub = restrict_functor(c, f, s);
    d.cosets = left_cosets(f, s);
    d.lim_s = to_parent(d.sub, lim0_direct(c, d.sub.functor));
    d.lim_f = lim0_direct(c, f);
    d.lim_fs = lim_quotient(c, f, s, d.cosets);
    d.lim1_s = lim1_nonabelian(c, d.sub.functor, OrbitMethod::generators, cap);
    d.lim1_f = lim1_nonabelian(c, f, OrbitMethod::generators, cap);
    return d;
}

} // namespace

ExactnessReport check_exact_seq1(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s,
                                 uint64_t seed, int alternative_lifts, size_t cap)
{
    auto d = common_data(c, f, s, cap);
    ExactnessReport rep;
    rep.terms = {{"Lim S", d.lim_s.size()},
                 {"Lim F", d.lim_f.size()},
                 {"Lim F/S", d.lim_fs.size()},
                 {"Lim1 S", d.lim1_s.orbit_count()},
                 {"Lim1 F", d.lim1_f.orbit_count()}};
    check_common(c, f, s, d, rep, seed, alternative_lifts);
    return rep;
}

ExactnessReport check_exact_seq2(const FiniteCategory &c, const FunctorToGroups &f, const Subfunctor &s,
                                 uint64_t seed, int alternative_lifts, size_t cap)
{
    auto d = common_data(c, f, s, cap);
    const auto q = quotient_functor(c, f, s);
    const auto lim_q = lim0_direct(c, q.functor);
    const auto lim1_q = lim1_nonabelian(c, q.functor, OrbitMethod::generators, cap);
    ExactnessReport rep;
    rep.terms = {{"Lim F'", d.lim_s.size()},        {"Lim F", d.lim_f.size()},
                 {"Lim F''", lim_q.size()},         {"Lim1 F'", d.lim1_s.orbit_count()},
                 {"Lim1 F", d.lim1_f.orbit_count()}, {"Lim1 F''", lim1_q.orbit_count()}};

    // Lim F'' as groups agrees with Lim F/F' as coset families.
    std::set<Family> from_groups;
    for (const auto &x : lim_q) {
        Family cos(x.size());
        for (size_t o = 0; o < x.size(); ++o) {
            const auto &proj = q.projection[o];
            const int rep_elem = static_cast<int>(std::find(proj.begin(), proj.end(), x[o]) - proj.begin());
            cos[o] = d.cosets.coset_of[o][rep_elem];
        }
        from_groups.insert(cos);
    }
    if (from_groups != std::set<Family>(d.lim_fs.begin(), d.lim_fs.end()))
        rep.violations.push_back("Lim F'' differs from Lim F/F'");

    check_common(c, f, s, d, rep, seed, alternative_lifts);

    // ker(Lim^1 F -> Lim^1 F'') = image(Lim^1 F' -> Lim^1 F).
    std::set<int> image_incl;
    for (size_t k = 0; k < d.lim1_s.orbit_count(); ++k) {
        const auto &a = d.lim1_s.cocycles[d.lim1_s.representatives[k]];
        Cochain1 b(a.size());
        for (int m = 0; m < c.morphism_count(); ++m)
            b[m] = d.sub.inclusion[c.cod(m)][a[m]];
        image_incl.insert(d.lim1_f.orbit(b));
    }
    std::set<int> kernel_proj;
    for (size_t k = 0; k < d.lim1_f.orbit_count(); ++k) {
        const auto &a = d.lim1_f.cocycles[d.lim1_f.representatives[k]];
        Cochain1 b(a.size());
        for (int m = 0; m < c.morphism_count(); ++m)
            b[m] = q.projection[c.cod(m)][a[m]];
        if (lim1_q.orbit(b) == lim1_q.basepoint())
            kernel_proj.insert(static_cast<int>(k));
    }
    if (kernel_proj != image_incl)
        rep.violations.push_back("exactness at Lim^1 F: " + describe(kernel_proj, image_incl));
    return rep;
}

} // namespace blimwb::catcoh
