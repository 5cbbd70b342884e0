#include "blimwb/catcoh/category.h"
#include "blimwb/catcoh/cochains.h"
#include "blimwb/catcoh/nonabelian.h"
#include "blimwb/catcoh/random.h"
#include "blimwb/error.h"
#include "blimwb/intlin/lattice.h"
#include "bar_oracle.h"

#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <set>

using namespace blimwb;
using namespace blimwb::catcoh;
using groupring::FiniteGroup;
using intlin::AbelianGroup;
using intlin::FgAbelian;
using intlin::IntMatrix;
using intlin::Lattice;

namespace {

bool all_abelian(const FunctorToGroups &f)
{
    for (const auto &g : f.groups)
        if (!g.is_abelian())
            return false;
    return true;
}

AbelianFunctor trivial_integers(const FiniteCategory &c)
{
    AbelianFunctor f;
    for (int o = 0; o < c.object_count(); ++o)
        f.values.push_back(AbelianGroup::free(1));
    for (int m = 0; m < c.morphism_count(); ++m)
        f.maps.push_back(IntMatrix::identity(1));
    return f;
}

/// Every cochain satisfying the cocycle identity, by exhaustive search.
std::set<Cochain1> brute_force_z1(const FiniteCategory &c, const FunctorToGroups &f)
{
    std::set<Cochain1> out;
    Cochain1 a(c.morphism_count());
    std::function<void(int)> rec = [&](int k) {
        if (k == c.morphism_count()) {
            if (is_cocycle(c, f, a))
                out.insert(a);
            return;
        }
        for (int v = 0; v < f.groups[c.cod(k)].order(); ++v) {
            a[k] = v;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

double search_space(const FiniteCategory &c, const FunctorToGroups &f)
{
    double s = 1;
    for (int m = 0; m < c.morphism_count(); ++m)
        s *= f.groups[c.cod(m)].order();
    return s;
}

/// Partition of the cocycles into orbits as a set of sets.
std::set<std::set<int>> partition(const Lim1 &l)
{
    std::map<int, std::set<int>> by;
    for (size_t i = 0; i < l.cocycles.size(); ++i)
        by[l.orbit_of[i]].insert(static_cast<int>(i));
    std::set<std::set<int>> out;
    for (auto &[k, v] : by)
        out.insert(v);
    return out;
}

FiniteCategory arrow_category() { return FiniteCategory::poset({{true, true}, {false, true}}); }

/// a -> c <- b with Z in every place and the given multipliers.
std::pair<FiniteCategory, AbelianFunctor> cospan(long p, long q)
{
    FiniteCategory c = FiniteCategory::poset({{true, false, true}, {false, true, true}, {false, false, true}});
    AbelianFunctor f = trivial_integers(c);
    for (int m = 0; m < c.morphism_count(); ++m)
        if (c.dom(m) != c.cod(m))
            f.maps[m] = IntMatrix::from_ints({{c.dom(m) == 0 ? p : q}});
    return {c, f};
}

} // namespace

TEST_CASE("categories validate their laws")
{
    CHECK_NOTHROW(FiniteCategory::point());
    CHECK(FiniteCategory::from_group(FiniteGroup::symmetric(3)).morphism_count() == 6);
    CHECK(FiniteCategory::idempotent().compose(1, 1) == 1);
    const auto arrow = arrow_category();
    CHECK(arrow.morphism_count() == 3);
    CHECK_THROWS_AS(FiniteCategory({"*"}, {{"id", 0, 0}, {"a", 0, 0}, {"b", 0, 0}}, {0},
                                   {{0, 1, 2}, {1, 1, 0}, {2, 2, 2}}),
                    InputError);
    CHECK_THROWS_AS(FiniteCategory::poset({{true, true}, {false, false}}), InputError);
    std::vector<std::vector<int>> paths;
    const auto quiver = FiniteCategory::paths(3, {{0, 1}, {1, 2}, {0, 2}}, 64, &paths);
    CHECK(quiver.morphism_count() == 3 + 3 + 1);
}

TEST_CASE("functor laws are checked")
{
    const auto c = FiniteCategory::from_group(FiniteGroup::cyclic(2));
    FunctorToGroups f{{FiniteGroup::cyclic(3)}, {}};
    for (int g = 0; g < 2; ++g)
        f.maps.push_back(g == 0 ? std::vector<int>{0, 1, 2} : std::vector<int>{0, 2, 1});
    CHECK_NOTHROW(f.validate(c));
    f.maps[1] = {0, 1, 1};
    CHECK_THROWS_AS(f.validate(c), InputError);
}

TEST_CASE("nerve sizes")
{
    const auto bc2 = FiniteCategory::from_group(FiniteGroup::cyclic(2));
    for (int n = 1; n <= 6; ++n)
        CHECK(nerve_chains(bc2, n).size() == (size_t{1} << n));
    // Chains in the arrow category are non-decreasing sequences in {0 < 1}.
    const auto arrow = arrow_category();
    for (int n = 1; n <= 6; ++n)
        CHECK(nerve_chains(arrow, n).size() == static_cast<size_t>(n + 2));
    CHECK_THROWS_AS(nerve_chains(FiniteCategory::from_group(FiniteGroup::cyclic(8)), 7, 1000), CapExceeded);
}

TEST_CASE("trivial integer coefficients on BG agree with the bar complex")
{
    for (const auto &g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::abelian({2, 2}),
                          FiniteGroup::symmetric(3)}) {
        const auto c = FiniteCategory::from_group(g);
        const auto f = trivial_integers(c);
        const int top = g.order() <= 3 ? 4 : 3;
        const auto cx = cochain_complex(c, f, top);
        CHECK(is_complex(cx));
        for (int n = 0; n <= top; ++n)
            CHECK(cohomology(cx, n) == testsupport::bar_cohomology(g, n));
    }
    const auto bc2 = FiniteCategory::from_group(FiniteGroup::cyclic(2));
    CHECK(lim_n(bc2, trivial_integers(bc2), 0) == FgAbelian::free(1));
    CHECK(lim_n(bc2, trivial_integers(bc2), 1).is_trivial());
    CHECK(lim_n(bc2, trivial_integers(bc2), 2) == FgAbelian::from_cyclic_ints({2}));
}

TEST_CASE("cospan limits")
{
    for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 1}, {2, 4}, {6, 4}, {3, 5}, {0, 3}, {0, 0}}) {
        auto [c, f] = cospan(p, q);
        const long g = std::gcd(p, q);
        CHECK(lim_n(c, f, 1) == FgAbelian::from_cyclic_ints({g}));
        // Lim^0 = {(x, y, z) : z = p x = q y}: rank 1 unless p = q = 0.
        CHECK(lim_n(c, f, 0) == FgAbelian::free(p == 0 && q == 0 ? 2 : 1));
        CHECK(lim_n(c, f, 2).is_trivial());
    }
}

TEST_CASE("posets with a least element have no higher limits")
{
    std::mt19937_64 rng(7);
    int tested = 0;
    for (int t = 0; t < 200 && tested < 15; ++t) {
        auto inst = random_instance(InstanceKind::poset, rng);
        const auto &c = inst.category;
        bool least = true;
        for (int o = 0; o < c.object_count(); ++o) {
            bool found = false;
            for (int m = 0; m < c.morphism_count(); ++m)
                found = found || (c.dom(m) == 0 && c.cod(m) == o);
            least = least && found;
        }
        if (!least || !all_abelian(inst.functor))
            continue;
        ++tested;
        const auto f = to_abelian(c, inst.functor);
        const auto cx = cochain_complex(c, f, 2);
        CHECK(cohomology(cx, 0).order() == inst.functor.groups[0].order());
        CHECK(cohomology(cx, 1).is_trivial());
        CHECK(cohomology(cx, 2).is_trivial());
    }
    CHECK(tested >= 10);
}

TEST_CASE("discrete categories have no higher limits")
{
    const auto c = FiniteCategory::poset({{true, false, false}, {false, true, false}, {false, false, true}});
    AbelianFunctor f;
    f.values = {AbelianGroup::free(2), AbelianGroup::cyclic({4}), AbelianGroup::cyclic({2, 6})};
    for (int o = 0; o < 3; ++o)
        f.maps.push_back(IntMatrix::identity(f.values[o].generators()));
    CHECK(lim_n(c, f, 0) == FgAbelian::from_cyclic_ints({0, 0, 4, 2, 6}));
    for (int n = 1; n <= 3; ++n)
        CHECK(lim_n(c, f, n).is_trivial());
}

TEST_CASE("random abelian instances: complex, Lim^0 and orbit counts")
{
    std::mt19937_64 rng(11);
    int tested = 0;
    for (int t = 0; t < 400 && tested < 25; ++t) {
        auto inst = random_instance(rng);
        if (!all_abelian(inst.functor))
            continue;
        ++tested;
        const auto &c = inst.category;
        INFO(inst.kind);
        const auto f = to_abelian(c, inst.functor);
        const auto cx = cochain_complex(c, f, 2);
        CHECK(is_complex(cx));
        const auto h0 = cohomology(cx, 0);
        CHECK(h0 == lim0_direct(c, f));
        CHECK(h0.order() == lim0_direct(c, inst.functor).size());
        const auto l1 = lim1_nonabelian(c, inst.functor);
        CHECK(cohomology(cx, 1).order() == l1.orbit_count());
        CHECK(cocycles(cx, 1).order() == l1.cocycles.size());
    }
    CHECK(tested >= 20);
}

TEST_CASE("cocycle search matches exhaustive search")
{
    std::mt19937_64 rng(5);
    int tested = 0;
    for (int t = 0; t < 400 && tested < 20; ++t) {
        auto inst = random_instance(rng);
        if (search_space(inst.category, inst.functor) > 2e5)
            continue;
        ++tested;
        INFO(inst.kind);
        const auto z = z1_nonabelian(inst.category, inst.functor);
        CHECK(std::set<Cochain1>(z.begin(), z.end()) == brute_force_z1(inst.category, inst.functor));
        CHECK(std::set<Cochain1>(z.begin(), z.end()).size() == z.size());
        for (int m = 0; m < inst.category.morphism_count(); ++m)
            CHECK(z[0][m] == inst.functor.groups[inst.category.cod(m)].identity());
    }
    CHECK(tested >= 15);
}

TEST_CASE("Z^1 of BG with trivial action counts homomorphisms")
{
    for (const auto &gname : {"C2", "C3", "C4", "C2xC2", "S3"})
        for (const auto &aname : {"C2", "C3", "S3", "Q8"}) {
            const auto find = [](const std::string &n) {
                for (const auto &e : small_groups())
                    if (e.name == n)
                        return e.group;
                throw std::runtime_error(n);
            };
            const FiniteGroup g = find(gname), a = find(aname);
            const auto c = FiniteCategory::from_group(g);
            FunctorToGroups f{{a}, std::vector<std::vector<int>>(g.order())};
            for (auto &m : f.maps) {
                m.resize(a.order());
                std::iota(m.begin(), m.end(), 0);
            }
            // Homomorphisms counted over all maps G -> A.
            size_t homs = 0;
            std::vector<int> map(g.order());
            std::function<void(int)> rec = [&](int k) {
                if (k == g.order()) {
                    homs += groupring::is_homomorphism(g, a, map);
                    return;
                }
                for (int v = 0; v < a.order(); ++v) {
                    map[k] = v;
                    rec(k + 1);
                }
            };
            if (search_space(c, f) <= 1e6)
                rec(0);
            else
                homs = all_homs(g, a).size();
            INFO(gname, " ", aname);
            CHECK(z1_nonabelian(c, f).size() == homs);
            CHECK(all_homs(g, a).size() == homs);
            // Orbits are conjugacy classes of homomorphisms.
            const auto l1 = lim1_nonabelian(c, f);
            CHECK(partition(l1) == partition(lim1_nonabelian(c, f, OrbitMethod::full)));
        }
}

TEST_CASE("cocycle search respects its cap")
{
    const auto g = FiniteGroup::cyclic(8);
    const auto c = FiniteCategory::from_group(FiniteGroup::abelian({2, 2, 2}));
    const auto f = constant_functor(c, g);
    CHECK_THROWS_AS(z1_nonabelian(c, f, 10), CapExceeded);
}

TEST_CASE("generator orbits equal full orbits")
{
    std::mt19937_64 rng(3);
    int tested = 0;
    for (int t = 0; t < 300 && tested < 25; ++t) {
        auto inst = random_instance(rng);
        const auto l = lim1_nonabelian(inst.category, inst.functor);
        double product = 1;
        for (const auto &g : inst.functor.groups)
            product *= g.order();
        if (product * l.cocycles.size() > 2e6)
            continue;
        ++tested;
        INFO(inst.kind);
        CHECK(partition(l) == partition(lim1_nonabelian(inst.category, inst.functor, OrbitMethod::full)));
        CHECK(l.orbit_of[l.basepoint()] == 0);
    }
    CHECK(tested >= 20);
}

TEST_CASE("first exact sequence on random subfunctors")
{
    std::mt19937_64 rng(17);
    int tested = 0, central = 0;
    for (int t = 0; t < 400 && (tested < 20 || central < 4); ++t) {
        auto inst = random_instance(rng);
        const auto kind = (t % 3 == 0) ? SubfunctorKind::central : SubfunctorKind::any;
        auto s = random_subfunctor(inst.category, inst.functor, kind, rng);
        if (!s)
            continue;
        const auto rep = check_exact_seq1(inst.category, inst.functor, *s, t, 4);
        ++tested;
        INFO(inst.kind);
        for (const auto &v : rep.violations)
            INFO(v);
        CHECK(rep.exact());
        CHECK(rep.lift_checks > 0);
        if (rep.central) {
            ++central;
            CHECK(rep.additivity_checks > 0);
        }
    }
    CHECK(tested >= 10);
    CHECK(central >= 3);
}

TEST_CASE("second exact sequence on random normal subfunctors")
{
    std::mt19937_64 rng(23);
    int tested = 0;
    for (int t = 0; t < 400 && tested < 15; ++t) {
        auto inst = random_instance(rng);
        auto s = random_subfunctor(inst.category, inst.functor, SubfunctorKind::normal, rng);
        if (!s)
            continue;
        ++tested;
        const auto rep = check_exact_seq2(inst.category, inst.functor, *s, t, 4);
        INFO(inst.kind);
        CHECK(rep.exact());
        CHECK(rep.terms.size() == 6);
    }
    CHECK(tested >= 10);
}

TEST_CASE("D4 with a C2 action and its centre")
{
    const auto d4 = FiniteGroup::dihedral(4);
    const auto c2 = FiniteGroup::cyclic(2);
    const auto c = FiniteCategory::from_group(c2);
    // Conjugation by a reflection.
    const auto centre = d4.center();
    int chosen = -1;
    for (int y = 0; y < d4.order() && chosen < 0; ++y)
        if (d4.mul(y, y) == d4.identity() && std::find(centre.begin(), centre.end(), y) == centre.end())
            chosen = y;
    REQUIRE(chosen >= 0);
    FunctorToGroups f{{d4}, {}};
    for (int g = 0; g < 2; ++g) {
        std::vector<int> m(d4.order());
        for (int x = 0; x < d4.order(); ++x)
            m[x] = g == c2.identity() ? x : d4.mul(d4.mul(chosen, x), chosen);
        f.maps.push_back(m);
    }
    REQUIRE_NOTHROW(f.validate(c));
    const auto z = center_subfunctor(c, f);
    REQUIRE(z.has_value());
    CHECK(is_central(f, *z));
    const auto r1 = check_exact_seq1(c, f, *z, 1, 10);
    CHECK(r1.exact());
    CHECK(r1.central);
    CHECK(r1.additivity_checks > 0);
    CHECK(check_exact_seq2(c, f, *z, 1, 10).exact());
    // The fixed points of conjugation by a reflection in D4 form a Klein group.
    CHECK(lim0_direct(c, f).size() == 4);
}

TEST_CASE("connecting map rejects incompatible lifts")
{
    const auto c = FiniteCategory::from_group(FiniteGroup::cyclic(2));
    const auto s3 = FiniteGroup::symmetric(3);
    auto f = constant_functor(c, s3);
    Subfunctor trivial{{{s3.identity()}}};
    const auto r = restrict_functor(c, f, trivial);
    // The constant functor satisfies every family, so only the basepoint class arises.
    const auto lim1 = lim1_nonabelian(c, r.functor);
    CHECK(lim1.orbit_count() == 1);
    const auto cos = left_cosets(f, trivial);
    for (const auto &x : lim_quotient(c, f, trivial, cos))
        CHECK(connecting_delta(c, f, r, cos, lim1, x) == lim1.basepoint());
}
