#include "blimwb/error.h"
#include "blimwb/intlin/abelian.h"

#include <doctest.h>

#include <random>

using namespace blimwb::intlin;

namespace {

IntMatrix random_matrix(std::mt19937_64 &rng, size_t rows, size_t cols, long bound)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    IntMatrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c)
            m(r, c) = d(rng);
    return m;
}

// Random unimodular matrix as a product of elementary operations.
IntMatrix random_unimodular(std::mt19937_64 &rng, size_t n)
{
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<size_t> pick(0, n - 1);
    std::uniform_int_distribution<long> f(-3, 3);
    for (int i = 0; i < 12; ++i) {
        size_t a = pick(rng), b = pick(rng);
        if (a == b)
            u.swap_rows(a, (a + 1) % n);
        else
            u.add_row_multiple(a, b, f(rng));
    }
    return u;
}

// Rational solve of c * m = v for square nonsingular m; integrality decides
// membership independently of the Hermite machinery.
bool rational_member(const IntMatrix &m, const IntVector &v)
{
    const size_t n = m.rows();
    // transpose system: m^T c^T = v^T
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            a[i][j] = m(j, i);
        a[i][n] = v[i];
    }
    for (size_t col = 0; col < n; ++col) {
        size_t p = col;
        while (a[p][col] == 0)
            ++p;
        std::swap(a[p], a[col]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0)
                continue;
            mpq_class f = a[r][col] / a[col][col];
            for (size_t c = col; c <= n; ++c)
                a[r][c] -= f * a[col][c];
        }
    }
    for (size_t i = 0; i < n; ++i) {
        mpq_class x = a[i][n] / a[i][i];
        if (x.get_den() != 1)
            return false;
    }
    return true;
}

FgAbelian fg(const std::vector<long> &orders) { return FgAbelian::from_cyclic_ints(orders); }

long binom(long n, long k)
{
    long r = 1;
    for (long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST_CASE("hermite normal form examples")
{
    auto h = hermite_normal_form(IntMatrix::identity(2));
    CHECK(h.h == IntMatrix::identity(2));
    CHECK(h.u == IntMatrix::identity(2));

    auto m = IntMatrix::from_ints({{2, 4}, {1, 1}});
    auto hm = hermite_normal_form(m);
    CHECK(hm.h == IntMatrix::from_ints({{1, 1}, {0, 2}}));
    CHECK(hm.u * m == hm.h);
    CHECK(determinant(hm.u) * determinant(hm.u) == 1);

    auto z = hermite_normal_form(IntMatrix(3, 2));
    CHECK(z.rank == 0);
    CHECK(z.h.is_zero());
}

TEST_CASE("hermite example agrees with brute-force index-2 sublattices")
{
    // The index-2 sublattices of Z^2 are the kernels of the three nonzero
    // functionals to Z/2; exactly one contains (2,4) and (1,1).
    const std::vector<std::pair<int, int>> functionals{{1, 0}, {0, 1}, {1, 1}};
    int containing = 0;
    std::pair<int, int> found{};
    for (auto f : functionals) {
        auto ok = [&](long a, long b) { return (f.first * a + f.second * b) % 2 == 0; };
        if (ok(2, 4) && ok(1, 1)) {
            ++containing;
            found = f;
        }
    }
    REQUIRE(containing == 1);
    // canonical basis of {(a,b): a + b even} is (1,1),(0,2)
    CHECK(found == std::pair<int, int>{1, 1});
    auto l = Lattice::span(IntMatrix::from_ints({{2, 4}, {1, 1}}));
    CHECK(l.basis() == IntMatrix::from_ints({{1, 1}, {0, 2}}));
}

TEST_CASE("hermite basis is canonical under unimodular rewrites")
{
    std::mt19937_64 rng(17);
    for (int t = 0; t < 60; ++t) {
        const size_t rows = 1 + t % 4, cols = 1 + (t / 4) % 4;
        IntMatrix m = random_matrix(rng, rows, cols, 9);
        IntMatrix rewritten = random_unimodular(rng, rows) * m;
        CHECK(Lattice::span(m) == Lattice::span(rewritten));
        auto h = hermite_normal_form(m);
        CHECK(h.u * m == h.h);
        for (size_t r = 0; r < h.rank; ++r) {
            CHECK(h.h(r, h.pivots[r]) > 0);
            for (size_t above = 0; above < r; ++above) {
                CHECK(h.h(above, h.pivots[r]) >= 0);
                CHECK(h.h(above, h.pivots[r]) < h.h(r, h.pivots[r]));
            }
        }
    }
}

TEST_CASE("smith normal form")
{
    auto s = smith_normal_form(IntMatrix::from_ints({{2, 0}, {0, 3}}));
    CHECK(s.d == IntMatrix::from_ints({{1, 0}, {0, 6}}));
    CHECK(smith_normal_form(IntMatrix::identity(3)).d == IntMatrix::identity(3));
    CHECK(smith_normal_form(IntMatrix(2, 3)).d.is_zero());

    std::mt19937_64 rng(23);
    for (int t = 0; t < 60; ++t) {
        const size_t rows = 1 + t % 4, cols = 1 + (t / 3) % 4;
        IntMatrix m = random_matrix(rng, rows, cols, 12);
        auto sm = smith_normal_form(m);
        CHECK(sm.u * m * sm.v == sm.d);
        CHECK(determinant(sm.u) * determinant(sm.u) == 1);
        CHECK(determinant(sm.v) * determinant(sm.v) == 1);
        for (size_t i = 0; i + 1 < sm.rank; ++i)
            CHECK(sm.d(i + 1, i + 1) % sm.d(i, i) == 0);
        for (size_t i = 0; i < std::min(rows, cols); ++i)
            CHECK(sm.d(i, i) >= 0);
        if (rows == cols) {
            BigInt prod = 1;
            for (size_t i = 0; i < rows; ++i)
                prod *= sm.d(i, i);
            CHECK(abs(determinant(m)) == prod);
        }
    }
}

TEST_CASE("lattice membership agrees with a rational oracle")
{
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<long> e(-10, 10);
    int members = 0;
    for (int t = 0; t < 80; ++t) {
        const size_t n = 1 + t % 4;
        IntMatrix m = random_matrix(rng, n, n, 10);
        if (determinant(m) == 0)
            continue;
        Lattice l = Lattice::span(m);
        for (int q = 0; q < 10; ++q) {
            IntVector v(n);
            for (auto &x : v)
                x = e(rng);
            if (q % 3 == 0) // force some members
                v = vec_times_matrix(IntVector(n, BigInt(e(rng))), m);
            const bool expected = rational_member(m, v);
            members += expected;
            CHECK(l.contains(v) == expected);
        }
    }
    CHECK(members > 0);
}

TEST_CASE("lattice operations")
{
    auto two = Lattice::span(IntMatrix::from_ints({{2, 0}, {0, 2}}));
    CHECK_FALSE(two.contains(IntVector{1, 0}));
    CHECK(quotient_invariants(two) == fg({2, 2}));

    auto a = Lattice::span(IntMatrix::from_ints({{2}}));
    auto b = Lattice::span(IntMatrix::from_ints({{3}}));
    auto meet = lattice_intersect(a, b);
    for (long x = -40; x <= 40; ++x)
        CHECK(meet.contains(IntVector{x}) == (x % 2 == 0 && x % 3 == 0));
    CHECK(meet.basis() == IntMatrix::from_ints({{6}}));
    CHECK(lattice_sum(a, b) == Lattice::full(1));
    CHECK_THROWS_AS(lattice_sum(a, two), blimwb::InputError);
}

TEST_CASE("left kernel and preimage")
{
    auto k = left_kernel(IntMatrix::from_ints({{1}, {1}}));
    REQUIRE(k.rows() == 1);
    CHECK((k(0, 0) == -k(0, 1)));
    CHECK(abs(k(0, 0)) == 1);

    auto target = Lattice::span(IntMatrix::from_ints({{4}}));
    auto pre = preimage(IntMatrix::from_ints({{2}, {6}}), target);
    for (long a = -6; a <= 6; ++a)
        for (long b = -6; b <= 6; ++b)
            CHECK(pre.contains(IntVector{a, b}) == ((2 * a + 6 * b) % 4 == 0));
}

TEST_CASE("tensor and tor by bilinearity")
{
    CHECK(tensor_and_tor(fg({2}), fg({3})).tensor.is_trivial());
    CHECK(tensor_and_tor(fg({4}), fg({6})).tor == fg({2}));
    CHECK(tensor_and_tor(fg({0}), fg({5})).tensor == fg({5}));
    CHECK(tensor_and_tor(fg({0}), fg({5})).tor.is_trivial());
}

TEST_CASE("tor agrees with the kernel of multiplication on a presentation")
{
    // Tor(Z/a, B) = {b in B : a b = 0}; count elements by brute force.
    for (long a = 1; a <= 6; ++a)
        for (long b1 = 1; b1 <= 6; ++b1)
            for (long b2 = 1; b2 <= 4; ++b2) {
                long count = 0;
                for (long x = 0; x < b1; ++x)
                    for (long y = 0; y < b2; ++y)
                        count += (a * x) % b1 == 0 && (a * y) % b2 == 0;
                auto t = tensor_and_tor(fg({a}), fg({b1, b2}));
                CHECK(t.tor.order() == count);
                // A ⊗ B = B / aB has order |B| / |aB| = |Tor| for finite cyclic A
                CHECK(t.tensor.order() == count);
            }
}

TEST_CASE("tensor of presentations matches invariant tensor")
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> o(0, 6);
    for (int t = 0; t < 30; ++t) {
        std::vector<BigInt> oa{o(rng), o(rng)}, ob{o(rng)};
        auto ga = AbelianGroup::cyclic(oa), gb = AbelianGroup::cyclic(ob);
        CHECK(tensor(ga, gb).invariants() == tensor_and_tor(ga.invariants(), gb.invariants()).tensor);
    }
}

TEST_CASE("symmetric powers")
{
    CHECK(sym_power(AbelianGroup::free(2), 2).group.invariants() == FgAbelian::free(3));
    CHECK(sym_power(AbelianGroup::cyclic({2}), 2).group.invariants() == fg({2}));
    CHECK(sym_power(AbelianGroup::cyclic({2}), 3).group.invariants() == fg({2}));
    for (int n = 1; n <= 4; ++n) {
        CHECK(sym_power(AbelianGroup::free(n), 2).group.invariants() == FgAbelian::free(binom(n + 1, 2)));
        CHECK(sym_power(AbelianGroup::free(n), 3).group.invariants() == FgAbelian::free(binom(n + 2, 3)));
    }
}

TEST_CASE("symmetric powers of a direct sum decompose binomially")
{
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<long> o(0, 6);
    for (int t = 0; t < 25; ++t) {
        const long a = o(rng), b = o(rng);
        auto ga = AbelianGroup::cyclic({a}), gb = AbelianGroup::cyclic({b});
        auto sum = AbelianGroup::cyclic({a, b});
        for (int k = 2; k <= 3; ++k) {
            FgAbelian expected;
            for (int i = 0; i <= k; ++i) {
                auto sa = i == 0 ? FgAbelian::free(1) : sym_power(ga, i).group.invariants();
                auto sb = k - i == 0 ? FgAbelian::free(1) : sym_power(gb, k - i).group.invariants();
                expected = expected + tensor_and_tor(sa, sb).tensor;
            }
            CHECK(sym_power(sum, k).group.invariants() == expected);
        }
    }
}

TEST_CASE("lie cube")
{
    CHECK(lie_cube(AbelianGroup::free(1)).invariants.is_trivial());
    CHECK(lie_cube(AbelianGroup::free(2)).invariants == FgAbelian::free(2));
    CHECK(lie_cube(AbelianGroup::cyclic({2})).invariants.is_trivial());
}

TEST_CASE("lie cube row is exact")
{
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> o(0, 6);
    std::uniform_int_distribution<int> len(1, 3);
    for (int t = 0; t < 25; ++t) {
        std::vector<BigInt> orders;
        for (int i = len(rng); i > 0; --i)
            orders.push_back(o(rng));
        auto a = AbelianGroup::cyclic(orders);
        auto lc = lie_cube(a);
        CHECK(lc.multiplication.is_well_defined());
        CHECK(lc.multiplication.cokernel().is_trivial());
        // (S^2(A) ⊗ A) / L^3(A) ≅ S^3(A)
        Lattice quotient_rel = lc.s2_tensor_a.relations();
        quotient_rel.add(lc.inclusion.matrix());
        CHECK(quotient_invariants(quotient_rel) == lc.s3.group.invariants());
        CHECK(lc.inclusion.is_injective());
    }
}

TEST_CASE("fg abelian canonical form")
{
    CHECK(fg({2, 3}) == fg({6}));
    CHECK(fg({4, 6}) == FgAbelian({2, 12}, 0));
    CHECK(fg({1, 0}).free_rank() == 1);
    CHECK(fg({2, 0}).to_string() == "Z/2 + Z");
    CHECK(fg({}).to_string() == "0");
    CHECK_THROWS_AS(FgAbelian({4, 6}, 0), blimwb::InputError);
}
