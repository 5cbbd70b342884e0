#include "blimwb/intlin/abelian.h"

#include "blimwb/error.h"

#include <fmt/format.h>

#include <algorithm>
#include <map>

namespace blimwb::intlin {

FgAbelian::FgAbelian(std::vector<BigInt> torsion, size_t free_rank)
    : torsion_(std::move(torsion)), free_rank_(free_rank)
{
    for (size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] < 2)
            throw InputError("torsion invariants must be >= 2");
        if (i > 0 && !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t()))
            throw InputError("torsion invariants must form a divisibility chain");
    }
}

FgAbelian FgAbelian::from_cyclic(const std::vector<BigInt> &orders)
{
    size_t free = 0;
    std::vector<BigInt> finite;
    for (const auto &o : orders) {
        if (o == 0)
            ++free;
        else if (abs(o) > 1)
            finite.push_back(abs(o));
    }
    if (finite.empty())
        return FgAbelian({}, free);
    IntMatrix d(finite.size(), finite.size());
    for (size_t i = 0; i < finite.size(); ++i)
        d(i, i) = finite[i];
    Smith s = smith_normal_form(d, false);
    std::vector<BigInt> torsion;
    for (size_t i = 0; i < s.rank; ++i)
        if (s.d(i, i) > 1)
            torsion.push_back(s.d(i, i));
    return FgAbelian(std::move(torsion), free);
}

FgAbelian FgAbelian::from_cyclic_ints(const std::vector<long> &orders)
{
    std::vector<BigInt> o(orders.begin(), orders.end());
    return from_cyclic(o);
}

BigInt FgAbelian::order() const
{
    if (free_rank_ != 0)
        throw InfiniteGroup("order of an infinite abelian group");
    BigInt n = 1;
    for (const auto &t : torsion_)
        n *= t;
    return n;
}

FgAbelian FgAbelian::operator+(const FgAbelian &other) const
{
    std::vector<BigInt> orders = torsion_;
    orders.insert(orders.end(), other.torsion_.begin(), other.torsion_.end());
    for (size_t i = 0; i < free_rank_ + other.free_rank_; ++i)
        orders.push_back(0);
    return from_cyclic(orders);
}

std::string FgAbelian::to_string() const
{
    if (is_trivial())
        return "0";
    std::string s;
    for (const auto &t : torsion_)
        s += (s.empty() ? "" : " + ") + std::string("Z/") + t.get_str();
    if (free_rank_ > 0)
        s += (s.empty() ? "" : " + ") + (free_rank_ == 1 ? std::string("Z") : fmt::format("Z^{}", free_rank_));
    return s;
}

AbelianGroup::AbelianGroup(size_t generators, Lattice relations) : relations_(std::move(relations))
{
    if (relations_.ambient_rank() != generators)
        throw InternalError("AbelianGroup: relation width mismatch");
}

AbelianGroup AbelianGroup::cyclic(const std::vector<BigInt> &orders)
{
    IntMatrix rel(0, orders.size());
    for (size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == 0)
            continue;
        IntVector r(orders.size());
        r[i] = orders[i];
        rel.append_row(r);
    }
    return AbelianGroup(orders.size(), Lattice::span(rel));
}

AbelianGroup AbelianGroup::from_relation_rows(size_t generators, const IntMatrix &rows)
{
    if (rows.rows() == 0)
        return free(generators);
    return AbelianGroup(generators, Lattice::span(rows));
}

FgAbelian AbelianGroup::invariants() const { return quotient_invariants(relations_); }

AbelianMap::AbelianMap(AbelianGroup source, AbelianGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix))
{
    if (matrix_.rows() != source_.generators() || matrix_.cols() != target_.generators())
        throw InputError(fmt::format("AbelianMap: matrix {}x{} does not match {} -> {} generators",
                                     matrix_.rows(), matrix_.cols(), source_.generators(),
                                     target_.generators()));
}

bool AbelianMap::is_well_defined() const
{
    const auto &rel = source_.relations().basis();
    for (size_t r = 0; r < rel.rows(); ++r)
        if (!target_.is_zero(apply(rel.row(r))))
            return false;
    return true;
}

Lattice AbelianMap::kernel_lattice() const { return preimage(matrix_, target_.relations()); }

FgAbelian AbelianMap::kernel() const { return quotient_invariants(kernel_lattice(), source_.relations()); }

FgAbelian AbelianMap::image() const
{
    Lattice img = target_.relations();
    img.add(matrix_);
    return quotient_invariants(img, target_.relations());
}

FgAbelian AbelianMap::cokernel() const
{
    Lattice img = target_.relations();
    img.add(matrix_);
    return quotient_invariants(img);
}

bool AbelianMap::is_injective() const { return kernel_lattice() == source_.relations(); }

TensorTor tensor_and_tor(const FgAbelian &a, const FgAbelian &b)
{
    std::vector<BigInt> tens, tor;
    for (const auto &x : a.torsion())
        for (const auto &y : b.torsion()) {
            BigInt g = gcd(x, y);
            tens.push_back(g);
            tor.push_back(g);
        }
    for (const auto &x : a.torsion())
        for (size_t j = 0; j < b.free_rank(); ++j)
            tens.push_back(x);
    for (const auto &y : b.torsion())
        for (size_t i = 0; i < a.free_rank(); ++i)
            tens.push_back(y);
    for (size_t i = 0; i < a.free_rank() * b.free_rank(); ++i)
        tens.push_back(0);
    return {FgAbelian::from_cyclic(tens), FgAbelian::from_cyclic(tor)};
}

AbelianGroup tensor(const AbelianGroup &a, const AbelianGroup &b)
{
    const size_t na = a.generators(), nb = b.generators();
    IntMatrix rel(0, na * nb);
    const auto &ra = a.relations().basis();
    const auto &rb = b.relations().basis();
    for (size_t r = 0; r < ra.rows(); ++r)
        for (size_t j = 0; j < nb; ++j) {
            IntVector v(na * nb);
            for (size_t i = 0; i < na; ++i)
                v[i * nb + j] = ra(r, i);
            rel.append_row(v);
        }
    for (size_t r = 0; r < rb.rows(); ++r)
        for (size_t i = 0; i < na; ++i) {
            IntVector v(na * nb);
            for (size_t j = 0; j < nb; ++j)
                v[i * nb + j] = rb(r, j);
            rel.append_row(v);
        }
    return AbelianGroup::from_relation_rows(na * nb, rel);
}

std::vector<std::vector<int>> monomials(int variables, int degree)
{
    std::vector<std::vector<int>> out;
    if (degree < 0)
        return out;
    std::vector<int> cur;
    auto rec = [&](auto &&self, int start) -> void {
        if (static_cast<int>(cur.size()) == degree) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < variables; ++v) {
            cur.push_back(v);
            self(self, v);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

size_t SymmetricPower::index_of(const std::vector<int> &sorted_monomial) const
{
    auto it = std::lower_bound(monomials.begin(), monomials.end(), sorted_monomial);
    if (it == monomials.end() || *it != sorted_monomial)
        throw InternalError("monomial not found in symmetric power");
    return static_cast<size_t>(it - monomials.begin());
}

SymmetricPower sym_power(const AbelianGroup &a, int degree)
{
    if (degree < 1)
        throw InputError("symmetric power degree must be >= 1");
    const int n = static_cast<int>(a.generators());
    SymmetricPower s;
    s.degree = degree;
    s.monomials = monomials(n, degree);
    const auto lower = monomials(n, degree - 1);
    IntMatrix rel(0, s.monomials.size());
    const auto &ra = a.relations().basis();
    for (size_t r = 0; r < ra.rows(); ++r)
        for (const auto &m : lower) {
            IntVector v(s.monomials.size());
            for (int i = 0; i < n; ++i) {
                if (ra(r, i) == 0)
                    continue;
                std::vector<int> mm = m;
                mm.insert(std::upper_bound(mm.begin(), mm.end(), i), i);
                v[s.index_of(mm)] += ra(r, i);
            }
            rel.append_row(v);
        }
    s.group = AbelianGroup::from_relation_rows(s.monomials.size(), rel);
    return s;
}

LieCube lie_cube(const AbelianGroup &a)
{
    const size_t n = a.generators();
    SymmetricPower s2 = sym_power(a, 2);
    SymmetricPower s3 = sym_power(a, 3);
    AbelianGroup t = tensor(s2.group, a);
    IntMatrix mult(t.generators(), s3.monomials.size());
    for (size_t m = 0; m < s2.monomials.size(); ++m)
        for (size_t j = 0; j < n; ++j) {
            std::vector<int> mm = s2.monomials[m];
            mm.insert(std::upper_bound(mm.begin(), mm.end(), static_cast<int>(j)), static_cast<int>(j));
            mult(m * n + j, s3.index_of(mm)) = 1;
        }
    AbelianMap mult_map(t, s3.group, mult);
    Lattice k = mult_map.kernel_lattice();

    // present L^3 on the kernel basis
    LeftSolver solver(k.basis());
    IntMatrix rel(0, k.rank());
    for (size_t r = 0; r < t.relations().rank(); ++r) {
        auto c = solver.solve(t.relations().basis().row(r));
        if (!c)
            throw InternalError("lie_cube: tensor relations not in the kernel");
        rel.append_row(*c);
    }
    AbelianGroup l3 = AbelianGroup::from_relation_rows(k.rank(), rel);
    AbelianMap inclusion(l3, t, k.basis());
    return LieCube{l3.invariants(), std::move(inclusion), std::move(s2), std::move(s3), t, std::move(mult_map)};
}

} // namespace blimwb::intlin
