#include "blimwb/groupring/finite_group_ring.h"

#include "blimwb/error.h"

#include <fmt/format.h>

namespace blimwb::groupring {

using intlin::BigInt;
using intlin::IntMatrix;
using intlin::IntVector;

FiniteGroupRing::FiniteGroupRing(FiniteGroup g, size_t cap) : group_(std::move(g))
{
    if (static_cast<size_t>(group_.order()) > cap)
        throw CapExceeded(fmt::format("group of order {} exceeds the cap {}", group_.order(), cap));
}

IntVector FiniteGroupRing::multiply(std::span<const BigInt> a, std::span<const BigInt> b) const
{
    if (a.size() != dimension() || b.size() != dimension())
        throw InputError("group ring element has the wrong length");
    IntVector c(dimension());
    for (size_t g = 0; g < a.size(); ++g) {
        if (a[g] == 0)
            continue;
        for (size_t h = 0; h < b.size(); ++h)
            if (b[h] != 0)
                mpz_addmul(c[group_.mul(static_cast<int>(g), static_cast<int>(h))].get_mpz_t(),
                           a[g].get_mpz_t(), b[h].get_mpz_t());
    }
    return c;
}

IntVector FiniteGroupRing::augmentation_vector(int g) const
{
    IntVector v(dimension());
    v[g] += 1;
    v[group_.identity()] -= 1;
    return v;
}

intlin::Lattice FiniteGroupRing::augmentation_power(int n) const
{
    if (n < 1)
        throw InputError("augmentation power needs n >= 1");
    const size_t N = dimension();
    IntMatrix g1(0, N);
    for (int g = 0; g < group_.order(); ++g)
        if (g != group_.identity())
            g1.append_row(augmentation_vector(g));
    intlin::Lattice power = intlin::Lattice::span(g1);

    // g^{k+1} = g * g^k is spanned by (t - 1) b with t running over the
    // conjugates of a generating set and b over a basis of g^k.
    std::vector<bool> is_factor(N, false);
    for (int s : group_.generators())
        for (int h = 0; h < group_.order(); ++h)
            is_factor[group_.mul(group_.mul(group_.inv(h), s), h)] = true;

    for (int k = 1; k < n; ++k) {
        IntMatrix rows(0, N);
        for (size_t t = 0; t < N; ++t) {
            if (!is_factor[t])
                continue;
            const auto left = augmentation_vector(static_cast<int>(t));
            for (size_t r = 0; r < power.rank(); ++r)
                rows.append_row(multiply(left, power.basis().row(r)));
        }
        power = intlin::Lattice::span(rows);
    }
    return power;
}

std::vector<int> FiniteGroupRing::dimension_subgroup(int n) const
{
    const auto power = augmentation_power(n);
    std::vector<int> out;
    for (int g = 0; g < group_.order(); ++g)
        if (power.contains(augmentation_vector(g)))
            out.push_back(g);
    return out;
}

} // namespace blimwb::groupring
