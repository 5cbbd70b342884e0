#include "blimwb/catcoh/cochains.h"

#include "blimwb/error.h"

#include <fmt/format.h>

namespace blimwb::catcoh {

using intlin::BigInt;
using intlin::IntMatrix;
using intlin::IntVector;
using intlin::Lattice;

std::vector<Chain> nerve_chains(const FiniteCategory &c, int n, size_t cap)
{
    if (n < 0)
        throw InputError("nerve degree must be non-negative");
    std::vector<Chain> out;
    if (n == 0) {
        for (int o = 0; o < c.object_count(); ++o)
            out.push_back({o});
        return out;
    }
    for (int m = 0; m < c.morphism_count(); ++m)
        out.push_back({m});
    for (int d = 2; d <= n; ++d) {
        std::vector<Chain> next;
        for (const auto &ch : out)
            for (int m = 0; m < c.morphism_count(); ++m)
                if (c.dom(ch.back()) == c.cod(m)) {
                    if (next.size() >= cap)
                        throw CapExceeded(fmt::format("more than {} nerve elements in degree {}", cap, d));
                    Chain x = ch;
                    x.push_back(m);
                    next.push_back(std::move(x));
                }
        out = std::move(next);
    }
    return out;
}

Chain face(const FiniteCategory &c, const Chain &chain, int i)
{
    const int n = static_cast<int>(chain.size());
    if (n < 1 || i < 0 || i > n)
        throw InternalError("face index out of range");
    if (n == 1)
        return {i == 0 ? c.dom(chain[0]) : c.cod(chain[0])};
    if (i == 0)
        return Chain(chain.begin() + 1, chain.end());
    if (i == n)
        return Chain(chain.begin(), chain.end() - 1);
    Chain out;
    for (int t = 0; t < n; ++t) {
        if (t == i - 1) {
            out.push_back(c.compose(chain[t], chain[t + 1]));
            ++t;
        } else {
            out.push_back(chain[t]);
        }
    }
    return out;
}

int chain_object(const FiniteCategory &c, const Chain &chain, int n) { return n == 0 ? chain[0] : c.cod(chain[0]); }

CochainComplex cochain_complex(const FiniteCategory &c, const AbelianFunctor &f, int max_degree, size_t cap)
{
    if (max_degree < 0)
        throw InputError("cochain degree must be non-negative");
    f.validate(c);
    CochainComplex cx;
    cx.max_degree = max_degree;
    std::vector<std::map<Chain, size_t>> index(max_degree + 2);
    for (int n = 0; n <= max_degree + 1; ++n) {
        cx.chains.push_back(nerve_chains(c, n, cap));
        std::vector<size_t> off;
        size_t total = 0;
        for (size_t i = 0; i < cx.chains[n].size(); ++i) {
            off.push_back(total);
            index[n][cx.chains[n][i]] = i;
            total += f.values[chain_object(c, cx.chains[n][i], n)].generators();
        }
        IntMatrix rel(0, total);
        for (size_t i = 0; i < cx.chains[n].size(); ++i) {
            const auto &basis = f.values[chain_object(c, cx.chains[n][i], n)].relations().basis();
            for (size_t r = 0; r < basis.rows(); ++r) {
                IntVector v(total);
                for (size_t k = 0; k < basis.cols(); ++k)
                    v[off[i] + k] = basis(r, k);
                rel.append_row(v);
            }
        }
        cx.offsets.push_back(std::move(off));
        cx.groups.push_back(intlin::AbelianGroup::from_relation_rows(total, rel));
    }
    for (int n = 0; n <= max_degree; ++n) {
        IntMatrix d(cx.groups[n].generators(), cx.groups[n + 1].generators());
        for (size_t j = 0; j < cx.chains[n + 1].size(); ++j) {
            const Chain &beta = cx.chains[n + 1][j];
            const size_t col = cx.offsets[n + 1][j];
            for (int i = 0; i <= n + 1; ++i) {
                const Chain src = face(c, beta, i);
                const size_t s = index[n].at(src);
                const size_t row = cx.offsets[n][s];
                const int sign = (i % 2 == 0) ? 1 : -1;
                if (i == 0) {
                    // d^0(a)(β) = β_1 · a(d_0 β)
                    const IntMatrix &M = f.maps[beta[0]];
                    for (size_t r = 0; r < M.rows(); ++r)
                        for (size_t k = 0; k < M.cols(); ++k)
                            d(row + r, col + k) += M(r, k) * sign;
                } else {
                    const size_t g = f.values[chain_object(c, src, n)].generators();
                    for (size_t r = 0; r < g; ++r)
                        d(row + r, col + r) += sign;
                }
            }
        }
        cx.differentials.push_back(std::move(d));
    }
    return cx;
}

bool is_complex(const CochainComplex &cx)
{
    for (size_t n = 0; n + 1 < cx.differentials.size(); ++n) {
        const IntMatrix dd = cx.differentials[n] * cx.differentials[n + 1];
        for (size_t r = 0; r < dd.rows(); ++r)
            if (!cx.groups[n + 2].is_zero(dd.row(r)))
                return false;
    }
    return true;
}

namespace {

Lattice cocycle_lattice(const CochainComplex &cx, int n)
{
    return intlin::preimage(cx.differentials[n], cx.groups[n + 1].relations());
}

Lattice coboundary_lattice(const CochainComplex &cx, int n)
{
    Lattice b = cx.groups[n].relations();
    if (n > 0)
        b.add(cx.differentials[n - 1]);
    return b;
}

void check_degree(const CochainComplex &cx, int n)
{
    if (n < 0 || n > cx.max_degree)
        throw InputError(fmt::format("degree {} outside the computed range 0..{}", n, cx.max_degree));
}

} // namespace

intlin::FgAbelian cohomology(const CochainComplex &cx, int n)
{
    check_degree(cx, n);
    return intlin::quotient_invariants(cocycle_lattice(cx, n), coboundary_lattice(cx, n));
}

intlin::FgAbelian cocycles(const CochainComplex &cx, int n)
{
    check_degree(cx, n);
    return intlin::quotient_invariants(cocycle_lattice(cx, n), cx.groups[n].relations());
}

intlin::FgAbelian coboundaries(const CochainComplex &cx, int n)
{
    check_degree(cx, n);
    return intlin::quotient_invariants(coboundary_lattice(cx, n), cx.groups[n].relations());
}

intlin::FgAbelian lim_n(const FiniteCategory &c, const AbelianFunctor &f, int n)
{
    return cohomology(cochain_complex(c, f, n), n);
}

intlin::FgAbelian lim0_direct(const FiniteCategory &c, const AbelianFunctor &f)
{
    f.validate(c);
    std::vector<size_t> off;
    size_t total = 0;
    for (const auto &v : f.values) {
        off.push_back(total);
        total += v.generators();
    }
    IntMatrix source_rel(0, total);
    for (int o = 0; o < c.object_count(); ++o) {
        const auto &b = f.values[o].relations().basis();
        for (size_t r = 0; r < b.rows(); ++r) {
            IntVector v(total);
            for (size_t k = 0; k < b.cols(); ++k)
                v[off[o] + k] = b(r, k);
            source_rel.append_row(v);
        }
    }
    // One constraint block per non-identity morphism: α·x(dom) - x(cod).
    std::vector<int> ms;
    std::vector<size_t> moff;
    size_t width = 0;
    for (int m = 0; m < c.morphism_count(); ++m)
        if (!c.is_identity(m)) {
            ms.push_back(m);
            moff.push_back(width);
            width += f.values[c.cod(m)].generators();
        }
    IntMatrix constraint(total, width);
    IntMatrix target_rel(0, width);
    for (size_t t = 0; t < ms.size(); ++t) {
        const int m = ms[t];
        const IntMatrix &M = f.maps[m];
        for (size_t r = 0; r < M.rows(); ++r)
            for (size_t k = 0; k < M.cols(); ++k)
                constraint(off[c.dom(m)] + r, moff[t] + k) += M(r, k);
        for (size_t k = 0; k < f.values[c.cod(m)].generators(); ++k)
            constraint(off[c.cod(m)] + k, moff[t] + k) -= 1;
        const auto &b = f.values[c.cod(m)].relations().basis();
        for (size_t r = 0; r < b.rows(); ++r) {
            IntVector v(width);
            for (size_t k = 0; k < b.cols(); ++k)
                v[moff[t] + k] = b(r, k);
            target_rel.append_row(v);
        }
    }
    const Lattice kernel = intlin::preimage(constraint, Lattice::span(target_rel));
    return intlin::quotient_invariants(kernel, Lattice::span(source_rel));
}

} // namespace blimwb::catcoh
