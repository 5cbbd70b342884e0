#pragma once

// Nerve of a finite category and the unnormalized cochain complex of an
// abelian-valued functor; Lim^n as its cohomology.

#include "blimwb/catcoh/category.h"

#include <map>
#include <vector>

namespace blimwb::catcoh {

/// A nerve element: for n >= 1 the composable tuple (α_1, ..., α_n) with
/// dom(α_i) = cod(α_{i+1}); for n = 0 the single entry is an object.
using Chain = std::vector<int>;

/// Bound on the number of nerve elements in one degree.
inline constexpr size_t default_chain_cap = 200000;

std::vector<Chain> nerve_chains(const FiniteCategory &c, int n, size_t cap = default_chain_cap);

/// Face d_i of an n-chain, n >= 1. For n = 1, d_0(α) = dom(α) and
/// d_1(α) = cod(α), so that d^0(a)(α) = α·a(d_0 α) is defined.
Chain face(const FiniteCategory &c, const Chain &chain, int i);

/// Object whose value is the coefficient group of a chain.
int chain_object(const FiniteCategory &c, const Chain &chain, int n);

struct CochainComplex {
    int max_degree = 0;
    /// chains[n] for n = 0..max_degree+1.
    std::vector<std::vector<Chain>> chains;
    /// Coordinate offset of each chain's block in C^n.
    std::vector<std::vector<size_t>> offsets;
    /// C^n as Z^rank / relations.
    std::vector<intlin::AbelianGroup> groups;
    /// ∂^n : C^n -> C^{n+1} acting on row vectors, n = 0..max_degree.
    std::vector<intlin::IntMatrix> differentials;
};

CochainComplex cochain_complex(const FiniteCategory &c, const AbelianFunctor &f, int max_degree,
                               size_t cap = default_chain_cap);

/// Every ∂^{n+1}∘∂^n maps into the relations of C^{n+2}.
bool is_complex(const CochainComplex &cx);

/// H^n for 0 <= n <= max_degree.
intlin::FgAbelian cohomology(const CochainComplex &cx, int n);

/// Z^n and B^n as subgroups of C^n (finite orders require finite values).
intlin::FgAbelian cocycles(const CochainComplex &cx, int n);
intlin::FgAbelian coboundaries(const CochainComplex &cx, int n);

/// Lim^n F = H^n(C*(C, F)).
intlin::FgAbelian lim_n(const FiniteCategory &c, const AbelianFunctor &f, int n);

/// {x ∈ ⊕_c F(c) : x(cod α) = α·x(dom α)} computed from the morphism
/// constraints alone.
intlin::FgAbelian lim0_direct(const FiniteCategory &c, const AbelianFunctor &f);

} // namespace blimwb::catcoh
