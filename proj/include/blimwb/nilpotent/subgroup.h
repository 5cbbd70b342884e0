#pragma once

#include "blimwb/intlin/abelian.h"
#include "blimwb/nilpotent/pc_presentation.h"

#include <optional>

namespace blimwb::nilpotent {

/// Subgroup of a pc group held as its canonical induced sequence: one row
/// per leading position, leading entries positive (dividing the relative
/// order when finite), entries above later leading entries reduced.
class PcSubgroup {
  public:
    PcSubgroup() = default;
    explicit PcSubgroup(PcGroup group);

    static PcSubgroup trivial(PcGroup group) { return PcSubgroup(std::move(group)); }
    static PcSubgroup whole(PcGroup group);

    const PcGroup &group() const { return group_; }
    /// Rows in order of leading position.
    std::vector<PcElement> generators() const;
    size_t size() const;
    bool is_trivial() const { return size() == 0; }
    /// Row with the given leading position, if any.
    const std::optional<PcElement> &row(int position) const { return rows_[position]; }
    /// Leading entry at a position (0 when no row leads there).
    int64_t leading(int position) const;

    bool contains(const PcElement &x) const;
    bool contains(const PcSubgroup &other) const;
    /// Exponents k with x = Π rows^k in row order, if x is a member.
    std::optional<std::vector<int64_t>> coordinates(const PcElement &x) const;

    /// H ∩ G_p where G_p is spanned by the pc generators from position p.
    PcSubgroup tail(int position) const;
    /// H ∩ (generators of weight >= w).
    PcSubgroup weight_tail(int w) const;

    /// Normalized by every pc generator and its inverse.
    bool is_normal() const;
    /// Relative index at each position: relative order of the layer inside
    /// the subgroup (0 = infinite).
    int64_t relative_order(int position) const;
    /// Finite order of the subgroup; throws InfiniteGroup otherwise.
    uint64_t order() const;

    bool operator==(const PcSubgroup &o) const { return group_ == o.group_ && rows_ == o.rows_; }

    std::string to_string() const;

  private:
    friend class SubgroupBuilder;
    PcGroup group_;
    std::vector<std::optional<PcElement>> rows_;
};

/// Smallest subgroup containing the given elements.
PcSubgroup subgroup_closure(const PcGroup &q, const std::vector<PcElement> &gens);
/// Smallest normal subgroup containing the given elements.
PcSubgroup normal_closure(const PcGroup &q, const std::vector<PcElement> &gens);
/// Subgroup generated by the given elements and closed under conjugation by
/// `conjugators`.
PcSubgroup closure_under(const PcGroup &q, const std::vector<PcElement> &gens,
                         const std::vector<PcElement> &conjugators);
/// Join of two subgroups.
PcSubgroup join(const PcSubgroup &a, const PcSubgroup &b);
/// [H, K].
PcSubgroup mutual_commutator(const PcSubgroup &h, const PcSubgroup &k);
/// γ_i(Q) computed by iterated commutators.
PcSubgroup lower_central_term(const PcGroup &q, int i);

/// Abelianization of a subgroup on its rows: Z^rows / relations.
intlin::AbelianGroup abelianization(const PcSubgroup &h);

/// Kernel of the homomorphism from ⟨gens⟩ to Z^r / target_relations sending
/// gens[i] to values row i. Throws InputError when the assignment does not
/// extend to a homomorphism.
PcSubgroup kernel_to_abelian(const PcGroup &q, const std::vector<PcElement> &gens, const intlin::IntMatrix &values,
                             const intlin::Lattice &target_relations);

/// H / K for K normal in H with abelian quotient.
intlin::FgAbelian abelian_section_invariants(const PcSubgroup &h, const PcSubgroup &k);

/// Layer G_w / G_{w+1} of the weight filtration as Z^{weight-w generators}
/// modulo power relations; `positions` lists the generators of weight w.
struct WeightLayer {
    int weight = 0;
    std::vector<int> positions;
    intlin::Lattice relations;
    intlin::IntVector coordinates(const PcElement &x) const;
};
WeightLayer weight_layer(const PcPresentation &q, int w);

} // namespace blimwb::nilpotent
