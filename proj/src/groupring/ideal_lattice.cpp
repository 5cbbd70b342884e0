#include "blimwb/groupring/ideal_lattice.h"

#include "blimwb/error.h"

#include <fmt/format.h>

namespace blimwb::groupring {

using intlin::IntMatrix;

bool IdealLattice::contains(const TruncatedElement &augmentation_element) const
{
    if (augmentation_element.generators() != generators || augmentation_element.order() != order)
        throw InputError("ideal lattice membership: element shape mismatch");
    if (augmentation_element.coefficient(size_t{0}) != 0)
        throw InputError("ideal lattice membership: element has a constant term");
    return lattice.contains(augmentation_element.augmentation_coordinates());
}

namespace {

void check_order(int n)
{
    if (n < 2)
        throw InputError(fmt::format("truncation order must be >= 2, got {}", n));
}

// All monomials of the given degree as letter sequences, in basis order.
std::vector<std::vector<int>> monomials_of_degree(int k, int d)
{
    std::vector<std::vector<int>> out{{}};
    for (int t = 0; t < d; ++t) {
        std::vector<std::vector<int>> next;
        for (const auto &m : out)
            for (int j = 0; j < k; ++j) {
                auto e = m;
                e.push_back(j);
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    return out;
}

} // namespace

IdealLattice relator_ideal_lattice(const words::FreePresentation &p, int order, IdealMode mode)
{
    check_order(order);
    p.validate();
    const int k = p.rank();
    const MonomialBasis basis(k, order);
    const size_t ambient = basis.size() - 1;

    IdealLattice out{k, order, intlin::Lattice(ambient)};
    const size_t chunk = std::max<size_t>(64, 2 * ambient);
    IntMatrix pending(0, ambient);

    std::vector<std::vector<std::vector<int>>> by_degree;
    for (int d = 0; d <= order - 2; ++d)
        by_degree.push_back(monomials_of_degree(k, d));

    const int min_right = mode == IdealMode::rf ? 1 : 0;
    for (const auto &rho : p.relators) {
        const auto z = expand_group_element(rho, k, order) - TruncatedElement::one(k, order);
        const auto terms = z.terms();
        for (int a = 0; a <= order - 2; ++a)
            for (int b = min_right; a + b <= order - 2; ++b)
                for (const auto &left : by_degree[a])
                    for (const auto &right : by_degree[b]) {
                        IntVector row(ambient);
                        bool nonzero = false;
                        for (const auto &[mono, c] : terms) {
                            if (a + b + static_cast<int>(mono.size()) >= order)
                                continue;
                            std::vector<int> m = left;
                            m.insert(m.end(), mono.begin(), mono.end());
                            m.insert(m.end(), right.begin(), right.end());
                            row[basis.index(m) - 1] += c;
                            nonzero = true;
                        }
                        if (!nonzero)
                            continue;
                        pending.append_row(row);
                        if (pending.rows() >= chunk) {
                            out.lattice.add(pending);
                            pending = IntMatrix(0, ambient);
                        }
                    }
    }
    if (pending.rows() > 0)
        out.lattice.add(pending);
    return out;
}

bool dimension_membership_free(const IdealLattice &ideal, const words::Word &w)
{
    const auto e = expand_group_element(w, ideal.generators, ideal.order) -
                   TruncatedElement::one(ideal.generators, ideal.order);
    return ideal.contains(e);
}

bool dimension_membership_free(const words::FreePresentation &p, int order, const words::Word &w,
                               IdealMode mode)
{
    return dimension_membership_free(relator_ideal_lattice(p, order, mode), w);
}

} // namespace blimwb::groupring
