#include "blimwb/limits/limits.h"

#include "blimwb/error.h"
#include "blimwb/groupring/ideal_lattice.h"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

namespace blimwb::limits {

using intlin::BigInt;
using intlin::IntMatrix;
using intlin::IntVector;
using intlin::Lattice;

namespace {

void check_n(int n)
{
    if (n < 2)
        throw InputError(fmt::format("n must be at least 2 (got {})", n));
    if (n - 1 > nilpotent::max_class)
        throw CapExceeded(fmt::format("n = {} exceeds the class cap (n <= {})", n, nilpotent::max_class + 1));
}

double elapsed_ms(std::chrono::steady_clock::time_point since)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

} // namespace

PcElement FunctorValue::evaluate(const words::Word &w) const { return quotient.projection.apply(free.evaluate(w)); }

FunctorValue evaluate_f(const words::FreePresentation &p, int n)
{
    check_n(n);
    p.validate();
    FunctorValue v;
    v.n = n;
    v.free = nilpotent::free_nilpotent(p.rank(), n - 1);
    std::vector<PcElement> rels;
    for (const auto &r : p.relators)
        rels.push_back(v.free.evaluate(r));
    v.relators = nilpotent::normal_closure(v.free.group, rels);
    v.quotient = nilpotent::quotient_pc(nilpotent::mutual_commutator(v.relators, v.relators));
    for (int j = 0; j < p.rank(); ++j)
        v.labeled_generators.push_back(v.quotient.projection.apply(v.free.group->generator(j)));
    return v;
}

CoproductMaps two_coproduct_maps(const words::FreePresentation &p, int n)
{
    const auto cp = words::coproduct(p);
    CoproductMaps out;
    out.value = evaluate_f(p, n);
    out.coproduct = evaluate_f(cp.presentation, n);
    auto induced = [&](const words::GroupMap &m) {
        std::vector<PcElement> images;
        for (const auto &w : m.images)
            images.push_back(out.coproduct.evaluate(w));
        return nilpotent::hom_from_generator_images(out.value.free, &out.value.quotient, out.coproduct.group(), images);
    };
    out.first = induced(cp.first);
    out.second = induced(cp.second);
    return out;
}

PcElement defect(const PcHom &phi, const PcHom &psi, const PcElement &x)
{
    const auto &T = *phi.target();
    return T.multiply(phi.apply(x), T.inverse(psi.apply(x)));
}

EqualizerResult equalizer_subgroup(const PcHom &phi, const PcHom &psi)
{
    if (phi.source() != psi.source() || phi.target() != psi.target())
        throw InputError("equalizer of maps with different source or target");
    const PcGroup &Q = phi.source();
    const auto &T = *phi.target();
    EqualizerResult out;
    out.subgroup = PcSubgroup::whole(Q);
    for (int w = 1; w <= T.nilpotency_bound(); ++w) {
        const auto layer = nilpotent::weight_layer(T, w);
        const auto gens = out.subgroup.generators();
        IntMatrix values(0, layer.positions.size());
        for (const auto &g : gens) {
            const PcElement d = defect(phi, psi, g);
            if (T.weight_start(w) > 0 &&
                std::any_of(d.begin(), d.begin() + T.weight_start(w), [](int64_t e) { return e != 0; }))
                throw InternalError("equalizer descent: defect left the expected layer");
            values.append_row(layer.coordinates(d));
        }
        Lattice image = Lattice::span(values);
        out.subgroup = nilpotent::kernel_to_abelian(Q, gens, values, layer.relations);
        DescentStep step;
        step.weight = w;
        step.image_rank = intlin::lattice_sum(image, layer.relations).rank() - layer.relations.rank();
        step.generators = out.subgroup.size();
        out.trace.push_back(step);
    }
    return out;
}

PcSubgroup lim_f(const words::FreePresentation &p, int n)
{
    const auto maps = two_coproduct_maps(p, n);
    return equalizer_subgroup(maps.first, maps.second).subgroup;
}

Colimit colim_f(const FunctorValue &value, const words::FreePresentation &p)
{
    Colimit c{nilpotent::nilpotent_quotient(p, value.n - 1), {}};
    c.projection = nilpotent::hom_from_generator_images(value.free, &value.quotient, c.quotient.group(),
                                                        c.quotient.generator_images());
    return c;
}

Colimit colim_f(const words::FreePresentation &p, int n) { return colim_f(evaluate_f(p, n), p); }

std::vector<PcElement> subgroup_elements(const PcSubgroup &h, size_t cap)
{
    const auto &P = *h.group();
    std::vector<PcElement> rows;
    std::vector<int64_t> orders;
    for (int p = 0; p < P.size(); ++p)
        if (h.row(p)) {
            const int64_t e = h.relative_order(p);
            if (e == 0)
                throw InfiniteGroup("subgroup is infinite");
            rows.push_back(*h.row(p));
            orders.push_back(e);
        }
    std::vector<PcElement> out{P.identity()};
    // Π rows^k in row order: extend from the last row backwards.
    for (size_t r = rows.size(); r-- > 0;) {
        const size_t base = out.size();
        if (base * static_cast<size_t>(orders[r]) > cap)
            throw CapExceeded(fmt::format("subgroup has more than {} elements", cap));
        std::vector<PcElement> next;
        next.reserve(base * orders[r]);
        PcElement g = P.identity();
        for (int64_t k = 0; k < orders[r]; ++k) {
            for (const auto &x : out)
                next.push_back(P.multiply(g, x));
            g = P.multiply(g, rows[r]);
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<PcElement> blim_in(const Colimit &colim, const PcSubgroup &lim, size_t cap)
{
    return subgroup_elements(colim.projection.image(lim), cap);
}

} // namespace

std::vector<PcElement> blim_f(const words::FreePresentation &p, int n, size_t cap)
{
    const auto maps = two_coproduct_maps(p, n);
    const auto lim = equalizer_subgroup(maps.first, maps.second).subgroup;
    return blim_in(colim_f(maps.value, p), lim, cap);
}

namespace {

words::Word random_word(std::mt19937_64 &rng, int rank, int letters)
{
    std::uniform_int_distribution<int> gen(0, rank - 1);
    std::uniform_int_distribution<int> ex(-2, 2);
    std::vector<words::Letter> raw;
    for (int i = 0; i < letters; ++i) {
        int e = ex(rng);
        raw.push_back({gen(rng), e == 0 ? 1 : e});
    }
    return words::Word::reduce(raw);
}

words::Word random_commutator(std::mt19937_64 &rng, int rank, int weight)
{
    words::Word c = random_word(rng, rank, 2);
    for (int i = 1; i < weight; ++i)
        c = words::commutator(c, random_word(rng, rank, 2));
    return c;
}

std::vector<PcElement> dimension_quotient_in(const words::FreePresentation &p, int n,
                                             const nilpotent::NilpotentQuotient &nq, size_t cap, uint64_t seed)
{
    const auto elements = nilpotent::enumerate_finite(*nq.group(), cap);
    const auto ideal = groupring::relator_ideal_lattice(p, n, groupring::IdealMode::r);
    std::mt19937_64 rng(seed);
    std::vector<PcElement> out;
    for (const auto &y : elements) {
        const words::Word w = nq.lift(y);
        const bool member = groupring::dimension_membership_free(ideal, w);
        if (p.rank() > 0) {
            words::Word alt = w * random_commutator(rng, p.rank(), n);
            if (!p.relators.empty()) {
                std::uniform_int_distribution<size_t> pick(0, p.relators.size() - 1);
                alt = alt * words::conjugate(p.relators[pick(rng)], random_word(rng, p.rank(), 3));
            }
            if (nq.evaluate(alt) != y)
                throw InternalError("alternative lift left its coset");
            if (groupring::dimension_membership_free(ideal, alt) != member)
                throw InternalError("dimension membership depends on the lift");
        }
        if (member)
            out.push_back(y);
    }
    return out;
}

} // namespace

std::vector<PcElement> dimension_quotient_subgroup(const words::FreePresentation &p, int n, size_t cap, uint64_t seed)
{
    check_n(n);
    const auto nq = nilpotent::nilpotent_quotient(p, n - 1);
    return dimension_quotient_in(p, n, nq, cap, seed);
}

ComparisonReport compare_blim_dimension(const words::FreePresentation &p, int n, size_t cap, uint64_t seed)
{
    using clock = std::chrono::steady_clock;
    ComparisonReport rep;
    rep.presentation = p.name;
    rep.n = n;

    auto t0 = clock::now();
    const auto maps = two_coproduct_maps(p, n);
    rep.timings["functor"] = elapsed_ms(t0);

    t0 = clock::now();
    const auto lim = equalizer_subgroup(maps.first, maps.second).subgroup;
    rep.timings["equalizer"] = elapsed_ms(t0);

    t0 = clock::now();
    const auto colim = colim_f(maps.value, p);
    const PcGroup &G = colim.quotient.group();
    if (!G->is_finite())
        throw InfiniteGroup("G/γ_n(G) is infinite");
    rep.quotient = G;
    rep.blim = blim_in(colim, lim, cap);
    rep.timings["blim"] = elapsed_ms(t0);

    t0 = clock::now();
    rep.dimension_quotient = dimension_quotient_in(p, n, colim.quotient, cap, seed);
    rep.timings["dimension_quotient"] = elapsed_ms(t0);

    rep.equal = rep.blim == rep.dimension_quotient;
    rep.exponent_two = std::all_of(rep.dimension_quotient.begin(), rep.dimension_quotient.end(),
                                   [&](const PcElement &x) { return G->power(x, 2) == G->identity(); });
    rep.blim_invariants = nilpotent::abelianization(nilpotent::subgroup_closure(G, rep.blim)).invariants();
    rep.dimension_quotient_invariants =
        nilpotent::abelianization(nilpotent::subgroup_closure(G, rep.dimension_quotient)).invariants();
    return rep;
}

ComparisonReport verify_main_theorem(const words::FreePresentation &p, size_t cap, uint64_t seed)
{
    return compare_blim_dimension(p, 4, cap, seed);
}

bool verify_inclusion(const words::FreePresentation &p, int n, size_t cap)
{
    const auto rep = compare_blim_dimension(p, n, cap);
    return std::includes(rep.dimension_quotient.begin(), rep.dimension_quotient.end(), rep.blim.begin(),
                         rep.blim.end());
}

namespace {

/// Lattice of weight-3 coordinates of a subgroup of a class-3 group.
Lattice weight3_lattice(const PcSubgroup &h, const nilpotent::WeightLayer &layer)
{
    IntMatrix rows(0, layer.positions.size());
    for (const auto &g : h.weight_tail(3).generators())
        rows.append_row(layer.coordinates(g));
    return Lattice::span(rows);
}

intlin::AbelianGroup abelianized_relators(const words::FreePresentation &p)
{
    const int k = p.rank();
    IntMatrix rows(0, k);
    for (const auto &r : p.relators) {
        IntVector v(k);
        for (const auto &l : r.letters())
            v[l.gen] += BigInt(static_cast<long>(l.exp));
        rows.append_row(v);
    }
    return intlin::AbelianGroup::from_relation_rows(k, rows);
}

} // namespace

SymSequenceReport verify_sym_sequence(const words::FreePresentation &p)
{
    p.validate();
    const int k = p.rank();
    const auto fn = nilpotent::free_nilpotent(k, 3);
    const PcGroup &Q = fn.group;
    std::vector<PcElement> rels;
    for (const auto &r : p.relators)
        rels.push_back(fn.evaluate(r));
    const auto R = nilpotent::normal_closure(Q, rels);
    const auto whole = PcSubgroup::whole(Q);
    const auto K = nilpotent::mutual_commutator(R, whole.weight_tail(2));
    const auto layer = nilpotent::weight_layer(*Q, 3);
    const Lattice kl = weight3_lattice(K, layer);

    const auto gab = abelianized_relators(p);
    const auto s2 = intlin::sym_power(gab, 2);
    const auto target = intlin::tensor(s2.group, intlin::AbelianGroup::free(k));
    const auto s2idx = [&](int a, int b) { return s2.index_of({std::min(a, b), std::max(a, b)}); };

    IntMatrix m(layer.positions.size(), target.generators());
    for (size_t t = 0; t < layer.positions.size(); ++t) {
        const auto &bc = fn.basis[layer.positions[t]];
        const auto &inner = fn.basis[bc.left];
        const int a = fn.basis[inner.left].generator;
        const int b = fn.basis[inner.right].generator;
        const int c = fn.basis[bc.right].generator;
        m(t, s2idx(a, c) * k + b) += 1;
        m(t, s2idx(b, c) * k + a) -= 1;
    }

    SymSequenceReport rep;
    rep.source = intlin::quotient_invariants(kl);
    rep.target = target.invariants();
    const Lattice kernel = intlin::preimage(m, target.relations());
    rep.well_defined = kernel.contains(kl);
    rep.injective = rep.well_defined && kl.contains(kernel);
    Lattice image = target.relations();
    image.add(m);
    rep.cokernel = intlin::quotient_invariants(image);
    rep.s3 = intlin::sym_power(gab, 3).group.invariants();
    rep.cokernel_matches = rep.cokernel == rep.s3;
    return rep;
}

MonoadditiveReport monoadditive_limit(const words::FreePresentation &p, int n)
{
    check_n(n);
    p.validate();
    const auto cp = words::coproduct(p);
    const auto lc = groupring::relator_ideal_lattice(p, n, groupring::IdealMode::rf);
    const auto lcc = groupring::relator_ideal_lattice(cp.presentation, n, groupring::IdealMode::rf);
    const int k = p.rank();
    const groupring::MonomialBasis bc(k, n);
    const groupring::MonomialBasis bcc(2 * k, n);
    const size_t dc = bc.size() - 1;
    const size_t dcc = bcc.size() - 1;

    // Difference of the maps induced by x_j ↦ x_j and x_j ↦ x_j'.
    IntMatrix diff(dc, dcc);
    for (size_t i = 1; i < bc.size(); ++i) {
        auto letters = bc.letters(i);
        diff(i - 1, bcc.index(letters) - 1) += 1;
        for (auto &j : letters)
            j += k;
        diff(i - 1, bcc.index(letters) - 1) -= 1;
    }
    for (size_t r = 0; r < lc.lattice.rank(); ++r)
        if (!lcc.lattice.contains(intlin::vec_times_matrix(lc.lattice.basis().row(r), diff)))
            throw InternalError("coproduct maps do not preserve rf + f^n");
    const Lattice kernel = intlin::preimage(diff, lcc.lattice);
    MonoadditiveReport rep;
    rep.limit = intlin::quotient_invariants(kernel, lc.lattice);
    return rep;
}

bool verify_monoadditive_vanishing(const words::FreePresentation &p, int n)
{
    return monoadditive_limit(p, n).vanishes();
}

CommutatorIdentityReport verify_commutator_identity(const words::FreePresentation &p)
{
    p.validate();
    const auto fn = nilpotent::free_nilpotent(p.rank(), 3);
    std::vector<PcElement> rels;
    for (const auto &r : p.relators)
        rels.push_back(fn.evaluate(r));
    const auto R = nilpotent::normal_closure(fn.group, rels);
    CommutatorIdentityReport rep;
    rep.lhs = nilpotent::mutual_commutator(R, R).weight_tail(3);
    rep.rhs = nilpotent::mutual_commutator(R.weight_tail(2), R);
    return rep;
}

} // namespace blimwb::limits
