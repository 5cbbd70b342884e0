#include "blimwb/nilpotent/quotient.h"

#include "blimwb/error.h"

#include <fmt/format.h>

namespace blimwb::nilpotent {

namespace {

int64_t floor_div(int64_t a, int64_t b)
{
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

} // namespace

PcHom::PcHom(PcGroup source, PcGroup target, std::vector<PcElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    const auto &S = *source_;
    const auto &T = *target_;
    if (static_cast<int>(images_.size()) != S.size())
        throw InputError("pc homomorphism: one image per source generator required");
    for (const auto &x : images_)
        T.check_element(x);
    for (int i = 0; i < S.size(); ++i) {
        if (S.relative_order(i) > 0 && T.power(images_[i], S.relative_order(i)) != apply(S.power(i)))
            throw InputError(fmt::format("pc homomorphism violates the power relation of {}", S.name(i)));
        for (int j = i + 1; j < S.size(); ++j)
            if (T.conjugate(images_[j], images_[i]) != apply(S.conjugate_relation(j, i)))
                throw InputError(
                    fmt::format("pc homomorphism violates the relation for {}^{}", S.name(j), S.name(i)));
    }
}

PcElement PcHom::apply(const PcElement &x) const
{
    source_->check_element(x);
    const auto &T = *target_;
    PcElement r = T.identity();
    for (size_t p = 0; p < x.size(); ++p)
        if (x[p] != 0)
            r = T.multiply(r, T.power(images_[p], x[p]));
    return r;
}

PcSubgroup PcHom::image(const PcSubgroup &h) const
{
    if (h.group() != source_)
        throw InputError("image of a subgroup of another group");
    std::vector<PcElement> gens;
    for (const auto &g : h.generators())
        gens.push_back(apply(g));
    return subgroup_closure(target_, gens);
}

PcElement PcQuotient::lift(const PcElement &y) const
{
    group->check_element(y);
    const auto &P = *projection.source();
    std::vector<std::pair<int, int64_t>> letters;
    for (size_t t = 0; t < y.size(); ++t)
        if (y[t] != 0)
            letters.emplace_back(source_positions[t], y[t]);
    return P.collect(letters);
}

PcQuotient quotient_pc(const PcSubgroup &n)
{
    const PcGroup &parent = n.group();
    const auto &P = *parent;
    if (!n.is_normal())
        throw InputError("quotient by a subgroup that is not normal");

    std::vector<int> surviving;
    std::vector<int64_t> orders;
    for (int p = 0; p < P.size(); ++p) {
        if (!n.row(p)) {
            surviving.push_back(p);
            orders.push_back(P.relative_order(p));
        } else if (n.leading(p) > 1) {
            surviving.push_back(p);
            orders.push_back(n.leading(p));
        }
    }
    const int s = static_cast<int>(surviving.size());

    auto to_quotient = [&](PcElement x) {
        for (int p = 0; p < P.size(); ++p) {
            if (!n.row(p) || x[p] == 0)
                continue;
            const int64_t k = floor_div(x[p], n.leading(p));
            if (k != 0)
                x = P.multiply(x, P.power(*n.row(p), -k));
        }
        PcElement y(s, 0);
        for (int t = 0; t < s; ++t)
            y[t] = x[surviving[t]];
        return y;
    };

    PcRelations rel;
    rel.relative_orders = orders;
    rel.powers.assign(s, PcElement(s, 0));
    rel.conjugates.assign(s, std::vector<PcElement>(s, PcElement(s, 0)));
    for (int t = 0; t < s; ++t) {
        rel.weights.push_back(P.weight(surviving[t]));
        rel.names.push_back(P.name(surviving[t]));
        if (orders[t] > 0)
            rel.powers[t] = to_quotient(P.generator(surviving[t], orders[t]));
        for (int u = t + 1; u < s; ++u)
            rel.conjugates[u][t] = to_quotient(P.conjugate(P.generator(surviving[u]), P.generator(surviving[t])));
    }

    PcQuotient out;
    out.group = std::make_shared<const PcPresentation>(std::move(rel));
    std::vector<PcElement> images;
    for (int p = 0; p < P.size(); ++p)
        images.push_back(to_quotient(P.generator(p)));
    out.projection = PcHom(parent, out.group, std::move(images));
    out.source_positions = surviving;
    out.kernel = n;
    return out;
}

PcHom hom_from_generator_images(const FreeNilpotent &fn, const PcQuotient *quotient, const PcGroup &target,
                                const std::vector<PcElement> &generator_images)
{
    if (static_cast<int>(generator_images.size()) != fn.rank)
        throw InputError("one image per free generator required");
    if (quotient && quotient->projection.source() != fn.group)
        throw InputError("quotient does not come from this free nilpotent group");
    const auto &T = *target;
    const int s = fn.group->size();
    std::vector<PcElement> values(s);
    for (int p = 0; p < s; ++p) {
        const auto &b = fn.basis[p];
        values[p] = b.generator >= 0 ? generator_images[b.generator] : T.commutator(values[b.left], values[b.right]);
    }
    if (!quotient)
        return PcHom(fn.group, target, values);
    std::vector<PcElement> images;
    for (int p : quotient->source_positions)
        images.push_back(values[p]);
    return PcHom(quotient->group, target, images);
}

std::vector<PcElement> NilpotentQuotient::generator_images() const
{
    std::vector<PcElement> out;
    for (int j = 0; j < free.rank; ++j)
        out.push_back(quotient.projection.apply(free.group->generator(j)));
    return out;
}

PcElement NilpotentQuotient::evaluate(const words::Word &w) const
{
    return quotient.projection.apply(free.evaluate(w));
}

words::Word NilpotentQuotient::lift(const PcElement &y) const { return free.lift(quotient.lift(y)); }

NilpotentQuotient nilpotent_quotient(const words::FreePresentation &p, int c)
{
    p.validate();
    NilpotentQuotient out{free_nilpotent(p.rank(), c), {}, {}};
    std::vector<PcElement> rels;
    for (const auto &r : p.relators)
        rels.push_back(out.free.evaluate(r));
    out.relators = normal_closure(out.free.group, rels);
    out.quotient = quotient_pc(out.relators);
    return out;
}

} // namespace blimwb::nilpotent
