#include "blimwb/nilpotent/subgroup.h"

#include "blimwb/error.h"

#include <fmt/format.h>

#include <numeric>
#include <set>

namespace blimwb::nilpotent {

using intlin::BigInt;
using intlin::IntMatrix;
using intlin::IntVector;

namespace {

int lead(const PcElement &x)
{
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        if (x[i] != 0)
            return i;
    return static_cast<int>(x.size());
}

int64_t floor_div(int64_t a, int64_t b)
{
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

// g = u a + v b with g = gcd(a, b) > 0
int64_t ext_gcd(int64_t a, int64_t b, int64_t &u, int64_t &v)
{
    int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const int64_t q = r0 / r1;
        r0 = r0 - q * r1;
        std::swap(r0, r1);
        s0 = s0 - q * s1;
        std::swap(s0, s1);
        t0 = t0 - q * t1;
        std::swap(t0, t1);
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    u = s0;
    v = t0;
    return r0;
}

} // namespace

class SubgroupBuilder {
  public:
    explicit SubgroupBuilder(PcGroup q) : q_(std::move(q)), P_(*q_), rows_(P_.size()), ids_(P_.size(), -1) {}

    void push(PcElement x)
    {
        P_.check_element(x);
        pending_.push_back(std::move(x));
    }

    void close(const std::vector<PcElement> &conjugators)
    {
        const int bound = P_.nilpotency_bound();
        for (;;) {
            drain();
            bool pushed = false;
            const int s = P_.size();
            for (int b = 0; b < s; ++b) {
                if (!rows_[b])
                    continue;
                for (int a = 0; a < b; ++a) {
                    if (!rows_[a] || P_.weight(a) + P_.weight(b) > bound)
                        continue;
                    if (!done_pairs_.insert({ids_[a], ids_[b]}).second)
                        continue;
                    push(P_.commutator(*rows_[b], *rows_[a]));
                    pushed = true;
                }
                for (size_t g = 0; g < conjugators.size(); ++g) {
                    const int lg = lead(conjugators[g]);
                    if (lg == s || P_.weight(lg) + P_.weight(b) > bound)
                        continue;
                    if (!done_conj_.insert({ids_[b], static_cast<int>(g)}).second)
                        continue;
                    push(P_.commutator(*rows_[b], conjugators[g]));
                    pushed = true;
                }
            }
            if (!pushed)
                break;
        }
        canonicalize();
    }

    PcSubgroup result()
    {
        PcSubgroup h(q_);
        h.rows_ = std::move(rows_);
        return h;
    }

  private:
    void drain()
    {
        while (!pending_.empty()) {
            PcElement x = std::move(pending_.back());
            pending_.pop_back();
            insert(std::move(x));
        }
    }

    void set_row(int p, PcElement y)
    {
        // Keep entries small by reducing against the rows already below p.
        for (int q = p + 1; q < P_.size(); ++q) {
            if (!rows_[q] || y[q] == 0)
                continue;
            const int64_t k = floor_div(y[q], (*rows_[q])[q]);
            if (k != 0)
                y = P_.multiply(y, P_.power(*rows_[q], -k));
        }
        rows_[p] = std::move(y);
        ids_[p] = next_id_++;
    }

    void insert(PcElement x)
    {
        const int s = P_.size();
        for (;;) {
            const int p = lead(x);
            if (p == s)
                return;
            const int64_t ep = P_.relative_order(p);
            if (!rows_[p]) {
                PcElement y = x;
                if (ep == 0) {
                    if (y[p] < 0)
                        y = P_.inverse(y);
                    set_row(p, std::move(y));
                    return;
                }
                int64_t u, v;
                const int64_t c = x[p];
                const int64_t g = ext_gcd(c, ep, u, v);
                if (g != c) {
                    y = P_.power(x, u);
                    push(P_.multiply(x, P_.power(y, -(c / g))));
                }
                push(P_.power(y, ep / g));
                set_row(p, std::move(y));
                return;
            }
            const PcElement &r = *rows_[p];
            const int64_t d = r[p], c = x[p];
            if (c % d == 0) {
                x = P_.multiply(P_.power(r, -(c / d)), x);
                continue;
            }
            int64_t u, v;
            const int64_t g = ext_gcd(d, c, u, v);
            PcElement y = P_.multiply(P_.power(r, u), P_.power(x, v));
            if (ep > 0 && y[p] != g)
                throw InternalError("subgroup echelon: unexpected leading entry");
            push(P_.multiply(r, P_.power(y, -(d / g))));
            push(P_.multiply(x, P_.power(y, -(c / g))));
            if (ep > 0)
                push(P_.power(y, ep / g));
            set_row(p, std::move(y));
            return;
        }
    }

    void canonicalize()
    {
        const int s = P_.size();
        for (int p = 0; p < s; ++p) {
            if (!rows_[p])
                continue;
            PcElement r = *rows_[p];
            for (int q = p + 1; q < s; ++q) {
                if (!rows_[q] || r[q] == 0)
                    continue;
                const int64_t k = floor_div(r[q], (*rows_[q])[q]);
                if (k != 0)
                    r = P_.multiply(r, P_.power(*rows_[q], -k));
            }
            rows_[p] = std::move(r);
        }
    }

    PcGroup q_;
    const PcPresentation &P_;
    std::vector<std::optional<PcElement>> rows_;
    std::vector<int> ids_;
    int next_id_ = 0;
    std::vector<PcElement> pending_;
    std::set<std::pair<int, int>> done_pairs_;
    std::set<std::pair<int, int>> done_conj_;
};

PcSubgroup::PcSubgroup(PcGroup group) : group_(std::move(group))
{
    if (!group_)
        throw InputError("subgroup of a null group");
    rows_.resize(group_->size());
}

PcSubgroup PcSubgroup::whole(PcGroup group)
{
    std::vector<PcElement> gens;
    for (int i = 0; i < group->size(); ++i)
        gens.push_back(group->generator(i));
    return subgroup_closure(group, gens);
}

std::vector<PcElement> PcSubgroup::generators() const
{
    std::vector<PcElement> out;
    for (const auto &r : rows_)
        if (r)
            out.push_back(*r);
    return out;
}

size_t PcSubgroup::size() const
{
    size_t n = 0;
    for (const auto &r : rows_)
        n += r.has_value();
    return n;
}

int64_t PcSubgroup::leading(int position) const { return rows_[position] ? (*rows_[position])[position] : 0; }

std::optional<std::vector<int64_t>> PcSubgroup::coordinates(const PcElement &x) const
{
    group_->check_element(x);
    const auto &P = *group_;
    std::vector<int64_t> coords;
    PcElement y = x;
    for (int p = 0; p < P.size(); ++p) {
        const int64_t c = y[p];
        if (!rows_[p]) {
            if (c != 0)
                return std::nullopt;
            continue;
        }
        const int64_t d = (*rows_[p])[p];
        if (c % d != 0)
            return std::nullopt;
        coords.push_back(c / d);
        if (c != 0)
            y = P.multiply(P.power(*rows_[p], -(c / d)), y);
    }
    return coords;
}

bool PcSubgroup::contains(const PcElement &x) const { return coordinates(x).has_value(); }

bool PcSubgroup::contains(const PcSubgroup &other) const
{
    if (other.group_ != group_)
        throw InputError("subgroups of different groups");
    for (const auto &r : other.rows_)
        if (r && !contains(*r))
            return false;
    return true;
}

PcSubgroup PcSubgroup::tail(int position) const
{
    PcSubgroup h(group_);
    for (int p = std::max(position, 0); p < group_->size(); ++p)
        h.rows_[p] = rows_[p];
    return h;
}

PcSubgroup PcSubgroup::weight_tail(int w) const { return tail(group_->weight_start(w)); }

bool PcSubgroup::is_normal() const
{
    const auto &P = *group_;
    for (const auto &r : rows_) {
        if (!r)
            continue;
        for (int i = 0; i < P.size(); ++i) {
            const auto a = P.generator(i);
            if (!contains(P.conjugate(*r, a)) || !contains(P.conjugate(*r, P.inverse(a))))
                return false;
        }
    }
    return true;
}

int64_t PcSubgroup::relative_order(int position) const
{
    if (!rows_[position])
        return 1;
    const int64_t e = group_->relative_order(position);
    return e == 0 ? 0 : e / (*rows_[position])[position];
}

uint64_t PcSubgroup::order() const
{
    uint64_t n = 1;
    for (int p = 0; p < group_->size(); ++p) {
        const int64_t r = relative_order(p);
        if (r == 0)
            throw InfiniteGroup("subgroup is infinite");
        if (__builtin_mul_overflow(n, static_cast<uint64_t>(r), &n))
            throw CapExceeded("subgroup order overflow");
    }
    return n;
}

std::string PcSubgroup::to_string() const
{
    std::string out = "<";
    for (const auto &r : generators())
        out += (out.size() > 1 ? ", " : "") + group_->format(r);
    return out + ">";
}

PcSubgroup closure_under(const PcGroup &q, const std::vector<PcElement> &gens, const std::vector<PcElement> &conjugators)
{
    SubgroupBuilder b(q);
    for (const auto &g : gens)
        b.push(g);
    b.close(conjugators);
    return b.result();
}

PcSubgroup subgroup_closure(const PcGroup &q, const std::vector<PcElement> &gens) { return closure_under(q, gens, {}); }

PcSubgroup normal_closure(const PcGroup &q, const std::vector<PcElement> &gens)
{
    std::vector<PcElement> conj;
    for (int i = 0; i < q->size(); ++i)
        conj.push_back(q->generator(i));
    return closure_under(q, gens, conj);
}

PcSubgroup join(const PcSubgroup &a, const PcSubgroup &b)
{
    if (a.group() != b.group())
        throw InputError("join of subgroups of different groups");
    auto gens = a.generators();
    for (auto &g : b.generators())
        gens.push_back(std::move(g));
    return subgroup_closure(a.group(), gens);
}

PcSubgroup mutual_commutator(const PcSubgroup &h, const PcSubgroup &k)
{
    if (h.group() != k.group())
        throw InputError("commutator of subgroups of different groups");
    const auto &P = *h.group();
    const auto hg = h.generators(), kg = k.generators();
    std::vector<PcElement> gens;
    for (const auto &x : hg)
        for (const auto &y : kg)
            if (P.weight(lead(x)) + P.weight(lead(y)) <= P.nilpotency_bound())
                gens.push_back(P.commutator(x, y));
    auto conj = hg;
    conj.insert(conj.end(), kg.begin(), kg.end());
    return closure_under(h.group(), gens, conj);
}

PcSubgroup lower_central_term(const PcGroup &q, int i)
{
    if (i < 1)
        throw InputError("lower central term index must be >= 1");
    PcSubgroup whole = PcSubgroup::whole(q);
    PcSubgroup term = whole;
    for (int j = 1; j < i; ++j)
        term = mutual_commutator(term, whole);
    return term;
}

namespace {

IntVector to_big(const std::vector<int64_t> &v)
{
    IntVector out;
    for (auto x : v)
        out.emplace_back(static_cast<long>(x));
    return out;
}

std::vector<int64_t> require_coordinates(const PcSubgroup &h, const PcElement &x)
{
    auto c = h.coordinates(x);
    if (!c)
        throw InternalError("element expected in subgroup is not a member");
    return *c;
}

} // namespace

intlin::AbelianGroup abelianization(const PcSubgroup &h)
{
    const auto &P = *h.group();
    const auto rows = h.generators();
    const size_t m = rows.size();
    IntMatrix rel(0, m);
    size_t idx = 0;
    for (int p = 0; p < P.size(); ++p) {
        if (!h.row(p))
            continue;
        const int64_t rp = h.relative_order(p);
        if (rp > 0) {
            IntVector v = to_big(require_coordinates(h, P.power(rows[idx], rp)));
            for (auto &x : v)
                x = -x;
            v[idx] += rp;
            rel.append_row(v);
        }
        ++idx;
    }
    for (size_t b = 0; b < m; ++b)
        for (size_t a = 0; a < b; ++a) {
            const auto c = P.commutator(rows[b], rows[a]);
            if (lead(c) < P.size())
                rel.append_row(to_big(require_coordinates(h, c)));
        }
    return intlin::AbelianGroup::from_relation_rows(m, rel);
}

PcSubgroup kernel_to_abelian(const PcGroup &q, const std::vector<PcElement> &gens, const IntMatrix &values,
                             const intlin::Lattice &target_relations)
{
    if (values.rows() != gens.size() || values.cols() != target_relations.ambient_rank())
        throw InputError("kernel_to_abelian: value matrix has the wrong shape");
    const auto &P = *q;
    const PcSubgroup h = subgroup_closure(q, gens);
    const auto ab = abelianization(h);
    IntMatrix coords(0, h.size());
    for (const auto &g : gens)
        coords.append_row(to_big(require_coordinates(h, g)));

    const auto relations = intlin::preimage(coords, ab.relations());
    for (size_t r = 0; r < relations.rank(); ++r)
        if (!target_relations.contains(intlin::vec_times_matrix(relations.basis().row(r), values)))
            throw InputError("assignment does not extend to a homomorphism");

    std::vector<PcElement> kernel = mutual_commutator(h, h).generators();
    const auto k = intlin::preimage(values, target_relations);
    for (size_t r = 0; r < k.rank(); ++r) {
        PcElement x = P.identity();
        for (size_t i = 0; i < gens.size(); ++i) {
            const BigInt &c = k.basis()(r, i);
            if (c == 0)
                continue;
            if (!c.fits_slong_p())
                throw CapExceeded("kernel lift exponent overflow");
            x = P.multiply(x, P.power(gens[i], c.get_si()));
        }
        kernel.push_back(std::move(x));
    }
    return subgroup_closure(q, kernel);
}

intlin::FgAbelian abelian_section_invariants(const PcSubgroup &h, const PcSubgroup &k)
{
    if (h.group() != k.group())
        throw InputError("section of subgroups of different groups");
    if (!h.contains(k))
        throw InputError("abelian section: K is not contained in H");
    const auto &P = *h.group();
    const auto hg = h.generators();
    for (const auto &y : k.generators())
        for (const auto &x : hg)
            if (!k.contains(P.conjugate(y, x)) || !k.contains(P.conjugate(y, P.inverse(x))))
                throw InputError("abelian section: K is not normal in H");
    for (size_t b = 0; b < hg.size(); ++b)
        for (size_t a = 0; a < b; ++a)
            if (!k.contains(P.commutator(hg[b], hg[a])))
                throw InputError("abelian section: H/K is not abelian");
    auto rel = abelianization(h).relations();
    IntMatrix extra(0, h.size());
    for (const auto &y : k.generators())
        extra.append_row(to_big(require_coordinates(h, y)));
    rel.add(extra);
    return intlin::quotient_invariants(rel);
}

IntVector WeightLayer::coordinates(const PcElement &x) const
{
    IntVector v;
    for (int p : positions)
        v.emplace_back(static_cast<long>(x[p]));
    return v;
}

WeightLayer weight_layer(const PcPresentation &q, int w)
{
    WeightLayer layer;
    layer.weight = w;
    for (int p = 0; p < q.size(); ++p)
        if (q.weight(p) == w)
            layer.positions.push_back(p);
    const size_t m = layer.positions.size();
    IntMatrix rel(0, m);
    for (size_t t = 0; t < m; ++t) {
        const int p = layer.positions[t];
        const int64_t e = q.relative_order(p);
        if (e == 0)
            continue;
        IntVector v = layer.coordinates(q.power(p));
        for (auto &x : v)
            x = -x;
        v[t] += e;
        rel.append_row(v);
    }
    layer.relations = intlin::Lattice::span(rel);
    return layer;
}

} // namespace blimwb::nilpotent
