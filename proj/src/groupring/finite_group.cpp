#include "blimwb/groupring/finite_group.h"

#include "blimwb/error.h"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>

namespace blimwb::groupring {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table) : table_(std::move(table))
{
    const int n = order();
    if (n == 0)
        throw InputError("group table is empty");
    for (const auto &row : table_) {
        if (static_cast<int>(row.size()) != n)
            throw InputError("group table is not square");
        std::vector<bool> seen(n, false);
        for (int v : row) {
            if (v < 0 || v >= n)
                throw InputError(fmt::format("group table entry {} out of range", v));
            if (seen[v])
                throw InputError("group table row is not a permutation");
            seen[v] = true;
        }
    }
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = table_[e][a] == a && table_[a][e] == a;
        if (ok)
            identity_ = e;
    }
    if (identity_ < 0)
        throw InputError("group table has no identity");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == identity_) {
                inverse_[a] = b;
                break;
            }
        if (table_[inverse_[a]][a] != identity_)
            throw InputError("group table has an element without two-sided inverse");
    }
    // Light's test against a generating set; every triple for tiny tables.
    std::vector<int> gens;
    if (n <= 32) {
        gens.resize(n);
        std::iota(gens.begin(), gens.end(), 0);
    } else {
        gens = generators();
    }
    for (int s : gens)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (table_[table_[a][s]][b] != table_[a][table_[s][b]])
                    throw InputError("group table is not associative");
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup(std::vector<std::vector<int>>{{0}}); }

FiniteGroup FiniteGroup::cyclic(int n) { return abelian({n}); }

FiniteGroup FiniteGroup::abelian(const std::vector<int> &orders)
{
    int n = 1;
    for (int m : orders) {
        if (m < 1)
            throw InputError("cyclic factor order must be positive");
        n *= m;
    }
    auto digits = [&](int x) {
        std::vector<int> d(orders.size());
        for (size_t i = orders.size(); i-- > 0;) {
            d[i] = x % orders[i];
            x /= orders[i];
        }
        return d;
    };
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto da = digits(a), db = digits(b);
            int r = 0;
            for (size_t i = 0; i < orders.size(); ++i)
                r = r * orders[i] + (da[i] + db[i]) % orders[i];
            t[a][b] = r;
        }
    return FiniteGroup(std::move(t));
}

FiniteGroup FiniteGroup::dihedral(int n)
{
    if (n < 1)
        throw InputError("dihedral group needs n >= 1");
    // r^i s^a at index i + n a
    const int N = 2 * n;
    std::vector<std::vector<int>> t(N, std::vector<int>(N));
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            const int i = x % n, a = x / n, j = y % n, b = y / n;
            const int k = ((i + (a ? -j : j)) % n + n) % n;
            t[x][y] = k + n * ((a + b) % 2);
        }
    return FiniteGroup(std::move(t));
}

FiniteGroup FiniteGroup::quaternion()
{
    // units 1, i, j, k at 0..3; sign bit at +4
    static const std::array<std::array<int, 4>, 4> unit = {{{0, 1, 2, 3}, {1, 4, 3, 6}, {2, 7, 4, 1}, {3, 2, 5, 4}}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            const int p = unit[x % 4][y % 4];
            const int sign = (x / 4 + y / 4 + p / 4) % 2;
            t[x][y] = p % 4 + 4 * sign;
        }
    return FiniteGroup(std::move(t));
}

FiniteGroup FiniteGroup::symmetric(int n)
{
    if (n < 1 || n > 7)
        throw InputError("symmetric group degree must be in 1..7");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < perms.size(); ++i)
        index[perms[i]] = static_cast<int>(i);
    const int N = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(N, std::vector<int>(N));
    // product applies the left factor first
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            std::vector<int> c(n);
            for (int x = 0; x < n; ++x)
                c[x] = perms[b][perms[a][x]];
            t[a][b] = index.at(c);
        }
    return FiniteGroup(std::move(t));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup &a, const FiniteGroup &b)
{
    const int na = a.order(), nb = b.order();
    std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
    for (int x = 0; x < na * nb; ++x)
        for (int y = 0; y < na * nb; ++y)
            t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    return FiniteGroup(std::move(t));
}

int FiniteGroup::pow(int a, long e) const
{
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    int r = identity_;
    while (e > 0) {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

int FiniteGroup::element_order(int a) const
{
    int k = 1;
    for (int x = a; x != identity_; x = mul(x, a))
        ++k;
    return k;
}

bool FiniteGroup::is_abelian() const
{
    for (int a = 0; a < order(); ++a)
        for (int b = a + 1; b < order(); ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

std::vector<int> FiniteGroup::generated_subgroup(const std::vector<int> &gens) const
{
    std::vector<bool> in(order(), false);
    std::vector<int> queue{identity_};
    in[identity_] = true;
    for (size_t i = 0; i < queue.size(); ++i)
        for (int s : gens) {
            const int y = mul(queue[i], s);
            if (!in[y]) {
                in[y] = true;
                queue.push_back(y);
            }
        }
    std::sort(queue.begin(), queue.end());
    return queue;
}

std::vector<int> FiniteGroup::generators() const
{
    std::vector<int> gens;
    std::vector<bool> in(order(), false);
    in[identity_] = true;
    for (int a = 0; a < order(); ++a) {
        if (in[a])
            continue;
        gens.push_back(a);
        for (int x : generated_subgroup(gens))
            in[x] = true;
    }
    return gens;
}

bool FiniteGroup::is_subgroup(const std::vector<bool> &mask) const
{
    if (static_cast<int>(mask.size()) != order() || !mask[identity_])
        return false;
    for (int a = 0; a < order(); ++a)
        if (mask[a])
            for (int b = 0; b < order(); ++b)
                if (mask[b] && !mask[mul(a, inv(b))])
                    return false;
    return true;
}

bool FiniteGroup::is_normal_subgroup(const std::vector<bool> &mask) const
{
    if (!is_subgroup(mask))
        return false;
    for (int h = 0; h < order(); ++h)
        if (mask[h])
            for (int g = 0; g < order(); ++g)
                if (!mask[mul(mul(inv(g), h), g)])
                    return false;
    return true;
}

std::vector<int> FiniteGroup::center() const
{
    std::vector<int> z;
    for (int a = 0; a < order(); ++a) {
        bool central = true;
        for (int b = 0; b < order() && central; ++b)
            central = mul(a, b) == mul(b, a);
        if (central)
            z.push_back(a);
    }
    return z;
}

bool is_homomorphism(const FiniteGroup &source, const FiniteGroup &target, const std::vector<int> &map)
{
    if (static_cast<int>(map.size()) != source.order())
        return false;
    for (int v : map)
        if (v < 0 || v >= target.order())
            return false;
    for (int a = 0; a < source.order(); ++a)
        for (int b = 0; b < source.order(); ++b)
            if (map[source.mul(a, b)] != target.mul(map[a], map[b]))
                return false;
    return true;
}

namespace {

// Hasse-Lucas-Todd style coset enumeration over the trivial subgroup.
class CosetTable {
  public:
    CosetTable(int generators, size_t cap) : cols_(2 * generators), cap_(cap) { new_coset(); }

    static int inv_col(int x) { return x ^ 1; }

    bool alive(int c) const { return parent_[c] == c; }
    int size() const { return static_cast<int>(parent_.size()); }
    int entry(int c, int x) const { return table_[c][x]; }

    void define(int c, int x)
    {
        const int d = new_coset();
        table_[c][x] = d;
        table_[d][inv_col(x)] = c;
    }

    void scan_and_fill(int c, const std::vector<int> &w)
    {
        if (w.empty())
            return;
        int f = c, b = c;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        for (;;) {
            while (i <= j && table_[f][w[i]] >= 0)
                f = table_[f][w[i++]];
            if (i > j) {
                if (f != b)
                    coincidence(f, b);
                return;
            }
            while (j >= i && table_[b][inv_col(w[j])] >= 0)
                b = table_[b][inv_col(w[j--])];
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                table_[f][w[i]] = b;
                table_[b][inv_col(w[i])] = f;
                return;
            }
            define(f, w[i]);
        }
    }

  private:
    int new_coset()
    {
        if (parent_.size() >= cap_)
            throw CapExceeded(fmt::format("coset enumeration exceeded {} cosets", cap_));
        const int d = size();
        table_.emplace_back(cols_, -1);
        parent_.push_back(d);
        return d;
    }

    int rep(int k)
    {
        int r = k;
        while (parent_[r] != r)
            r = parent_[r];
        while (parent_[k] != r) {
            const int next = parent_[k];
            parent_[k] = r;
            k = next;
        }
        return r;
    }

    void merge(int k, int l, std::deque<int> &queue)
    {
        k = rep(k);
        l = rep(l);
        if (k == l)
            return;
        if (l < k)
            std::swap(k, l);
        parent_[l] = k;
        queue.push_back(l);
    }

    void coincidence(int a, int b)
    {
        std::deque<int> queue;
        merge(a, b, queue);
        while (!queue.empty()) {
            const int e = queue.front();
            queue.pop_front();
            for (int x = 0; x < cols_; ++x) {
                const int f = table_[e][x];
                if (f < 0)
                    continue;
                table_[f][inv_col(x)] = -1;
                const int e1 = rep(e), f1 = rep(f);
                if (table_[e1][x] >= 0)
                    merge(f1, table_[e1][x], queue);
                else if (table_[f1][inv_col(x)] >= 0)
                    merge(e1, table_[f1][inv_col(x)], queue);
                else {
                    table_[e1][x] = f1;
                    table_[f1][inv_col(x)] = e1;
                }
            }
        }
    }

    int cols_;
    size_t cap_;
    std::vector<std::vector<int>> table_;
    std::vector<int> parent_;
};

} // namespace

EnumeratedGroup enumerate_group(const words::FreePresentation &p, size_t coset_cap)
{
    p.validate();
    const int k = p.rank();
    std::vector<std::vector<int>> relators;
    for (const auto &r : p.relators) {
        std::vector<int> cols;
        for (const auto &l : r.letters())
            for (int64_t t = 0; t < (l.exp < 0 ? -l.exp : l.exp); ++t)
                cols.push_back(2 * l.gen + (l.exp < 0 ? 1 : 0));
        relators.push_back(std::move(cols));
    }

    CosetTable ct(k, coset_cap);
    for (int c = 0; c < ct.size(); ++c) {
        if (!ct.alive(c))
            continue;
        for (const auto &r : relators) {
            ct.scan_and_fill(c, r);
            if (!ct.alive(c))
                break;
        }
        if (!ct.alive(c))
            continue;
        for (int x = 0; x < 2 * k; ++x)
            if (ct.entry(c, x) < 0)
                ct.define(c, x);
    }

    std::vector<int> live_index(ct.size(), -1);
    std::vector<int> live;
    for (int c = 0; c < ct.size(); ++c)
        if (ct.alive(c)) {
            live_index[c] = static_cast<int>(live.size());
            live.push_back(c);
        }
    const int n = static_cast<int>(live.size());
    // action[c][x] on compacted cosets
    std::vector<std::vector<int>> action(n, std::vector<int>(2 * k));
    for (int c = 0; c < n; ++c)
        for (int x = 0; x < 2 * k; ++x) {
            const int d = ct.entry(live[c], x);
            if (d < 0 || live_index[d] < 0)
                throw InternalError("coset table incomplete after enumeration");
            action[c][x] = live_index[d];
        }

    // breadth-first spanning tree from the trivial coset
    std::vector<int> parent(n, -1), via(n, -1), order{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    for (size_t i = 0; i < order.size(); ++i)
        for (int x = 0; x < 2 * k; ++x) {
            const int d = action[order[i]][x];
            if (!seen[d]) {
                seen[d] = true;
                parent[d] = order[i];
                via[d] = x;
                order.push_back(d);
            }
        }
    if (static_cast<int>(order.size()) != n)
        throw InternalError("coset graph is disconnected");

    // a * b = coset a moved along the word of b
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        table[a][0] = a;
    for (size_t i = 1; i < order.size(); ++i) {
        const int b = order[i];
        for (int a = 0; a < n; ++a)
            table[a][b] = action[table[a][parent[b]]][via[b]];
    }

    EnumeratedGroup out;
    out.group = FiniteGroup(std::move(table));
    out.representatives.resize(n);
    for (size_t i = 1; i < order.size(); ++i) {
        const int b = order[i];
        const int x = via[b];
        out.representatives[b] =
            out.representatives[parent[b]] * words::Word::generator(x / 2, (x & 1) ? -1 : 1);
    }
    for (int g = 0; g < k; ++g)
        out.generator_images.push_back(action[0][2 * g]);
    return out;
}

int evaluate_word(const EnumeratedGroup &g, const words::Word &w)
{
    int r = g.group.identity();
    for (const auto &l : w.letters()) {
        if (l.gen < 0 || l.gen >= static_cast<int>(g.generator_images.size()))
            throw InputError("word uses a generator outside the presentation");
        r = g.group.mul(r, g.group.pow(g.generator_images[l.gen], static_cast<long>(l.exp)));
    }
    return r;
}

} // namespace blimwb::groupring
