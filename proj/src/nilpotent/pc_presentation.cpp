#include "blimwb/nilpotent/pc_presentation.h"

#include "blimwb/error.h"

#include <fmt/format.h>

namespace blimwb::nilpotent {

int64_t checked_add(int64_t a, int64_t b)
{
    int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw CapExceeded("pc exponent overflow");
    return r;
}

int64_t checked_mul(int64_t a, int64_t b)
{
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw CapExceeded("pc exponent overflow");
    return r;
}

namespace {

int64_t floor_div(int64_t a, int64_t b)
{
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

int first_nonzero(const PcElement &x, int from = 0)
{
    for (int i = from; i < static_cast<int>(x.size()); ++i)
        if (x[i] != 0)
            return i;
    return static_cast<int>(x.size());
}

bool is_generator(const PcElement &x, int j)
{
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        if (x[i] != (i == j ? 1 : 0))
            return false;
    return true;
}

} // namespace

PcPresentation::PcPresentation(PcRelations rel)
    : weights_(std::move(rel.weights)), orders_(std::move(rel.relative_orders)), powers_(std::move(rel.powers)),
      conj_(std::move(rel.conjugates)), names_(std::move(rel.names))
{
    const int s = size();
    if (static_cast<int>(orders_.size()) != s || static_cast<int>(powers_.size()) != s ||
        static_cast<int>(conj_.size()) != s)
        throw InputError("pc presentation: table sizes disagree");
    if (names_.empty())
        for (int i = 0; i < s; ++i)
            names_.push_back(fmt::format("a{}", i + 1));
    if (static_cast<int>(names_.size()) != s)
        throw InputError("pc presentation: one name per generator required");
    for (int i = 0; i < s; ++i) {
        if (weights_[i] < 1 || (i > 0 && weights_[i] < weights_[i - 1]))
            throw InputError("pc presentation: weights must be positive and nondecreasing");
        if (orders_[i] < 0 || orders_[i] == 1)
            throw InputError(fmt::format("pc presentation: bad relative order {}", orders_[i]));
    }
    auto check_vec = [&](const PcElement &v, const std::string &what) {
        if (static_cast<int>(v.size()) != s)
            throw InputError(fmt::format("pc presentation: {} has the wrong length", what));
        for (int i = 0; i < s; ++i)
            if (orders_[i] > 0 && (v[i] < 0 || v[i] >= orders_[i]))
                throw InputError(fmt::format("pc presentation: {} is not reduced", what));
    };
    for (int i = 0; i < s; ++i) {
        if (orders_[i] == 0)
            powers_[i] = identity();
        check_vec(powers_[i], fmt::format("power relation of {}", names_[i]));
        if (first_nonzero(powers_[i]) <= i)
            throw InputError(fmt::format("pc presentation: power relation of {} is not a tail", names_[i]));
        // conj_ is indexed [j][i] with i < j; entries with i >= j are unused.
        conj_[i].resize(s);
        for (int j = i; j < s; ++j)
            conj_[i][j] = identity();
    }
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < j; ++i) {
            PcElement &c = conj_[j][i];
            const std::string what = fmt::format("conjugate of {} by {}", names_[j], names_[i]);
            check_vec(c, what);
            if (first_nonzero(c) != j || c[j] != 1)
                throw InputError(fmt::format("pc presentation: {} must start with {}", what, names_[j]));
            const int bound = weights_[i] + weights_[j];
            for (int t = j + 1; t < s; ++t)
                if (c[t] != 0 && weights_[t] < bound)
                    throw InputError(fmt::format("pc presentation: {} leaves the weight filtration", what));
        }

    fixed_from_.assign(s, s);
    for (int i = 0; i < s; ++i) {
        int p = s;
        while (p - 1 > i && is_generator(conj_[p - 1][i], p - 1))
            --p;
        fixed_from_[i] = std::max(p, i + 1);
    }

    // Inverse conjugation, from the last generator upwards: for j > i with
    // a_j^{a_i} = a_j c, the preimage is a_j z where z^{a_i} = c^-1.
    conj_inv_.assign(s, std::vector<PcElement>(s));
    for (int i = s - 1; i >= 0; --i) {
        std::vector<PcElement> images(s, identity());
        for (int j = s - 1; j > i; --j) {
            if (j >= fixed_from_[i]) {
                images[j] = generator(j);
                continue;
            }
            PcElement c = conj_[j][i];
            c[j] = 0;
            const PcElement z = apply_images(images, inverse(c), j + 1);
            PcElement y = z;
            y[j] = 1;
            images[j] = y;
        }
        for (int j = i + 1; j < s; ++j)
            conj_inv_[j][i] = images[j];
    }

    const auto failures = consistency_failures();
    if (!failures.empty())
        throw InputError("pc presentation is inconsistent: " + failures.front());
}

int PcPresentation::nilpotency_bound() const { return weights_.empty() ? 0 : weights_.back(); }

int PcPresentation::weight_start(int w) const
{
    int p = 0;
    while (p < size() && weights_[p] < w)
        ++p;
    return p;
}

bool PcPresentation::is_finite() const
{
    for (auto e : orders_)
        if (e == 0)
            return false;
    return true;
}

PcElement PcPresentation::generator(int i, int64_t e) const
{
    return mul_gen_pow(identity(), i, e);
}

void PcPresentation::check_element(const PcElement &x) const
{
    if (static_cast<int>(x.size()) != size())
        throw InputError(fmt::format("pc element has length {}, expected {}", x.size(), size()));
}

PcElement PcPresentation::apply_images(const std::vector<PcElement> &images, const PcElement &t, int from) const
{
    PcElement r = identity();
    for (int j = from; j < size(); ++j) {
        if (t[j] == 0)
            continue;
        if (is_generator(images[j], j))
            r = mul_gen_pow(std::move(r), j, t[j]);
        else
            r = multiply(r, power(images[j], t[j]));
    }
    return r;
}

PcElement PcPresentation::conjugate_tail(const PcElement &tail, int i, int64_t e) const
{
    if (first_nonzero(tail, i + 1) >= fixed_from_[i])
        return tail;
    const auto &table = e > 0 ? conj_ : conj_inv_;
    std::vector<PcElement> step(size(), identity());
    for (int j = i + 1; j < size(); ++j)
        step[j] = j >= fixed_from_[i] ? generator(j) : table[j][i];
    uint64_t n = e > 0 ? static_cast<uint64_t>(e) : static_cast<uint64_t>(-(e + 1)) + 1;
    if (n <= 6) {
        PcElement t = tail;
        for (uint64_t k = 0; k < n; ++k)
            t = apply_images(step, t, i + 1);
        return t;
    }
    // binary powering of the automorphism on its generator images
    std::vector<PcElement> acc(size(), identity());
    for (int j = i + 1; j < size(); ++j)
        acc[j] = generator(j);
    std::vector<PcElement> base = step;
    while (n > 0) {
        if (n & 1) {
            std::vector<PcElement> next(size(), identity());
            for (int j = i + 1; j < size(); ++j)
                next[j] = apply_images(base, acc[j], i + 1);
            acc = std::move(next);
        }
        n >>= 1;
        if (n > 0) {
            std::vector<PcElement> sq(size(), identity());
            for (int j = i + 1; j < size(); ++j)
                sq[j] = apply_images(base, base[j], i + 1);
            base = std::move(sq);
        }
    }
    return apply_images(acc, tail, i + 1);
}

PcElement PcPresentation::mul_gen_pow(PcElement x, int i, int64_t e) const
{
    if (e == 0)
        return x;
    const int s = size();
    PcElement tail = identity();
    bool any = false;
    for (int j = i + 1; j < s; ++j)
        if (x[j] != 0) {
            tail[j] = x[j];
            x[j] = 0;
            any = true;
        }
    if (any)
        tail = conjugate_tail(tail, i, e);
    const int64_t m = checked_add(x[i], e);
    if (orders_[i] > 0) {
        const int64_t q = floor_div(m, orders_[i]);
        x[i] = m - q * orders_[i];
        if (q != 0)
            tail = multiply(power(powers_[i], q), tail);
    } else {
        x[i] = m;
    }
    for (int j = i + 1; j < s; ++j)
        x[j] = tail[j];
    return x;
}

PcElement PcPresentation::multiply(const PcElement &x, const PcElement &y) const
{
    PcElement r = x;
    for (int i = 0; i < size(); ++i)
        if (y[i] != 0)
            r = mul_gen_pow(std::move(r), i, y[i]);
    return r;
}

PcElement PcPresentation::inverse(const PcElement &x) const
{
    PcElement r = identity();
    for (int j = size() - 1; j >= 0; --j)
        if (x[j] != 0)
            r = mul_gen_pow(std::move(r), j, -x[j]);
    return r;
}

PcElement PcPresentation::power(const PcElement &x, int64_t e) const
{
    if (e == INT64_MIN)
        throw CapExceeded("pc exponent overflow");
    if (e < 0)
        return power(inverse(x), -e);
    const int p = first_nonzero(x);
    if (p == size())
        return x;
    // powers of a single generator power stay in that coordinate
    if (first_nonzero(x, p + 1) == size())
        return mul_gen_pow(identity(), p, checked_mul(x[p], e));
    PcElement r = identity();
    PcElement b = x;
    while (e > 0) {
        if (e & 1)
            r = multiply(r, b);
        e >>= 1;
        if (e > 0)
            b = multiply(b, b);
    }
    return r;
}

PcElement PcPresentation::commutator(const PcElement &x, const PcElement &y) const
{
    return multiply(inverse(multiply(y, x)), multiply(x, y));
}

PcElement PcPresentation::conjugate(const PcElement &x, const PcElement &y) const
{
    return multiply(inverse(y), multiply(x, y));
}

PcElement PcPresentation::collect(const std::vector<std::pair<int, int64_t>> &letters) const
{
    PcElement r = identity();
    for (const auto &[i, e] : letters) {
        if (i < 0 || i >= size())
            throw InputError(fmt::format("pc letter {} out of range", i));
        r = mul_gen_pow(std::move(r), i, e);
    }
    return r;
}

std::vector<std::string> PcPresentation::consistency_failures() const
{
    std::vector<std::string> out;
    const int s = size();
    const int c = nilpotency_bound();
    auto g = [&](int i) { return generator(i); };
    auto fail = [&](const std::string &what) { out.push_back(what); };

    // Overlaps whose weights exceed the class differ only in trivial terms.
    for (int k = 0; k < s; ++k)
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < j; ++i) {
                if (weights_[i] + weights_[j] + weights_[k] > c)
                    continue;
                if (multiply(multiply(g(k), g(j)), g(i)) != multiply(g(k), multiply(g(j), g(i))))
                    fail(fmt::format("{} {} {}", names_[k], names_[j], names_[i]));
            }
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < j; ++i) {
            if (orders_[j] > 0) {
                auto lhs = multiply(power(g(j), orders_[j]), g(i));
                auto rhs = multiply(power(g(j), orders_[j] - 1), multiply(g(j), g(i)));
                if (lhs != rhs)
                    fail(fmt::format("{}^{} {}", names_[j], orders_[j], names_[i]));
            } else {
                if (multiply(inverse(g(j)), multiply(g(j), g(i))) != g(i))
                    fail(fmt::format("{}^-1 {} {}", names_[j], names_[j], names_[i]));
            }
            if (orders_[i] > 0) {
                auto lhs = multiply(g(j), power(g(i), orders_[i]));
                auto rhs = multiply(multiply(g(j), g(i)), power(g(i), orders_[i] - 1));
                if (lhs != rhs)
                    fail(fmt::format("{} {}^{}", names_[j], names_[i], orders_[i]));
            } else {
                if (multiply(multiply(g(j), inverse(g(i))), g(i)) != g(j))
                    fail(fmt::format("{} {}^-1 {}", names_[j], names_[i], names_[i]));
            }
            if (conjugate_tail(conjugate_tail(g(j), i, 1), i, -1) != g(j))
                fail(fmt::format("inverse conjugation of {} by {}", names_[j], names_[i]));
        }
    for (int i = 0; i < s; ++i)
        if (orders_[i] > 0) {
            auto p = power(g(i), orders_[i]);
            if (multiply(g(i), p) != multiply(p, g(i)))
                fail(fmt::format("{} {}^{}", names_[i], names_[i], orders_[i]));
        }
    return out;
}

std::string PcPresentation::format(const PcElement &x) const
{
    std::string out;
    for (int i = 0; i < size(); ++i) {
        if (x[i] == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += names_[i];
        if (x[i] != 1)
            out += fmt::format("^{}", x[i]);
    }
    return out.empty() ? "1" : out;
}

std::vector<PcElement> enumerate_finite(const PcPresentation &q, size_t cap)
{
    size_t total = 1;
    for (int i = 0; i < q.size(); ++i) {
        if (q.relative_order(i) == 0)
            throw InfiniteGroup("cannot enumerate a group with an infinite pc factor");
        if (total > cap / static_cast<size_t>(q.relative_order(i)))
            throw CapExceeded(fmt::format("group order exceeds the enumeration cap {}", cap));
        total *= static_cast<size_t>(q.relative_order(i));
    }
    std::vector<PcElement> out;
    out.reserve(total);
    PcElement x = q.identity();
    for (size_t n = 0; n < total; ++n) {
        out.push_back(x);
        for (int i = q.size() - 1; i >= 0; --i) {
            if (++x[i] < q.relative_order(i))
                break;
            x[i] = 0;
        }
    }
    return out;
}

} // namespace blimwb::nilpotent
