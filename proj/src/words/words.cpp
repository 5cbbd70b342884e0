#include "blimwb/words.h"

#include "blimwb/error.h"

#include <fmt/format.h>

#include <set>

namespace blimwb::words {

namespace {

int64_t checked_add(int64_t a, int64_t b)
{
    int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw InternalError("word exponent overflow");
    return r;
}

void push_letter(std::vector<Letter> &out, Letter l)
{
    if (l.exp == 0)
        return;
    if (!out.empty() && out.back().gen == l.gen) {
        out.back().exp = checked_add(out.back().exp, l.exp);
        if (out.back().exp == 0)
            out.pop_back();
        return;
    }
    out.push_back(l);
}

} // namespace

Word Word::reduce(const std::vector<Letter> &raw)
{
    Word w;
    w.letters_.reserve(raw.size());
    for (const auto &l : raw) {
        if (l.gen < 0)
            throw InputError(fmt::format("negative generator index {}", l.gen));
        push_letter(w.letters_, l);
    }
    return w;
}

Word Word::generator(int gen, int64_t exp) { return reduce({{gen, exp}}); }

int64_t Word::length() const
{
    int64_t n = 0;
    for (const auto &l : letters_)
        n += l.exp < 0 ? -l.exp : l.exp;
    return n;
}

int Word::support() const
{
    int s = 0;
    for (const auto &l : letters_)
        s = std::max(s, l.gen + 1);
    return s;
}

Word Word::inverse() const
{
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        w.letters_.push_back({it->gen, -it->exp});
    return w;
}

Word Word::pow(int64_t e) const
{
    if (e < 0)
        return inverse().pow(-e);
    Word result;
    Word base = *this;
    while (e > 0) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e > 0)
            base = base * base;
    }
    return result;
}

Word operator*(const Word &u, const Word &v)
{
    Word w;
    w.letters_ = u.letters_;
    w.letters_.reserve(u.letters_.size() + v.letters_.size());
    for (const auto &l : v.letters_)
        push_letter(w.letters_, l);
    return w;
}

Word commutator(const Word &u, const Word &v) { return u.inverse() * v.inverse() * u * v; }

Word conjugate(const Word &u, const Word &v) { return v.inverse() * u * v; }

Word word_arith(WordOp op, const Word &u, const Word &v)
{
    switch (op) {
    case WordOp::multiply:
        return u * v;
    case WordOp::inverse:
        return u.inverse();
    case WordOp::conjugate:
        return conjugate(u, v);
    case WordOp::commutator:
        return commutator(u, v);
    }
    throw InternalError("unknown word operation");
}

void check_generators(const Word &w, int rank)
{
    for (const auto &l : w.letters())
        if (l.gen >= rank)
            throw InputError(fmt::format("generator index {} out of range (rank {})", l.gen, rank));
}

Word reduce_checked(const std::vector<Letter> &raw, int rank)
{
    for (const auto &l : raw)
        if (l.gen < 0 || l.gen >= rank)
            throw InputError(fmt::format("unknown generator index {} (rank {})", l.gen, rank));
    return Word::reduce(raw);
}

void FreePresentation::validate() const
{
    std::set<std::string> seen;
    for (const auto &n : generator_names) {
        if (n.empty())
            throw InputError("empty generator name");
        if (!seen.insert(n).second)
            throw InputError(fmt::format("duplicate generator '{}'", n));
    }
    for (const auto &r : relators)
        check_generators(r, rank());
}

GroupMap GroupMap::identity(int rank)
{
    GroupMap m;
    m.target_rank = rank;
    for (int j = 0; j < rank; ++j)
        m.images.push_back(Word::generator(j));
    return m;
}

Word apply_map(const GroupMap &m, const Word &w)
{
    std::vector<Letter> out;
    for (const auto &l : w.letters()) {
        if (l.gen >= m.source_rank())
            throw InputError(fmt::format("map arity mismatch: generator {} but map has {} images",
                                         l.gen, m.source_rank()));
        const Word img = m.images[l.gen].pow(l.exp);
        out.insert(out.end(), img.letters().begin(), img.letters().end());
    }
    return Word::reduce(out);
}

GroupMap compose(const GroupMap &outer, const GroupMap &inner)
{
    GroupMap m;
    m.target_rank = outer.target_rank;
    for (const auto &img : inner.images)
        m.images.push_back(apply_map(outer, img));
    return m;
}

Coproduct coproduct(const FreePresentation &p)
{
    const int k = p.rank();
    Coproduct c;
    auto &q = c.presentation;
    q.name = p.name.empty() ? std::string("coproduct") : p.name + "+" + p.name;
    q.generator_names = p.generator_names;
    for (const auto &n : p.generator_names)
        q.generator_names.push_back(n + "'");

    c.first.target_rank = 2 * k;
    c.second.target_rank = 2 * k;
    c.fold.target_rank = k;
    for (int j = 0; j < k; ++j) {
        c.first.images.push_back(Word::generator(j));
        c.second.images.push_back(Word::generator(k + j));
    }
    for (int j = 0; j < 2 * k; ++j)
        c.fold.images.push_back(Word::generator(j % k));

    for (const auto &r : p.relators)
        q.relators.push_back(r);
    for (const auto &r : p.relators)
        q.relators.push_back(apply_map(c.second, r));
    for (int j = 0; j < k; ++j)
        q.relators.push_back(Word::generator(j) * Word::generator(k + j, -1));
    return c;
}

std::string format_word(const Word &w, const std::vector<std::string> &names)
{
    if (w.empty())
        return "1";
    std::string out;
    for (const auto &l : w.letters()) {
        if (!out.empty())
            out += '*';
        out += l.gen < static_cast<int>(names.size()) ? names[l.gen] : fmt::format("g{}", l.gen);
        if (l.exp != 1)
            out += fmt::format("^{}", l.exp);
    }
    return out;
}

} // namespace blimwb::words
