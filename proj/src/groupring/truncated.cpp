#include "blimwb/groupring/truncated.h"

#include "blimwb/error.h"

#include <fmt/format.h>

namespace blimwb::groupring {

MonomialBasis::MonomialBasis(int generators, int order) : k_(generators), n_(order)
{
    if (generators < 0 || order < 1)
        throw InputError(fmt::format("invalid truncation: {} generators, order {}", generators, order));
    offsets_.assign(static_cast<size_t>(order) + 1, 0);
    size_t block = 1;
    for (int d = 0; d < order; ++d) {
        offsets_[d + 1] = offsets_[d] + block;
        block *= static_cast<size_t>(generators);
    }
}

size_t MonomialBasis::index(const std::vector<int> &letters) const
{
    const int d = static_cast<int>(letters.size());
    if (d >= n_)
        throw InternalError("monomial degree exceeds truncation");
    size_t r = 0;
    for (int j : letters) {
        if (j < 0 || j >= k_)
            throw InternalError("monomial letter out of range");
        r = r * static_cast<size_t>(k_) + static_cast<size_t>(j);
    }
    return offsets_[d] + r;
}

int MonomialBasis::degree(size_t index) const
{
    int d = 0;
    while (offsets_[d + 1] <= index)
        ++d;
    return d;
}

std::vector<int> MonomialBasis::letters(size_t index) const
{
    const int d = degree(index);
    size_t r = index - offsets_[d];
    std::vector<int> out(d);
    for (int t = d - 1; t >= 0; --t) {
        out[t] = static_cast<int>(r % static_cast<size_t>(k_));
        r /= static_cast<size_t>(k_);
    }
    return out;
}

TruncatedElement::TruncatedElement(int generators, int order)
    : basis_(std::make_shared<const MonomialBasis>(generators, order)), coeffs_(basis_->size())
{
}

TruncatedElement TruncatedElement::one(int generators, int order)
{
    TruncatedElement e(generators, order);
    e.coeffs_[0] = 1;
    return e;
}

TruncatedElement TruncatedElement::variable(int generators, int order, int j)
{
    return monomial(generators, order, {j});
}

TruncatedElement TruncatedElement::monomial(int generators, int order, const std::vector<int> &letters)
{
    TruncatedElement e(generators, order);
    if (static_cast<int>(letters.size()) < order)
        e.coeffs_[e.basis_->index(letters)] = 1;
    return e;
}

const BigInt &TruncatedElement::coefficient(const std::vector<int> &letters) const
{
    static const BigInt zero = 0;
    if (static_cast<int>(letters.size()) >= order())
        return zero;
    return coeffs_[basis_->index(letters)];
}

std::vector<std::pair<std::vector<int>, BigInt>> TruncatedElement::terms() const
{
    std::vector<std::pair<std::vector<int>, BigInt>> out;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            out.emplace_back(basis_->letters(i), coeffs_[i]);
    return out;
}

bool TruncatedElement::is_zero() const { return intlin::is_zero(coeffs_); }

int TruncatedElement::valuation() const
{
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return basis_->degree(i);
    return order();
}

TruncatedElement TruncatedElement::truncate(int order) const
{
    if (order > this->order())
        throw InputError("cannot raise the truncation order");
    TruncatedElement e(generators(), order);
    for (size_t i = 0; i < e.coeffs_.size(); ++i)
        e.coeffs_[i] = coeffs_[i];
    return e;
}

TruncatedElement TruncatedElement::homogeneous_part(int degree) const
{
    TruncatedElement e(*this);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (basis_->degree(i) != degree)
            e.coeffs_[i] = 0;
    return e;
}

IntVector TruncatedElement::augmentation_coordinates() const
{
    return IntVector(coeffs_.begin() + 1, coeffs_.end());
}

void TruncatedElement::check_compatible(const TruncatedElement &o) const
{
    if (!(*basis_ == *o.basis_))
        throw InputError(fmt::format("truncated elements differ in shape ({} gens, order {} vs {} gens, order {})",
                                     generators(), order(), o.generators(), o.order()));
}

TruncatedElement TruncatedElement::operator+(const TruncatedElement &o) const
{
    check_compatible(o);
    TruncatedElement e(*this);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        e.coeffs_[i] += o.coeffs_[i];
    return e;
}

TruncatedElement TruncatedElement::operator-(const TruncatedElement &o) const
{
    check_compatible(o);
    TruncatedElement e(*this);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        e.coeffs_[i] -= o.coeffs_[i];
    return e;
}

TruncatedElement TruncatedElement::operator-() const
{
    TruncatedElement e(*this);
    for (auto &c : e.coeffs_)
        c = -c;
    return e;
}

TruncatedElement TruncatedElement::operator*(const BigInt &s) const
{
    TruncatedElement e(*this);
    for (auto &c : e.coeffs_)
        c *= s;
    return e;
}

TruncatedElement operator*(const TruncatedElement &a, const TruncatedElement &b)
{
    a.check_compatible(b);
    const MonomialBasis &B = *a.basis_;
    const int n = B.order();
    const size_t k = static_cast<size_t>(B.generators());
    std::vector<size_t> kpow(n + 1, 1);
    for (int d = 1; d <= n; ++d)
        kpow[d] = kpow[d - 1] * k;

    TruncatedElement r(a);
    for (auto &c : r.coeffs_)
        c = 0;
    for (int da = 0; da < n; ++da)
        for (size_t ra = 0; ra < B.count(da); ++ra) {
            const BigInt &ca = a.coeffs_[B.offset(da) + ra];
            if (ca == 0)
                continue;
            for (int db = 0; da + db < n; ++db) {
                const size_t base = B.offset(da + db) + ra * kpow[db];
                for (size_t rb = 0; rb < B.count(db); ++rb) {
                    const BigInt &cb = b.coeffs_[B.offset(db) + rb];
                    if (cb != 0)
                        mpz_addmul(r.coeffs_[base + rb].get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
                }
            }
        }
    return r;
}

bool TruncatedElement::operator==(const TruncatedElement &o) const
{
    return *basis_ == *o.basis_ && coeffs_ == o.coeffs_;
}

TruncatedElement TruncatedElement::unit_inverse() const
{
    if (coeffs_[0] != 1)
        throw InputError("unit_inverse requires constant term 1");
    TruncatedElement z = *this - one(generators(), order());
    TruncatedElement acc = one(generators(), order());
    TruncatedElement term = acc;
    for (int i = 1; i < order(); ++i) {
        term = term * (-z);
        acc = acc + term;
    }
    return acc;
}

namespace {

// binom(e, i) for any integer e
BigInt binomial(int64_t e, int i)
{
    BigInt num = 1;
    for (int t = 0; t < i; ++t)
        num *= BigInt(static_cast<long>(e - t));
    BigInt den = 1;
    for (int t = 2; t <= i; ++t)
        den *= t;
    BigInt q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

} // namespace

TruncatedElement expand_group_element(const words::Word &w, int generators, int order)
{
    if (order < 1)
        throw InputError("truncation order must be >= 1");
    words::check_generators(w, generators);
    TruncatedElement acc = TruncatedElement::one(generators, order);
    for (const auto &l : w.letters()) {
        TruncatedElement f(generators, order);
        std::vector<int> mono;
        for (int i = 0; i < order; ++i) {
            f.coefficient_ref(f.basis().index(mono)) = binomial(l.exp, i);
            mono.push_back(l.gen);
        }
        acc = acc * f;
    }
    return acc;
}

TruncatedElement substitute(const TruncatedElement &a, const std::vector<TruncatedElement> &images)
{
    if (static_cast<int>(images.size()) != a.generators())
        throw InputError("substitute: one image per variable required");
    const int tk = images.empty() ? 0 : images.front().generators();
    TruncatedElement out(tk, a.order());
    for (const auto &im : images)
        if (im.generators() != tk || im.order() != a.order())
            throw InputError("substitute: images must share one shape");
    for (size_t i = 0; i < a.basis().size(); ++i) {
        const BigInt &c = a.coefficient(i);
        if (c == 0)
            continue;
        TruncatedElement term = TruncatedElement::one(tk, a.order());
        for (int j : a.basis().letters(i))
            term = term * images[j];
        out = out + term * c;
    }
    return out;
}

TruncatedElement apply_group_map(const TruncatedElement &a, const words::GroupMap &m)
{
    if (m.source_rank() != a.generators())
        throw InputError("apply_group_map: arity mismatch");
    std::vector<TruncatedElement> images;
    const auto one = TruncatedElement::one(m.target_rank, a.order());
    for (const auto &w : m.images)
        images.push_back(expand_group_element(w, m.target_rank, a.order()) - one);
    return substitute(a, images);
}

} // namespace blimwb::groupring
