#include "blimwb/nilpotent/free_nilpotent.h"

#include "blimwb/error.h"
#include "blimwb/groupring/truncated.h"

#include <fmt/format.h>

namespace blimwb::nilpotent {

using groupring::TruncatedElement;
using intlin::BigInt;
using intlin::IntMatrix;
using intlin::IntVector;

words::Word FreeNilpotent::word(int p) const
{
    const auto &b = basis.at(p);
    if (b.generator >= 0)
        return words::Word::generator(b.generator);
    return words::commutator(word(b.left), word(b.right));
}

words::Word FreeNilpotent::lift(const PcElement &x) const
{
    group->check_element(x);
    words::Word w;
    for (int p = 0; p < group->size(); ++p)
        if (x[p] != 0)
            w = w * word(p).pow(x[p]);
    return w;
}

PcElement FreeNilpotent::evaluate(const words::Word &w) const
{
    words::check_generators(w, rank);
    std::vector<std::pair<int, int64_t>> letters;
    for (const auto &l : w.letters())
        letters.emplace_back(l.gen, l.exp);
    return group->collect(letters);
}

int64_t witt_number(int k, int w)
{
    auto mobius = [](int n) {
        int m = 1;
        for (int p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                n /= p;
                if (n % p == 0)
                    return 0;
                m = -m;
            }
        return n > 1 ? -m : m;
    };
    int64_t sum = 0;
    for (int d = 1; d <= w; ++d)
        if (w % d == 0) {
            int64_t pw = 1;
            for (int t = 0; t < w / d; ++t)
                pw *= k;
            sum += mobius(d) * pw;
        }
    return sum / w;
}

namespace {

// e-th power of a unit 1 + z by the binomial series.
TruncatedElement unit_power(const TruncatedElement &u, int64_t e)
{
    const int k = u.generators(), n = u.order();
    const TruncatedElement one = TruncatedElement::one(k, n);
    const TruncatedElement z = u - one;
    TruncatedElement acc = one, term = one;
    BigInt binom = 1;
    for (int i = 1; i < n; ++i) {
        term = term * z;
        if (term.is_zero())
            break;
        binom = binom * BigInt(static_cast<long>(e - (i - 1))) / i;
        acc = acc + term * binom;
    }
    return acc;
}

class MagnusPeeler {
  public:
    MagnusPeeler(int k, int c, const std::vector<int> &weights, const std::vector<TruncatedElement> &images)
        : k_(k), c_(c), weights_(weights), images_(images)
    {
        for (int w = 1; w <= c; ++w) {
            std::vector<int> positions;
            for (int p = 0; p < static_cast<int>(weights.size()); ++p)
                if (weights[p] == w)
                    positions.push_back(p);
            const auto &basis = images.front().basis();
            IntMatrix lead(0, basis.count(w));
            for (int p : positions)
                lead.append_row(degree_coordinates(images[p], w));
            layers_.push_back({positions, intlin::LeftSolver(lead)});
        }
    }

    PcElement normal_form(TruncatedElement u) const
    {
        PcElement x(weights_.size(), 0);
        for (int w = 1; w <= c_; ++w) {
            const auto &layer = layers_[w - 1];
            const auto coeffs = layer.solver.solve(degree_coordinates(u, w));
            if (!coeffs)
                throw InternalError(fmt::format("Magnus peeling failed at weight {}", w));
            TruncatedElement factor = TruncatedElement::one(k_, c_ + 1);
            for (size_t t = 0; t < layer.positions.size(); ++t) {
                const BigInt &e = (*coeffs)[t];
                if (e == 0)
                    continue;
                if (!e.fits_slong_p())
                    throw CapExceeded("Magnus exponent overflow");
                x[layer.positions[t]] = e.get_si();
                factor = factor * unit_power(images_[layer.positions[t]], e.get_si());
            }
            u = factor.unit_inverse() * u;
        }
        if (!(u == TruncatedElement::one(k_, c_ + 1)))
            throw InternalError("Magnus peeling left a remainder");
        return x;
    }

  private:
    static IntVector degree_coordinates(const TruncatedElement &u, int w)
    {
        const auto &b = u.basis();
        IntVector v(b.count(w));
        for (size_t i = 0; i < v.size(); ++i)
            v[i] = u.coefficient(b.offset(w) + i);
        return v;
    }

    struct Layer {
        std::vector<int> positions;
        intlin::LeftSolver solver;
    };

    int k_;
    int c_;
    std::vector<int> weights_;
    const std::vector<TruncatedElement> &images_;
    std::vector<Layer> layers_;
};

} // namespace

FreeNilpotent free_nilpotent(int k, int c)
{
    if (k < 0)
        throw InputError("free nilpotent group needs k >= 0");
    if (c < 1 || c > max_class)
        throw InputError(fmt::format("nilpotency class {} outside the supported range 1..{}", c, max_class));

    FreeNilpotent fn;
    fn.rank = k;
    fn.nilpotency_class = c;
    std::vector<int> weights;
    for (int j = 0; j < k; ++j) {
        fn.basis.push_back({j, -1, -1});
        weights.push_back(1);
    }
    for (int w = 2; w <= c; ++w) {
        const int existing = static_cast<int>(fn.basis.size());
        for (int u = 0; u < existing; ++u)
            for (int v = 0; v < u; ++v) {
                if (weights[u] + weights[v] != w)
                    continue;
                if (fn.basis[u].generator < 0 && fn.basis[u].right > v)
                    continue;
                fn.basis.push_back({-1, u, v});
                weights.push_back(w);
            }
    }
    const int s = static_cast<int>(fn.basis.size());

    std::vector<std::string> names;
    for (int p = 0; p < s; ++p) {
        const auto &b = fn.basis[p];
        names.push_back(b.generator >= 0 ? fmt::format("x{}", b.generator + 1)
                                         : fmt::format("[{},{}]", names[b.left], names[b.right]));
    }

    PcRelations rel;
    rel.weights = weights;
    rel.relative_orders.assign(s, 0);
    rel.powers.assign(s, PcElement(s, 0));
    rel.conjugates.assign(s, std::vector<PcElement>(s, PcElement(s, 0)));
    rel.names = names;

    if (s > 0) {
        const int order = c + 1;
        std::vector<TruncatedElement> images;
        std::vector<TruncatedElement> inverses;
        for (int p = 0; p < s; ++p) {
            const auto &b = fn.basis[p];
            if (b.generator >= 0)
                images.push_back(TruncatedElement::one(k, order) + TruncatedElement::variable(k, order, b.generator));
            else
                images.push_back(inverses[b.left] * inverses[b.right] * images[b.left] * images[b.right]);
            inverses.push_back(images.back().unit_inverse());
        }
        MagnusPeeler peeler(k, c, weights, images);
        for (int j = 0; j < s; ++j)
            for (int i = 0; i < j; ++i) {
                PcElement conj(s, 0);
                if (weights[i] + weights[j] <= c) {
                    // a_i^-1 a_j a_i = a_j [a_j, a_i]
                    conj = peeler.normal_form(inverses[j] * inverses[i] * images[j] * images[i]);
                    if (conj[j] != 0)
                        throw InternalError("commutator of basic commutators has a wrong leading term");
                }
                conj[j] = 1;
                rel.conjugates[j][i] = conj;
            }
    }
    fn.group = std::make_shared<const PcPresentation>(std::move(rel));
    return fn;
}

} // namespace blimwb::nilpotent
