#include "blimwb/intlin/lattice.h"

#include "blimwb/error.h"
#include "blimwb/intlin/abelian.h"

#include <fmt/format.h>

namespace blimwb::intlin {

namespace {

void check_ambient(size_t a, size_t b, const char *what)
{
    if (a != b)
        throw InputError(fmt::format("{}: ambient rank mismatch ({} vs {})", what, a, b));
}

} // namespace

Lattice Lattice::span(const IntMatrix &generators)
{
    Lattice l(generators.cols());
    l.add(generators);
    return l;
}

Lattice Lattice::span(const std::vector<IntVector> &generators, size_t ambient_rank)
{
    return span(IntMatrix::from_rows(generators, ambient_rank));
}

Lattice Lattice::full(size_t ambient_rank) { return span(IntMatrix::identity(ambient_rank)); }

void Lattice::rebuild(const IntMatrix &rows)
{
    Hermite h = hermite_normal_form(rows, false);
    h.h.truncate_rows(h.rank);
    basis_ = std::move(h.h);
    pivots_ = std::move(h.pivots);
}

void Lattice::add(std::span<const BigInt> v)
{
    check_ambient(v.size(), ambient_rank(), "Lattice::add");
    if (intlin::is_zero(v) || contains(v))
        return;
    IntMatrix m = basis_;
    m.append_row(v);
    rebuild(m);
}

void Lattice::add(const IntMatrix &rows)
{
    check_ambient(rows.cols(), ambient_rank(), "Lattice::add");
    const size_t chunk = std::max<size_t>(32, ambient_rank());
    size_t r = 0;
    while (r < rows.rows()) {
        IntMatrix m = basis_;
        size_t added = 0;
        for (; r < rows.rows() && added < chunk; ++r) {
            if (intlin::is_zero(rows.row(r)))
                continue;
            m.append_row(rows.row(r));
            ++added;
        }
        if (added)
            rebuild(m);
    }
}

IntVector Lattice::reduce(std::span<const BigInt> v) const
{
    check_ambient(v.size(), ambient_rank(), "Lattice::reduce");
    IntVector out(v.begin(), v.end());
    for (size_t r = 0; r < basis_.rows(); ++r) {
        const size_t p = pivots_[r];
        if (out[p] == 0)
            continue;
        BigInt q = floor_div(out[p], basis_(r, p));
        if (q == 0)
            continue;
        for (size_t c = p; c < out.size(); ++c)
            if (basis_(r, c) != 0)
                mpz_submul(out[c].get_mpz_t(), q.get_mpz_t(), basis_(r, c).get_mpz_t());
    }
    return out;
}

bool Lattice::contains(std::span<const BigInt> v) const
{
    // exact divisibility down the echelon
    check_ambient(v.size(), ambient_rank(), "Lattice::contains");
    IntVector rest(v.begin(), v.end());
    size_t r = 0;
    for (size_t c = 0; c < rest.size(); ++c) {
        if (r < basis_.rows() && pivots_[r] == c) {
            if (rest[c] != 0) {
                if (!mpz_divisible_p(rest[c].get_mpz_t(), basis_(r, c).get_mpz_t()))
                    return false;
                BigInt q = rest[c] / basis_(r, c);
                for (size_t k = c; k < rest.size(); ++k)
                    if (basis_(r, k) != 0)
                        mpz_submul(rest[k].get_mpz_t(), q.get_mpz_t(), basis_(r, k).get_mpz_t());
            }
            ++r;
        } else if (rest[c] != 0) {
            return false;
        }
    }
    return true;
}

bool Lattice::contains(const Lattice &other) const
{
    check_ambient(other.ambient_rank(), ambient_rank(), "Lattice::contains");
    for (size_t r = 0; r < other.rank(); ++r)
        if (!contains(other.basis_.row(r)))
            return false;
    return true;
}

bool Lattice::operator==(const Lattice &other) const
{
    return ambient_rank() == other.ambient_rank() && basis_ == other.basis_;
}

Lattice lattice_sum(const Lattice &a, const Lattice &b)
{
    check_ambient(a.ambient_rank(), b.ambient_rank(), "lattice_sum");
    Lattice s = a;
    s.add(b.basis());
    return s;
}

Lattice lattice_intersect(const Lattice &a, const Lattice &b)
{
    check_ambient(a.ambient_rank(), b.ambient_rank(), "lattice_intersect");
    if (a.is_zero() || b.is_zero())
        return Lattice(a.ambient_rank());
    IntMatrix stacked = a.basis();
    stacked.append_rows(b.basis());
    IntMatrix k = left_kernel(stacked);
    // x = s * A for each kernel vector (s, t)
    IntMatrix s(k.rows(), a.rank());
    for (size_t r = 0; r < k.rows(); ++r)
        for (size_t c = 0; c < a.rank(); ++c)
            s(r, c) = k(r, c);
    return Lattice::span(s * a.basis());
}

Lattice preimage(const IntMatrix &m, const Lattice &target)
{
    check_ambient(m.cols(), target.ambient_rank(), "preimage");
    IntMatrix stacked = m;
    stacked.append_rows(target.basis());
    IntMatrix k = left_kernel(stacked);
    IntMatrix s(k.rows(), m.rows());
    for (size_t r = 0; r < k.rows(); ++r)
        for (size_t c = 0; c < m.rows(); ++c)
            s(r, c) = k(r, c);
    return Lattice::span(s);
}

FgAbelian quotient_invariants(const Lattice &l)
{
    std::vector<BigInt> orders;
    for (const auto &d : elementary_divisors(l.basis()))
        orders.push_back(d);
    for (size_t i = l.rank(); i < l.ambient_rank(); ++i)
        orders.push_back(0);
    return FgAbelian::from_cyclic(orders);
}

FgAbelian quotient_invariants(const Lattice &outer, const Lattice &inner)
{
    check_ambient(outer.ambient_rank(), inner.ambient_rank(), "quotient_invariants");
    LeftSolver solver(outer.basis());
    IntMatrix coords(0, outer.rank());
    for (size_t r = 0; r < inner.rank(); ++r) {
        auto c = solver.solve(inner.basis().row(r));
        if (!c)
            throw InputError("quotient_invariants: inner lattice is not contained in outer");
        coords.append_row(*c);
    }
    return quotient_invariants(Lattice::span(coords));
}

} // namespace blimwb::intlin
