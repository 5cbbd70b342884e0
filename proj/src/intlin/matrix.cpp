#include "blimwb/intlin/matrix.h"

#include "blimwb/error.h"

#include <fmt/format.h>

#include <algorithm>

namespace blimwb::intlin {

namespace {

int cmpabs(const BigInt &a, const BigInt &b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

} // namespace

IntMatrix IntMatrix::identity(size_t n)
{
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector> &rows, size_t cols)
{
    IntMatrix m(0, cols);
    for (const auto &r : rows)
        m.append_row(r);
    return m;
}

IntMatrix IntMatrix::from_ints(const std::vector<std::vector<long>> &rows)
{
    const size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw InputError("ragged integer matrix");
        for (size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

IntVector IntMatrix::row_vector(size_t r) const
{
    auto s = row(r);
    return IntVector(s.begin(), s.end());
}

std::vector<IntVector> IntMatrix::row_vectors() const
{
    std::vector<IntVector> out;
    out.reserve(rows_);
    for (size_t r = 0; r < rows_; ++r)
        out.push_back(row_vector(r));
    return out;
}

void IntMatrix::append_row(std::span<const BigInt> v)
{
    if (v.size() != cols_)
        throw InternalError(fmt::format("append_row: width {} vs {}", v.size(), cols_));
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
}

void IntMatrix::append_rows(const IntMatrix &other)
{
    if (other.rows_ == 0)
        return;
    if (other.cols_ != cols_)
        throw InternalError("append_rows: width mismatch");
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    rows_ += other.rows_;
}

void IntMatrix::swap_rows(size_t a, size_t b)
{
    if (a == b)
        return;
    for (size_t c = 0; c < cols_; ++c)
        std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::add_row_multiple(size_t dst, size_t src, const BigInt &factor)
{
    if (factor == 0)
        return;
    BigInt *d = data_.data() + dst * cols_;
    const BigInt *s = data_.data() + src * cols_;
    for (size_t c = 0; c < cols_; ++c)
        if (s[c] != 0)
            mpz_addmul(d[c].get_mpz_t(), s[c].get_mpz_t(), factor.get_mpz_t());
}

void IntMatrix::negate_row(size_t r)
{
    for (auto &x : row(r))
        x = -x;
}

void IntMatrix::truncate_rows(size_t n)
{
    if (n >= rows_)
        return;
    rows_ = n;
    data_.resize(rows_ * cols_);
}

void IntMatrix::set_cols(size_t cols)
{
    if (rows_ != 0)
        throw InternalError("set_cols on non-empty matrix");
    cols_ = cols;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const BigInt &x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b)
{
    if (a.cols_ != b.rows_)
        throw InternalError(fmt::format("matrix product {}x{} * {}x{}", a.rows_, a.cols_, b.rows_, b.cols_));
    IntMatrix p(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k) {
            const BigInt &x = a(i, k);
            if (x == 0)
                continue;
            for (size_t j = 0; j < b.cols_; ++j)
                if (b(k, j) != 0)
                    mpz_addmul(p(i, j).get_mpz_t(), x.get_mpz_t(), b(k, j).get_mpz_t());
        }
    return p;
}

std::string IntMatrix::to_string() const
{
    std::string s = "[";
    for (size_t r = 0; r < rows_; ++r) {
        s += r ? ", [" : "[";
        for (size_t c = 0; c < cols_; ++c)
            s += (c ? " " : "") + (*this)(r, c).get_str();
        s += "]";
    }
    return s + "]";
}

IntVector vec_times_matrix(std::span<const BigInt> v, const IntMatrix &m)
{
    if (v.size() != m.rows())
        throw InternalError("vec_times_matrix: size mismatch");
    IntVector out(m.cols());
    for (size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0)
            continue;
        for (size_t j = 0; j < m.cols(); ++j)
            if (m(k, j) != 0)
                mpz_addmul(out[j].get_mpz_t(), v[k].get_mpz_t(), m(k, j).get_mpz_t());
    }
    return out;
}

bool is_zero(std::span<const BigInt> v)
{
    return std::all_of(v.begin(), v.end(), [](const BigInt &x) { return x == 0; });
}

BigInt floor_div(const BigInt &a, const BigInt &b)
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt mod_floor(const BigInt &a, const BigInt &b)
{
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

namespace {

BigInt trunc_div(const BigInt &a, const BigInt &b)
{
    BigInt q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

void swap_cols(IntMatrix &m, size_t a, size_t b)
{
    if (a == b)
        return;
    for (size_t r = 0; r < m.rows(); ++r)
        std::swap(m(r, a), m(r, b));
}

// col(dst) += factor * col(src)
void add_col_multiple(IntMatrix &m, size_t dst, size_t src, const BigInt &factor)
{
    if (factor == 0)
        return;
    for (size_t r = 0; r < m.rows(); ++r)
        if (m(r, src) != 0)
            mpz_addmul(m(r, dst).get_mpz_t(), m(r, src).get_mpz_t(), factor.get_mpz_t());
}

} // namespace

Hermite hermite_normal_form(const IntMatrix &m, bool with_transform)
{
    Hermite res;
    res.h = m;
    IntMatrix &h = res.h;
    if (with_transform)
        res.u = IntMatrix::identity(m.rows());
    auto row_op = [&](size_t dst, size_t src, const BigInt &f) {
        h.add_row_multiple(dst, src, f);
        if (with_transform)
            res.u.add_row_multiple(dst, src, f);
    };
    auto swap = [&](size_t a, size_t b) {
        h.swap_rows(a, b);
        if (with_transform)
            res.u.swap_rows(a, b);
    };

    size_t r = 0;
    for (size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
        while (true) {
            size_t best = h.rows();
            for (size_t i = r; i < h.rows(); ++i) {
                if (h(i, c) == 0)
                    continue;
                if (best == h.rows() || cmpabs(h(i, c), h(best, c)) < 0)
                    best = i;
            }
            if (best == h.rows())
                break;
            swap(best, r);
            bool clean = true;
            for (size_t i = r + 1; i < h.rows(); ++i) {
                if (h(i, c) == 0)
                    continue;
                row_op(i, r, -trunc_div(h(i, c), h(r, c)));
                if (h(i, c) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (h(r, c) == 0)
            continue;
        if (h(r, c) < 0) {
            h.negate_row(r);
            if (with_transform)
                res.u.negate_row(r);
        }
        for (size_t i = 0; i < r; ++i) {
            if (h(i, c) == 0)
                continue;
            BigInt q = floor_div(h(i, c), h(r, c));
            if (q != 0)
                row_op(i, r, -q);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

Smith smith_normal_form(const IntMatrix &m, bool with_transform)
{
    Smith res;
    res.d = m;
    IntMatrix &d = res.d;
    const size_t R = d.rows(), C = d.cols();
    if (with_transform) {
        res.u = IntMatrix::identity(R);
        res.v = IntMatrix::identity(C);
    }
    auto row_op = [&](size_t dst, size_t src, const BigInt &f) {
        d.add_row_multiple(dst, src, f);
        if (with_transform)
            res.u.add_row_multiple(dst, src, f);
    };
    auto col_op = [&](size_t dst, size_t src, const BigInt &f) {
        add_col_multiple(d, dst, src, f);
        if (with_transform)
            add_col_multiple(res.v, dst, src, f);
    };
    auto rswap = [&](size_t a, size_t b) {
        d.swap_rows(a, b);
        if (with_transform)
            res.u.swap_rows(a, b);
    };
    auto cswap = [&](size_t a, size_t b) {
        swap_cols(d, a, b);
        if (with_transform)
            swap_cols(res.v, a, b);
    };

    size_t t = 0;
    for (; t < std::min(R, C); ++t) {
        // initial pivot: smallest nonzero entry of the remaining block
        size_t bi = R, bj = C;
        for (size_t i = t; i < R; ++i)
            for (size_t j = t; j < C; ++j)
                if (d(i, j) != 0 && (bi == R || cmpabs(d(i, j), d(bi, bj)) < 0)) {
                    bi = i;
                    bj = j;
                }
        if (bi == R)
            break;
        rswap(t, bi);
        cswap(t, bj);

        while (true) {
            // column phase
            while (true) {
                size_t best = R;
                for (size_t i = t; i < R; ++i)
                    if (d(i, t) != 0 && (best == R || cmpabs(d(i, t), d(best, t)) < 0))
                        best = i;
                rswap(t, best);
                bool clean = true;
                for (size_t i = t + 1; i < R; ++i) {
                    if (d(i, t) == 0)
                        continue;
                    row_op(i, t, -trunc_div(d(i, t), d(t, t)));
                    if (d(i, t) != 0)
                        clean = false;
                }
                if (clean)
                    break;
            }
            // row phase
            bool touched = false;
            while (true) {
                size_t best = C;
                for (size_t j = t; j < C; ++j)
                    if (d(t, j) != 0 && (best == C || cmpabs(d(t, j), d(t, best)) < 0))
                        best = j;
                if (best != t) {
                    cswap(t, best);
                    touched = true;
                }
                bool clean = true;
                for (size_t j = t + 1; j < C; ++j) {
                    if (d(t, j) == 0)
                        continue;
                    col_op(j, t, -trunc_div(d(t, j), d(t, t)));
                    if (d(t, j) != 0)
                        clean = false;
                }
                if (clean)
                    break;
                touched = true;
            }
            if (touched) {
                bool dirty = false;
                for (size_t i = t + 1; i < R && !dirty; ++i)
                    dirty = d(i, t) != 0;
                if (dirty)
                    continue;
            }
            // divisibility of the remaining block by the pivot
            size_t bad = R;
            for (size_t i = t + 1; i < R && bad == R; ++i)
                for (size_t j = t + 1; j < C; ++j)
                    if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == R)
                break;
            row_op(t, bad, 1);
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            if (with_transform)
                res.u.negate_row(t);
        }
    }
    res.rank = t;
    return res;
}

std::vector<BigInt> elementary_divisors(const IntMatrix &m)
{
    Hermite h = hermite_normal_form(m, false);
    IntMatrix square = h.h;
    square.truncate_rows(h.rank);
    // compress to the pivot columns plus the rest; SNF is column-permutation invariant
    Smith s = smith_normal_form(square, false);
    std::vector<BigInt> out;
    for (size_t i = 0; i < s.rank; ++i)
        out.push_back(s.d(i, i));
    return out;
}

IntMatrix left_kernel(const IntMatrix &m)
{
    Hermite h = hermite_normal_form(m, true);
    IntMatrix k(0, m.rows());
    for (size_t r = h.rank; r < m.rows(); ++r)
        k.append_row(h.u.row(r));
    if (k.rows() == 0)
        return k;
    Hermite kh = hermite_normal_form(k, false);
    kh.h.truncate_rows(kh.rank);
    return kh.h;
}

LeftSolver::LeftSolver(const IntMatrix &b) : rows_(b.rows()), herm_(hermite_normal_form(b, true)) {}

std::optional<IntVector> LeftSolver::solve(std::span<const BigInt> v) const
{
    const IntMatrix &h = herm_.h;
    if (v.size() != h.cols())
        throw InternalError("LeftSolver: width mismatch");
    IntVector rest(v.begin(), v.end());
    IntVector y(herm_.rank);
    for (size_t r = 0; r < herm_.rank; ++r) {
        const size_t p = herm_.pivots[r];
        if (rest[p] == 0)
            continue;
        if (!mpz_divisible_p(rest[p].get_mpz_t(), h(r, p).get_mpz_t()))
            return std::nullopt;
        y[r] = rest[p] / h(r, p);
        for (size_t c = p; c < h.cols(); ++c)
            if (h(r, c) != 0)
                mpz_submul(rest[c].get_mpz_t(), y[r].get_mpz_t(), h(r, c).get_mpz_t());
    }
    if (!is_zero(rest))
        return std::nullopt;
    IntVector c(rows_);
    for (size_t r = 0; r < herm_.rank; ++r) {
        if (y[r] == 0)
            continue;
        for (size_t j = 0; j < rows_; ++j)
            if (herm_.u(r, j) != 0)
                mpz_addmul(c[j].get_mpz_t(), y[r].get_mpz_t(), herm_.u(r, j).get_mpz_t());
    }
    return c;
}

std::optional<IntVector> solve_left(const IntMatrix &b, std::span<const BigInt> v)
{
    return LeftSolver(b).solve(v);
}

BigInt determinant(const IntMatrix &m)
{
    if (m.rows() != m.cols())
        throw InternalError("determinant of non-square matrix");
    const size_t n = m.rows();
    if (n == 0)
        return 1;
    // Bareiss fraction-free elimination
    IntMatrix a = m;
    BigInt sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            size_t s = k + 1;
            while (s < n && a(s, k) == 0)
                ++s;
            if (s == n)
                return 0;
            a.swap_rows(k, s);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                BigInt t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

} // namespace blimwb::intlin
