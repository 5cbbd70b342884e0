#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blimwb::intlin {

using BigInt = mpz_class;
using IntVector = std::vector<BigInt>;

/// Dense row-major matrix of arbitrary-precision integers. Rows are the
/// primary view: lattices are row spans and maps act on row vectors from the
/// right (v -> v * M).
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static IntMatrix identity(size_t n);
    static IntMatrix from_rows(const std::vector<IntVector> &rows, size_t cols);
    static IntMatrix from_ints(const std::vector<std::vector<long>> &rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    BigInt &operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const BigInt &operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    std::span<BigInt> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const BigInt> row(size_t r) const { return {data_.data() + r * cols_, cols_}; }
    IntVector row_vector(size_t r) const;
    std::vector<IntVector> row_vectors() const;

    void append_row(std::span<const BigInt> v);
    void append_rows(const IntMatrix &other);
    void swap_rows(size_t a, size_t b);
    /// row(dst) += factor * row(src)
    void add_row_multiple(size_t dst, size_t src, const BigInt &factor);
    void negate_row(size_t r);
    void truncate_rows(size_t n);
    void set_cols(size_t cols); // only valid while rows() == 0

    IntMatrix transpose() const;
    bool is_zero() const;

    friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
    bool operator==(const IntMatrix &) const = default;

    std::string to_string() const;

  private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<BigInt> data_;
};

IntVector vec_times_matrix(std::span<const BigInt> v, const IntMatrix &m);
bool is_zero(std::span<const BigInt> v);

/// Floor division, remainder in [0, |b|).
BigInt floor_div(const BigInt &a, const BigInt &b);
BigInt mod_floor(const BigInt &a, const BigInt &b);

struct Hermite {
    IntMatrix h; // row Hermite normal form, zero rows at the bottom
    IntMatrix u; // unimodular, u * m == h (empty unless requested)
    size_t rank = 0;
    std::vector<size_t> pivots; // pivot column of each nonzero row
};

/// Row Hermite normal form: nonzero rows first, strictly increasing pivot
/// columns, positive pivots, entries above a pivot reduced into [0, pivot).
Hermite hermite_normal_form(const IntMatrix &m, bool with_transform = true);

struct Smith {
    IntMatrix d; // diagonal, d_1 | d_2 | ...
    IntMatrix u; // unimodular, rows x rows
    IntMatrix v; // unimodular, cols x cols
    size_t rank = 0;
};

/// u * m * v == d with a nonnegative diagonal divisibility chain.
Smith smith_normal_form(const IntMatrix &m, bool with_transform = true);

/// Nonzero diagonal entries of the Smith form only.
std::vector<BigInt> elementary_divisors(const IntMatrix &m);

/// Basis (HNF rows) of {y : y * m == 0}.
IntMatrix left_kernel(const IntMatrix &m);

/// Some integer c with c * b == v, if one exists.
std::optional<IntVector> solve_left(const IntMatrix &b, std::span<const BigInt> v);

/// Precomputed solver for repeated c * b == v queries against a fixed b.
class LeftSolver {
  public:
    explicit LeftSolver(const IntMatrix &b);
    std::optional<IntVector> solve(std::span<const BigInt> v) const;
    size_t rank() const { return herm_.rank; }

  private:
    size_t rows_ = 0;
    Hermite herm_;
};

BigInt determinant(const IntMatrix &m);

} // namespace blimwb::intlin
