#pragma once

// Weighted polycyclic presentations of finitely generated nilpotent groups
// and collection to normal form.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace blimwb::nilpotent {

/// Exponent vector of a normal form a_1^{x_1} ... a_s^{x_s}; entries with a
/// finite relative order e_i lie in [0, e_i).
using PcElement = std::vector<int64_t>;

/// Largest class the workbench supports.
inline constexpr int max_class = 4;

struct PcRelations {
    std::vector<int> weights;
    /// Relative orders; 0 marks an infinite-cyclic factor.
    std::vector<int64_t> relative_orders;
    /// a_i^{e_i} as a normal form supported on positions > i (ignored for
    /// infinite factors).
    std::vector<PcElement> powers;
    /// conjugates[j][i] = a_i^-1 a_j a_i for i < j, supported on positions >= j
    /// with entry 1 at j.
    std::vector<std::vector<PcElement>> conjugates;
    /// Optional display names, one per generator.
    std::vector<std::string> names;
};

class PcPresentation {
  public:
    /// Validates the weight conditions, derives the inverse conjugation
    /// tables and runs the consistency checks; throws InputError on failure.
    explicit PcPresentation(PcRelations rel);

    int size() const { return static_cast<int>(weights_.size()); }
    int weight(int i) const { return weights_[i]; }
    const std::vector<int> &weights() const { return weights_; }
    int64_t relative_order(int i) const { return orders_[i]; }
    const std::vector<int64_t> &relative_orders() const { return orders_; }
    const PcElement &power(int i) const { return powers_[i]; }
    const PcElement &conjugate_relation(int j, int i) const { return conj_[j][i]; }
    const std::string &name(int i) const { return names_[i]; }
    /// Largest weight (0 for the trivial group).
    int nilpotency_bound() const;
    /// First position of weight >= w (size() if none).
    int weight_start(int w) const;
    bool is_finite() const;

    PcElement identity() const { return PcElement(weights_.size(), 0); }
    PcElement generator(int i, int64_t e = 1) const;

    PcElement multiply(const PcElement &x, const PcElement &y) const;
    PcElement inverse(const PcElement &x) const;
    PcElement power(const PcElement &x, int64_t e) const;
    PcElement commutator(const PcElement &x, const PcElement &y) const; // x^-1 y^-1 x y
    PcElement conjugate(const PcElement &x, const PcElement &y) const;  // y^-1 x y
    /// Normal form of a product of generator powers (i, e) in any order.
    PcElement collect(const std::vector<std::pair<int, int64_t>> &letters) const;

    /// Failing overlap descriptions (empty when consistent).
    std::vector<std::string> consistency_failures() const;

    std::string format(const PcElement &x) const;
    void check_element(const PcElement &x) const;

  private:
    PcElement mul_gen_pow(PcElement x, int i, int64_t e) const;
    PcElement conjugate_tail(const PcElement &tail, int i, int64_t e) const;
    PcElement apply_images(const std::vector<PcElement> &images, const PcElement &t, int from) const;

    std::vector<int> weights_;
    std::vector<int64_t> orders_;
    std::vector<PcElement> powers_;
    std::vector<std::vector<PcElement>> conj_;     // a_i^-1 a_j a_i
    std::vector<std::vector<PcElement>> conj_inv_; // a_i a_j a_i^-1
    std::vector<int> fixed_from_;                  // conjugation by a_i fixes positions >= fixed_from_[i]
    std::vector<std::string> names_;
};

using PcGroup = std::shared_ptr<const PcPresentation>;

/// All normal forms of a finite presentation in lexicographic order; throws
/// InfiniteGroup or CapExceeded.
std::vector<PcElement> enumerate_finite(const PcPresentation &q, size_t cap = 1u << 20);

int64_t checked_add(int64_t a, int64_t b);
int64_t checked_mul(int64_t a, int64_t b);

} // namespace blimwb::nilpotent
