#pragma once

// Free-group words, presentations, homomorphisms between free groups and the
// coproduct of a presentation with itself.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace blimwb::words {

struct Letter {
    int gen = 0;
    int64_t exp = 0;
    bool operator==(const Letter &) const = default;
};

/// Freely reduced word stored run-length encoded: adjacent letters have
/// distinct generators and no exponent is zero.
class Word {
  public:
    Word() = default;

    /// Reduces the given letters (exponents may be zero, adjacent letters may
    /// repeat or cancel).
    static Word reduce(const std::vector<Letter> &raw);
    static Word generator(int gen, int64_t exp = 1);

    const std::vector<Letter> &letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    /// Number of letters counted with multiplicity.
    int64_t length() const;
    /// Largest generator index plus one (0 for the empty word).
    int support() const;

    Word inverse() const;
    Word pow(int64_t e) const;

    friend Word operator*(const Word &u, const Word &v);
    bool operator==(const Word &) const = default;
    auto operator<=>(const Word &) const = default;

  private:
    std::vector<Letter> letters_;
};

Word commutator(const Word &u, const Word &v); // u^-1 v^-1 u v
Word conjugate(const Word &u, const Word &v);  // v^-1 u v

enum class WordOp { multiply, inverse, conjugate, commutator };
/// Dispatches to the word operations; `v` is ignored for `inverse`.
Word word_arith(WordOp op, const Word &u, const Word &v);

/// Checks that all letters of `w` use generators `< rank`.
void check_generators(const Word &w, int rank);

/// Reduces signed letters after checking them against `rank` generators.
Word reduce_checked(const std::vector<Letter> &raw, int rank);

struct FreePresentation {
    std::string name;
    std::vector<std::string> generator_names;
    std::vector<Word> relators;

    int rank() const { return static_cast<int>(generator_names.size()); }
    /// Throws InputError on duplicate names or out-of-range relator letters.
    void validate() const;
};

/// Homomorphism between free groups given by the images of the source
/// generators.
struct GroupMap {
    int target_rank = 0;
    std::vector<Word> images;

    int source_rank() const { return static_cast<int>(images.size()); }
    static GroupMap identity(int rank);
};

Word apply_map(const GroupMap &m, const Word &w);
GroupMap compose(const GroupMap &outer, const GroupMap &inner);

struct Coproduct {
    FreePresentation presentation;
    GroupMap first;
    GroupMap second;
    /// x_j -> x_j and x'_j -> x_j.
    GroupMap fold;
};

/// Presentation of the coproduct c ⊔ c in the category of presentations:
/// generators x_1..x_k, x'_1..x'_k and relators r_i, r'_i, x_j x'_j^-1.
Coproduct coproduct(const FreePresentation &p);

/// Human-readable rendering using the presentation's generator names, in the
/// grammar accepted by the presentation parser ("1" for the empty word).
std::string format_word(const Word &w, const std::vector<std::string> &names);

} // namespace blimwb::words
