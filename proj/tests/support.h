#pragma once

// Shared fixtures for the unit tests: the small-group corpus built directly
// from words, and seeded random words.

#include "blimwb/words.h"

#include <random>
#include <string>
#include <vector>

namespace testsupport {

using blimwb::words::FreePresentation;
using blimwb::words::Word;

inline Word g(int gen, int64_t e = 1) { return Word::generator(gen, e); }

inline FreePresentation pres(std::string name, std::vector<std::string> gens, std::vector<Word> rels)
{
    return FreePresentation{std::move(name), std::move(gens), std::move(rels)};
}

struct CorpusEntry {
    FreePresentation presentation;
    int order; // 0 for infinite groups
};

/// Finite corpus groups with their known orders.
inline std::vector<CorpusEntry> finite_corpus()
{
    const Word x = g(0), y = g(1);
    return {
        {pres("C2", {"x"}, {g(0, 2)}), 2},
        {pres("C4", {"x"}, {g(0, 4)}), 4},
        {pres("C2xC2", {"x", "y"}, {g(0, 2), g(1, 2), blimwb::words::commutator(x, y)}), 4},
        {pres("Q8", {"x", "y"}, {g(0, 4), g(1, 2) * g(0, -2), g(1, -1) * x * y * x}), 8},
        {pres("D4", {"x", "y"}, {g(0, 4), g(1, 2), (x * y).pow(2)}), 8},
        {pres("S3", {"x", "y"}, {g(0, 3), g(1, 2), (x * y).pow(2)}), 6},
        {pres("C2alt", {"x", "y"}, {g(0, 2), y}), 2},
    };
}

inline FreePresentation free_presentation(int rank)
{
    std::vector<std::string> names;
    for (int i = 0; i < rank; ++i)
        names.push_back(std::string(1, static_cast<char>('a' + i)));
    return pres("F" + std::to_string(rank), names, {});
}

inline Word random_word(std::mt19937_64 &rng, int rank, int letters, int max_exp = 3)
{
    std::uniform_int_distribution<int> gen(0, rank - 1);
    std::uniform_int_distribution<int> ex(-max_exp, max_exp);
    std::vector<blimwb::words::Letter> raw;
    for (int i = 0; i < letters; ++i)
        raw.push_back({gen(rng), ex(rng)});
    return Word::reduce(raw);
}

/// Random left-normed commutator of the given weight in random words.
inline Word random_commutator(std::mt19937_64 &rng, int rank, int weight)
{
    Word w = random_word(rng, rank, 3);
    for (int i = 1; i < weight; ++i)
        w = blimwb::words::commutator(w, random_word(rng, rank, 3));
    return w;
}

} // namespace testsupport
