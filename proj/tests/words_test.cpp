#include "blimwb/error.h"
#include "blimwb/words.h"
#include "support.h"

#include <doctest.h>

using namespace blimwb::words;
using testsupport::g;

TEST_CASE("reduce cancels and merges")
{
    CHECK(Word::reduce({{0, 1}, {0, -1}}).empty());
    CHECK(Word::reduce({}).empty());
    CHECK(Word::reduce({{0, 1}, {1, 1}, {1, -1}, {0, 1}}) == g(0, 2));
    CHECK(Word::reduce({{0, 0}, {1, 2}}) == g(1, 2));
}

TEST_CASE("reduce_checked rejects unknown generators")
{
    CHECK_THROWS_AS(reduce_checked({{2, 1}}, 2), blimwb::InputError);
    CHECK(reduce_checked({{1, 1}}, 2) == g(1));
}

TEST_CASE("word arithmetic")
{
    const Word x = g(0), y = g(1);
    CHECK(word_arith(WordOp::commutator, x, x).empty());
    CHECK(word_arith(WordOp::inverse, g(0, 2) * g(1, -1), {}) == y * g(0, -2));
    CHECK(commutator(x, y) == Word::reduce({{0, -1}, {1, -1}, {0, 1}, {1, 1}}));
    CHECK(conjugate(x, y) == Word::reduce({{1, -1}, {0, 1}, {1, 1}}));
    CHECK(word_arith(WordOp::multiply, x, y) == x * y);
    CHECK(g(0, 2).pow(-2) == g(0, -4));
}

TEST_CASE("reduced words are stable under reduce and inverse")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const Word w = testsupport::random_word(rng, 3, 12);
        CHECK(Word::reduce(w.letters()) == w);
        CHECK((w * w.inverse()).empty());
        CHECK((w.inverse() * w).empty());
        for (size_t j = 1; j < w.letters().size(); ++j)
            CHECK(w.letters()[j].gen != w.letters()[j - 1].gen);
    }
}

TEST_CASE("apply_map substitutes and reduces")
{
    const Word x = g(0), y = g(1);
    GroupMap id = GroupMap::identity(2);
    CHECK(apply_map(id, x * y) == x * y);
    GroupMap sq{1, {g(0, 2)}};
    CHECK(apply_map(sq, g(0, -1)) == g(0, -2));
    GroupMap collapse{1, {g(0), g(0)}};
    CHECK(apply_map(collapse, commutator(x, y)).empty());
    CHECK_THROWS_AS(apply_map(GroupMap{1, {g(0)}}, y), blimwb::InputError);
}

TEST_CASE("apply_map is a homomorphism")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        GroupMap m{2, {testsupport::random_word(rng, 2, 3), testsupport::random_word(rng, 2, 3),
                       testsupport::random_word(rng, 2, 3)}};
        const Word u = testsupport::random_word(rng, 3, 6), v = testsupport::random_word(rng, 3, 6);
        CHECK(apply_map(m, u * v) == apply_map(m, u) * apply_map(m, v));
    }
}

TEST_CASE("compose agrees with successive application")
{
    std::mt19937_64 rng(8);
    GroupMap inner{3, {testsupport::random_word(rng, 3, 4), testsupport::random_word(rng, 3, 4)}};
    GroupMap outer{2, {testsupport::random_word(rng, 2, 4), testsupport::random_word(rng, 2, 4),
                       testsupport::random_word(rng, 2, 4)}};
    for (int i = 0; i < 50; ++i) {
        const Word w = testsupport::random_word(rng, 2, 8);
        CHECK(apply_map(compose(outer, inner), w) == apply_map(outer, apply_map(inner, w)));
    }
}

TEST_CASE("coproduct of a rank one presentation")
{
    auto c = coproduct(testsupport::pres("Z", {"x"}, {}));
    CHECK(c.presentation.generator_names == std::vector<std::string>{"x", "x'"});
    REQUIRE(c.presentation.relators.size() == 1);
    CHECK(c.presentation.relators[0] == g(0) * g(1, -1));
    CHECK(apply_map(c.first, g(0)) == g(0));
    CHECK(apply_map(c.second, g(0)) == g(1));

    auto c2 = coproduct(testsupport::pres("C2", {"x"}, {g(0, 2)}));
    CHECK(c2.presentation.relators == std::vector<Word>{g(0, 2), g(1, 2), g(0) * g(1, -1)});
    CHECK(apply_map(c2.second, g(0, 2)) == g(1, 2));
}

TEST_CASE("fold after either injection is the identity")
{
    std::mt19937_64 rng(3);
    for (const auto &e : testsupport::finite_corpus()) {
        auto c = coproduct(e.presentation);
        for (int i = 0; i < 40; ++i) {
            const Word w = testsupport::random_word(rng, e.presentation.rank(), 8);
            CHECK(apply_map(c.fold, apply_map(c.first, w)) == w);
            CHECK(apply_map(c.fold, apply_map(c.second, w)) == w);
        }
    }
}

TEST_CASE("presentation validation")
{
    CHECK_THROWS_AS(testsupport::pres("bad", {"x", "x"}, {}).validate(), blimwb::InputError);
    CHECK_THROWS_AS(testsupport::pres("bad", {"x"}, {g(1)}).validate(), blimwb::InputError);
    CHECK_NOTHROW(testsupport::pres("ok", {"x", "y"}, {g(1, 3)}).validate());
}

TEST_CASE("format_word")
{
    const std::vector<std::string> names{"x", "y"};
    CHECK(format_word({}, names) == "1");
    CHECK(format_word(g(0, 2) * g(1, -1), names) == "x^2*y^-1");
}
