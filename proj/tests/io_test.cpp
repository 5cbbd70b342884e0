#include "blimwb/catcoh/random.h"
#include "blimwb/error.h"
#include "blimwb/io/category_json.h"
#include "blimwb/io/presentation.h"
#include "blimwb/io/report.h"
#include "support.h"

#include <doctest.h>

#include <cstdlib>
#include <string>

using namespace blimwb;
using namespace testsupport;
using io::Json;

namespace {

const std::string corpus = BLIMWB_CORPUS_DIR;

std::string error_of(const std::string &text)
{
    try {
        io::parse_presentation(text);
    } catch (const InputError &e) {
        return e.what();
    }
    return "";
}

std::vector<words::FreePresentation> main_corpus()
{
    std::vector<words::FreePresentation> out;
    for (const char *n : {"C2", "C4", "C2xC2", "Q8", "D4", "S3"})
        out.push_back(io::load_presentation(corpus + "/presentations/" + n + ".pres"));
    return out;
}

} // namespace

TEST_CASE("presentation grammar")
{
    const auto c2 = io::parse_presentation("gens: x\nrels: x^2");
    CHECK(c2.rank() == 1);
    CHECK(c2.relators == std::vector<Word>{g(0, 2)});

    const auto ab = io::parse_presentation("gens: x,y\nrels: [x,y]");
    CHECK(ab.relators == std::vector<Word>{g(0, -1) * g(1, -1) * g(0) * g(1)});

    const auto eq = io::parse_presentation("gens: x, y\nrels: x = y");
    CHECK(eq.relators == std::vector<Word>{g(0) * g(1, -1)});

    const auto mixed = io::parse_presentation("# comment\n  gens :x , y   # trailing\n\n"
                                              "rels: (x*y)^2, [x,y]^2, 1\nrels: y*x = x*y\n");
    CHECK(mixed.relators.size() == 4);
    CHECK(mixed.relators[0] == (g(0) * g(1)).pow(2));
    CHECK(mixed.relators[1] == words::commutator(g(0), g(1)).pow(2));
    CHECK(mixed.relators[2].empty());
    CHECK(mixed.relators[3] == g(1) * g(0) * g(1, -1) * g(0, -1));

    const auto primed = io::parse_presentation("gens: x, x'\nrels: x*x'^-1");
    CHECK(primed.relators == std::vector<Word>{g(0) * g(1, -1)});
}

TEST_CASE("presentation errors carry positions")
{
    CHECK(error_of("gens: x\nrels: x^2*y") == "2:11: unknown generator 'y'");
    CHECK(error_of("gens: x\nrels: x^0") == "2:9: zero exponent");
    CHECK(error_of("rels: x") == "1:1: relators before 'gens:'");
    CHECK(error_of("gens: x, x") == "1: duplicate generator 'x'");
    CHECK(error_of("gens: x\nrels: [x, x") == "2:12: expected ']'");
    CHECK(error_of("gens: x\nrels: x^") == "2:9: expected an integer exponent");
    CHECK(error_of("gens: x\nfoo: x") == "2:1: expected 'gens:' or 'rels:'");
    CHECK(error_of("") == "missing 'gens:' line");
    CHECK(error_of("gens: x\nrels: x x") == "2:9: unexpected character");
}

TEST_CASE("format and parse round-trip")
{
    std::mt19937_64 rng(99);
    for (int t = 0; t < 200; ++t) {
        const int rank = 1 + t % 3;
        auto p = free_presentation(rank);
        for (int r = 0; r < 1 + t % 4; ++r)
            p.relators.push_back(random_word(rng, rank, 1 + t % 7, 5));
        const auto q = io::parse_presentation(io::format_presentation(p), p.name);
        CHECK(q.generator_names == p.generator_names);
        CHECK(q.relators == p.relators);
    }
    for (const auto &p : main_corpus()) {
        const auto q = io::parse_presentation(io::format_presentation(p), p.name);
        CHECK(q.relators == p.relators);
    }
}

TEST_CASE("corpus files match the built-in presentations")
{
    const auto files = main_corpus();
    const auto built = finite_corpus();
    for (size_t i = 0; i < files.size(); ++i) {
        CHECK(files[i].name == built[i].presentation.name);
        CHECK(files[i].relators == built[i].presentation.relators);
    }
}

TEST_CASE("category files")
{
    const auto bc2 = io::load_category(corpus + "/categories/bc2_trivial_z.json");
    io::CatlimOptions opt;
    opt.cmd = "limn";
    auto r = io::run_catlim(bc2, opt);
    CHECK(r.report["invariants"] == Json::array({2}));
    CHECK(r.report["lim"][1]["invariants"] == Json::array());
    CHECK(r.report["is_complex"] == true);

    const auto point = io::load_category(corpus + "/categories/point_z_z3.json");
    CHECK(io::run_catlim(point, opt).report["invariants"] == Json::array({3, 0}));

    const auto cospan = io::load_category(corpus + "/categories/cospan_2_4.json");
    CHECK(cospan.category.object_count() == 3);
    CHECK(io::run_catlim(cospan, opt).report["invariants"] == Json::array({2}));

    for (const char *name : {"d4_bc2_center", "s3_bc2_a3"}) {
        const auto in = io::load_category(corpus + "/categories/" + name + ".json");
        REQUIRE(in.subfunctor.has_value());
        for (const char *cmd : {"lim1", "delta", "seq1", "seq2"}) {
            opt.cmd = cmd;
            const auto out = io::run_catlim(in, opt);
            CHECK(out.exit_code == io::exit_ok);
            if (out.report.contains("exact"))
                CHECK(out.report["exact"] == true);
        }
    }
}

TEST_CASE("category validation diagnostics")
{
    auto message = [](const std::string &text) {
        try {
            io::parse_category(nlohmann::json::parse(text));
        } catch (const InputError &e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(R"({"group": {"cyclic": 2}})") == "category: either 'groups' or 'abelian' is required");
    CHECK(message(R"({"group": {"cyclic": 2}, "groups": {"G": {"cyclic": 3}}, "maps": {"id": [0, 1, 2], "g1": [0, 1, 1]}})")
              .find("not a homomorphism") != std::string::npos);
    CHECK(message(R"({"group": {"library": "Z9"}, "groups": {}, "maps": {}})") == "group: unknown library group 'Z9'");
    CHECK(message(R"({"objects": ["a"], "morphisms": [{"id": "1", "dom": "a", "cod": "a"}], "compose": [["1", "2", "1"]],
                      "abelian": {"a": {"rank": 0}}, "matrices": {"1": []}})") == "compose: unknown morphism '2'");
    CHECK(message(R"({"group": {"cyclic": 2}, "abelian": {"G": {"rank": 1}}, "matrices": {"id": [[1]], "g1": [[1, 0]]}})") ==
          "matrices.g1: expected a 1x1 matrix");
}

TEST_CASE("random instances survive a JSON round trip")
{
    std::mt19937_64 rng(4);
    for (int t = 0; t < 30; ++t) {
        auto inst = catcoh::random_instance(rng);
        auto s = catcoh::random_subfunctor(inst.category, inst.functor, catcoh::SubfunctorKind::any, rng);
        const auto j = io::category_to_json(inst.category, inst.functor, s ? &*s : nullptr);
        const auto in = io::parse_category(nlohmann::json::parse(j.dump()));
        CHECK(in.category.morphism_count() == inst.category.morphism_count());
        CHECK(in.groups->maps == inst.functor.maps);
        CHECK(catcoh::lim1_nonabelian(in.category, *in.groups).orbit_count() ==
              catcoh::lim1_nonabelian(inst.category, inst.functor).orbit_count());
    }
}

TEST_CASE("verify reports are deterministic and ordered by name")
{
    io::VerifyOptions opt;
    opt.n = 4;
    opt.workers = 1;
    const auto cases = main_corpus();
    const auto a = io::run_verify(cases, opt);
    opt.workers = 4;
    const auto b = io::run_verify(cases, opt);
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.exit_code == io::exit_ok);
    CHECK(a.report["schema_version"] == "1");
    std::vector<std::string> names;
    for (const auto &c : a.report["cases"])
        names.push_back(c["name"]);
    CHECK(std::is_sorted(names.begin(), names.end()));
    CHECK(names.size() == 6);
    CHECK(a.report.dump().find("timings_ms") == std::string::npos);
    opt.timings = true;
    CHECK(io::run_verify({cases[0]}, opt).report["cases"][0].contains("timings_ms"));
}

TEST_CASE("verify at n = 3 reports inclusion and a trivial Blim")
{
    io::VerifyOptions opt;
    opt.n = 3;
    const auto r = io::run_verify(main_corpus(), opt);
    CHECK(r.exit_code == io::exit_ok);
    for (const auto &c : r.report["cases"]) {
        CHECK(c["checks"]["inclusion"] == true);
        CHECK(c["blim"]["elements"].size() == 1);
    }
}

TEST_CASE("resource caps map to exit code 3")
{
    io::VerifyOptions opt;
    const auto r = io::run_verify({free_presentation(2)}, opt);
    CHECK(r.exit_code == io::exit_cap);
    CHECK(r.report["cases"][0]["error"]["kind"] == "cap");

    setenv("BLIMWB_CAP", "17", 1);
    CHECK(io::cap_from_env(5) == 17);
    setenv("BLIMWB_CAP", "x", 1);
    CHECK_THROWS_AS(io::cap_from_env(5), InputError);
    unsetenv("BLIMWB_CAP");
    CHECK(io::cap_from_env(5) == 5);
}

TEST_CASE("props and random catlim")
{
    const auto q8 = main_corpus()[3];
    for (const char *which : {"inclusion", "sym", "identity", "mono"}) {
        const auto r = io::run_props(q8, which, 4, 1 << 20);
        CHECK(r.exit_code == io::exit_ok);
        CHECK(r.report["holds"] == true);
    }
    CHECK_THROWS_AS(io::run_props(q8, "nope", 4, 1 << 20), InputError);
    for (const char *cmd : {"seq1", "seq2"})
        for (uint64_t seed = 1; seed <= 5; ++seed) {
            io::CatlimOptions opt;
            opt.cmd = cmd;
            opt.seed = seed;
            const auto in = io::random_category_input(cmd, seed);
            const auto r = io::run_catlim(in, opt);
            CHECK(r.report["exact"] == true);
            CHECK(r.report.dump() == io::run_catlim(io::random_category_input(cmd, seed), opt).report.dump());
        }
}
