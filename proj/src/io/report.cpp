#include "blimwb/io/report.h"

#include "blimwb/catcoh/cochains.h"
#include "blimwb/catcoh/random.h"
#include "blimwb/limits/limits.h"
#include "blimwb/nilpotent/quotient.h"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <random>
#include <thread>

namespace blimwb::io {

using limits::PcElement;

namespace {

Json bigint_json(const intlin::BigInt &v)
{
    if (v.fits_slong_p())
        return v.get_si();
    return v.get_str();
}

Json presentation_json(const words::FreePresentation &p)
{
    Json j;
    j["name"] = p.name;
    j["generators"] = p.generator_names;
    Json rels = Json::array();
    for (const auto &r : p.relators)
        rels.push_back(words::format_word(r, p.generator_names));
    j["relators"] = rels;
    return j;
}

Json pc_group_json(const nilpotent::PcGroup &g)
{
    Json j;
    j["pc_generators"] = g->size();
    j["relative_orders"] = g->relative_orders();
    return j;
}

Json elements_json(const std::vector<PcElement> &xs, const nilpotent::NilpotentQuotient &nq,
                   const words::FreePresentation &p)
{
    Json out = Json::array();
    for (const auto &x : xs)
        out.push_back({{"exponents", x}, {"word", words::format_word(nq.lift(x), p.generator_names)}});
    return out;
}

intlin::FgAbelian subgroup_invariants(const nilpotent::PcGroup &g, const std::vector<PcElement> &xs)
{
    return nilpotent::abelianization(nilpotent::subgroup_closure(g, xs)).invariants();
}

const char *kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::input:
        return "input";
    case ErrorKind::cap:
        return "cap";
    case ErrorKind::internal:
        return "internal";
    }
    return "internal";
}

Json header(const std::string &command)
{
    Json j;
    j["schema_version"] = schema_version;
    j["command"] = command;
    return j;
}

Json subgroups_json(const catcoh::Subfunctor &s)
{
    Json j = Json::array();
    for (const auto &h : s.subgroups)
        j.push_back(h);
    return j;
}

} // namespace

int exit_code_for(const Error &e) { return static_cast<int>(e.kind()); }

Json invariants_json(const intlin::FgAbelian &a)
{
    Json j = Json::array();
    for (const auto &t : a.torsion())
        j.push_back(bigint_json(t));
    for (size_t i = 0; i < a.free_rank(); ++i)
        j.push_back(0);
    return j;
}

Json error_json(const std::string &command, const Error &e)
{
    Json j = header(command);
    j["error"] = {{"kind", kind_name(e.kind())}, {"message", e.what()}};
    return j;
}

size_t cap_from_env(size_t fallback)
{
    const char *v = std::getenv("BLIMWB_CAP");
    if (!v || !*v)
        return fallback;
    char *end = nullptr;
    const unsigned long long c = std::strtoull(v, &end, 10);
    if (*end != '\0' || c == 0)
        throw InputError(fmt::format("BLIMWB_CAP must be a positive integer, got '{}'", v));
    return static_cast<size_t>(c);
}

Json verify_case(const words::FreePresentation &p, const VerifyOptions &opt)
{
    Json j = presentation_json(p);
    j["n"] = opt.n;
    try {
        const auto rep = limits::compare_blim_dimension(p, opt.n, opt.cap ? opt.cap : limits::default_cap, opt.seed);
        const auto nq = nilpotent::nilpotent_quotient(p, opt.n - 1);
        const bool inclusion =
            std::includes(rep.dimension_quotient.begin(), rep.dimension_quotient.end(), rep.blim.begin(), rep.blim.end());
        j["quotient"] = pc_group_json(rep.quotient);
        j["blim"] = {{"invariants", invariants_json(rep.blim_invariants)},
                     {"elements", elements_json(rep.blim, nq, p)}};
        j["dimension_quotient"] = {{"invariants", invariants_json(rep.dimension_quotient_invariants)},
                                   {"elements", elements_json(rep.dimension_quotient, nq, p)}};
        Json checks;
        checks["inclusion"] = inclusion;
        checks["equal"] = rep.equal;
        bool pass = inclusion;
        if (opt.n <= 4)
            pass = pass && rep.equal;
        if (opt.n == 4) {
            checks["exponent_two"] = rep.exponent_two;
            pass = pass && rep.exponent_two;
        }
        j["checks"] = checks;
        j["pass"] = pass;
        if (opt.timings) {
            Json t;
            for (const auto &[k, v] : rep.timings)
                t[k] = v;
            j["timings_ms"] = t;
        }
    } catch (const Error &e) {
        j["error"] = {{"kind", kind_name(e.kind())}, {"message", e.what()}};
        j["pass"] = false;
    }
    return j;
}

Outcome run_verify(const std::vector<words::FreePresentation> &cases, const VerifyOptions &opt)
{
    std::vector<Json> results(cases.size());
    unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, std::max<size_t>(1, cases.size()));
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next++; i < cases.size(); i = next++)
            results[i] = verify_case(cases[i], opt);
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto &t : pool)
        t.join();

    std::vector<size_t> order(cases.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return cases[a].name < cases[b].name; });

    Outcome out;
    out.report = header("verify");
    out.report["n"] = opt.n;
    out.report["seed"] = opt.seed;
    Json list = Json::array();
    bool all = true;
    int worst_error = 0;
    for (size_t i : order) {
        all = all && results[i]["pass"].get<bool>();
        if (results[i].contains("error")) {
            const auto kind = results[i]["error"]["kind"].get<std::string>();
            const int code = kind == "internal" ? exit_internal : kind == "cap" ? exit_cap : exit_input;
            worst_error = std::max(worst_error, code);
        }
        list.push_back(std::move(results[i]));
    }
    out.report["cases"] = list;
    out.report["pass"] = all;
    out.exit_code = worst_error ? worst_error : (all ? exit_ok : exit_failed);
    return out;
}

Outcome run_dimq(const words::FreePresentation &p, int n, size_t cap, uint64_t seed)
{
    const auto xs = limits::dimension_quotient_subgroup(p, n, cap, seed);
    const auto nq = nilpotent::nilpotent_quotient(p, n - 1);
    Outcome out;
    out.report = header("dimq");
    out.report["presentation"] = presentation_json(p);
    out.report["n"] = n;
    out.report["quotient"] = pc_group_json(nq.group());
    out.report["dimension_quotient"] = {{"invariants", invariants_json(subgroup_invariants(nq.group(), xs))},
                                        {"elements", elements_json(xs, nq, p)}};
    return out;
}

Outcome run_blim(const words::FreePresentation &p, int n, size_t cap)
{
    const auto xs = limits::blim_f(p, n, cap);
    const auto nq = nilpotent::nilpotent_quotient(p, n - 1);
    Outcome out;
    out.report = header("blim");
    out.report["presentation"] = presentation_json(p);
    out.report["n"] = n;
    out.report["quotient"] = pc_group_json(nq.group());
    out.report["blim"] = {{"invariants", invariants_json(subgroup_invariants(nq.group(), xs))},
                          {"elements", elements_json(xs, nq, p)}};
    return out;
}

Outcome run_props(const words::FreePresentation &p, const std::string &which, int n, size_t cap)
{
    Outcome out;
    out.report = header("props");
    out.report["which"] = which;
    out.report["presentation"] = presentation_json(p);
    bool holds = false;
    if (which == "inclusion") {
        out.report["n"] = n;
        holds = limits::verify_inclusion(p, n, cap);
    } else if (which == "sym") {
        const auto r = limits::verify_sym_sequence(p);
        out.report["source"] = invariants_json(r.source);
        out.report["target"] = invariants_json(r.target);
        out.report["cokernel"] = invariants_json(r.cokernel);
        out.report["s3"] = invariants_json(r.s3);
        out.report["well_defined"] = r.well_defined;
        out.report["injective"] = r.injective;
        out.report["cokernel_matches"] = r.cokernel_matches;
        holds = r.holds();
    } else if (which == "identity") {
        const auto r = limits::verify_commutator_identity(p);
        out.report["lhs_generators"] = r.lhs.generators().size();
        out.report["rhs_generators"] = r.rhs.generators().size();
        holds = r.equal();
    } else if (which == "mono") {
        out.report["n"] = n;
        const auto r = limits::monoadditive_limit(p, n);
        out.report["limit"] = invariants_json(r.limit);
        holds = r.vanishes();
    } else {
        throw InputError(fmt::format("unknown property '{}'", which));
    }
    out.report["holds"] = holds;
    out.exit_code = holds ? exit_ok : exit_failed;
    return out;
}

Outcome run_catlim(const CategoryInput &in, const CatlimOptions &opt)
{
    const auto &c = in.category;
    Outcome out;
    out.report = header("catlim");
    out.report["cmd"] = opt.cmd;
    out.report["objects"] = c.object_count();
    out.report["morphisms"] = c.morphism_count();
    auto need_groups = [&] {
        if (!in.groups)
            throw InputError(fmt::format("{} needs group-valued coefficients", opt.cmd));
    };
    auto need_subfunctor = [&] {
        need_groups();
        if (!in.subfunctor)
            throw InputError(fmt::format("{} needs a subfunctor", opt.cmd));
    };

    if (opt.cmd == "limn") {
        if (!in.abelian)
            throw InputError("limn needs abelian coefficients");
        const int d = opt.degree.value_or(in.degree);
        if (d < 0)
            throw InputError("degree must be non-negative");
        const auto cx = catcoh::cochain_complex(c, *in.abelian, d);
        out.report["degree"] = d;
        out.report["is_complex"] = catcoh::is_complex(cx);
        Json lims = Json::array();
        for (int k = 0; k <= d; ++k)
            lims.push_back({{"n", k}, {"invariants", invariants_json(catcoh::cohomology(cx, k))}});
        out.report["lim"] = lims;
        out.report["invariants"] = lims.back()["invariants"];
        out.report["lim0_direct"] = invariants_json(catcoh::lim0_direct(c, *in.abelian));
    } else if (opt.cmd == "lim1") {
        need_groups();
        const auto &f = *in.groups;
        const auto l = catcoh::lim1_nonabelian(c, f, catcoh::OrbitMethod::generators, opt.cap);
        out.report["lim0_size"] = catcoh::lim0_direct(c, f).size();
        out.report["cocycles"] = l.cocycles.size();
        out.report["orbits"] = l.orbit_count();
        Json sizes = Json::array();
        std::vector<size_t> count(l.orbit_count(), 0);
        for (int o : l.orbit_of)
            ++count[o];
        for (size_t s : count)
            sizes.push_back(s);
        out.report["orbit_sizes"] = sizes;
        Json reps = Json::array();
        for (int r : l.representatives)
            reps.push_back(l.cocycles[r]);
        out.report["representatives"] = reps;
        if (in.abelian) {
            const auto h1 = catcoh::lim_n(c, *in.abelian, 1);
            out.report["h1"] = invariants_json(h1);
            out.report["matches_h1"] = h1.is_finite() && h1.order() == l.orbit_count();
        }
    } else if (opt.cmd == "delta") {
        need_subfunctor();
        const auto &f = *in.groups;
        const auto r = catcoh::restrict_functor(c, f, *in.subfunctor);
        const auto cosets = catcoh::left_cosets(f, *in.subfunctor);
        const auto l1 = catcoh::lim1_nonabelian(c, r.functor, catcoh::OrbitMethod::generators, opt.cap);
        out.report["subfunctor"] = subgroups_json(*in.subfunctor);
        out.report["lim1_orbits"] = l1.orbit_count();
        Json values = Json::array();
        for (const auto &x : catcoh::lim_quotient(c, f, *in.subfunctor, cosets)) {
            Json reps = Json::array();
            for (size_t o = 0; o < x.size(); ++o)
                reps.push_back(cosets.representatives[o][x[o]]);
            values.push_back(
                {{"representatives", reps}, {"delta", catcoh::connecting_delta(c, f, r, cosets, l1, x)}});
        }
        out.report["values"] = values;
    } else if (opt.cmd == "seq1" || opt.cmd == "seq2") {
        need_subfunctor();
        const auto rep = opt.cmd == "seq1"
                             ? catcoh::check_exact_seq1(c, *in.groups, *in.subfunctor, opt.seed,
                                                        opt.alternative_lifts, opt.cap)
                             : catcoh::check_exact_seq2(c, *in.groups, *in.subfunctor, opt.seed,
                                                        opt.alternative_lifts, opt.cap);
        out.report["seed"] = opt.seed;
        out.report["subfunctor"] = subgroups_json(*in.subfunctor);
        Json terms = Json::array();
        for (const auto &[name, size] : rep.terms)
            terms.push_back({{"term", name}, {"size", size}});
        out.report["terms"] = terms;
        out.report["central"] = rep.central;
        out.report["lift_checks"] = rep.lift_checks;
        out.report["additivity_checks"] = rep.additivity_checks;
        out.report["violations"] = rep.violations;
        out.report["exact"] = rep.exact();
        out.exit_code = rep.exact() ? exit_ok : exit_failed;
    } else {
        throw InputError(fmt::format("unknown catlim command '{}'", opt.cmd));
    }
    return out;
}

CategoryInput random_category_input(const std::string &cmd, uint64_t seed)
{
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        auto inst = catcoh::random_instance(rng);
        CategoryInput in;
        in.category = inst.category;
        const bool abelian = std::all_of(inst.functor.groups.begin(), inst.functor.groups.end(),
                                         [](const groupring::FiniteGroup &g) { return g.is_abelian(); });
        if (cmd == "limn" && !abelian)
            continue;
        if (abelian)
            in.abelian = catcoh::to_abelian(inst.category, inst.functor);
        if (cmd == "delta" || cmd == "seq1" || cmd == "seq2") {
            auto s = catcoh::random_subfunctor(
                inst.category, inst.functor, cmd == "seq2" ? catcoh::SubfunctorKind::normal : catcoh::SubfunctorKind::any,
                rng);
            if (!s)
                continue;
            in.subfunctor = std::move(*s);
        }
        in.groups = std::move(inst.functor);
        return in;
    }
    throw InternalError("no random instance found");
}

} // namespace blimwb::io
