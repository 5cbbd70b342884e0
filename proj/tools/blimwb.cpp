#include "blimwb/io/category_json.h"
#include "blimwb/io/presentation.h"
#include "blimwb/io/report.h"
#include "blimwb/limits/limits.h"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace blimwb;
using io::Json;

namespace {

int emit(const Json &j, const std::string &out_path)
{
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return io::exit_input;
    }
    out << text;
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Boundary limits, dimension quotients and higher limits over finite categories"};
    app.require_subcommand(1);

    int n = 4;
    uint64_t seed = 1;
    size_t cap = 0;
    std::string out_path;
    bool timings = false;
    unsigned workers = 0;
    std::vector<std::string> paths;
    std::string path, which, cmd;
    std::optional<int> degree;
    bool random = false;
    int lifts = 10;

    auto *verify = app.add_subcommand("verify", "Compare Blim with D_n/γ_n on presentation files");
    verify->add_option("--n", n, "Nilpotency degree n (2..5)")->capture_default_str();
    verify->add_option("--seed", seed, "Seed for the alternative-lift checks")->capture_default_str();
    verify->add_option("--cap", cap, "Enumeration cap on group orders");
    verify->add_option("--out", out_path, "Write the report to FILE");
    verify->add_flag("--timings", timings, "Include per-stage timings (not byte-stable)");
    verify->add_option("--workers", workers, "Worker threads (0: hardware concurrency)");
    verify->add_option("paths", paths, "Presentation files")->required();

    auto *dimq = app.add_subcommand("dimq", "Dimension quotient D_n/γ_n");
    dimq->add_option("--n", n)->capture_default_str();
    dimq->add_option("--seed", seed)->capture_default_str();
    dimq->add_option("--cap", cap);
    dimq->add_option("path", path)->required();

    auto *blim = app.add_subcommand("blim", "Boundary limit of F/R'γ_n(F)");
    blim->add_option("--n", n)->capture_default_str();
    blim->add_option("--cap", cap);
    blim->add_option("path", path)->required();

    auto *props = app.add_subcommand("props", "Check a structural property of a presentation");
    props->add_option("--which", which)->required()->check(CLI::IsMember({"inclusion", "sym", "identity", "mono"}));
    props->add_option("--n", n)->capture_default_str();
    props->add_option("--cap", cap);
    props->add_option("path", path)->required();

    auto *catlim = app.add_subcommand("catlim", "Limits over a finite category");
    catlim->add_option("--cmd", cmd)->required()->check(CLI::IsMember({"limn", "lim1", "delta", "seq1", "seq2"}));
    catlim->add_option("--degree", degree, "Degree for limn (overrides the file)");
    catlim->add_option("--seed", seed)->capture_default_str();
    catlim->add_option("--lifts", lifts, "Alternative lifts per element for δ")->capture_default_str();
    catlim->add_option("--cap", cap);
    catlim->add_flag("--random", random, "Use a random instance drawn from --seed instead of FILE");
    catlim->add_option("file", path);

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        io::Outcome result;
        if (command == "verify") {
            std::vector<words::FreePresentation> cases;
            for (const auto &p : paths)
                cases.push_back(io::load_presentation(p));
            io::VerifyOptions opt;
            opt.n = n;
            opt.seed = seed;
            opt.cap = cap ? cap : io::cap_from_env(limits::default_cap);
            opt.timings = timings;
            opt.workers = workers;
            result = io::run_verify(cases, opt);
        } else if (command == "dimq") {
            result = io::run_dimq(io::load_presentation(path), n, cap ? cap : io::cap_from_env(limits::default_cap),
                                  seed);
        } else if (command == "blim") {
            result = io::run_blim(io::load_presentation(path), n, cap ? cap : io::cap_from_env(limits::default_cap));
        } else if (command == "props") {
            result = io::run_props(io::load_presentation(path), which, n,
                                   cap ? cap : io::cap_from_env(limits::default_cap));
        } else {
            io::CatlimOptions opt;
            opt.cmd = cmd;
            opt.degree = degree;
            opt.seed = seed;
            opt.alternative_lifts = lifts;
            opt.cap = cap ? cap : io::cap_from_env(catcoh::default_z1_cap);
            if (random == !path.empty())
                throw InputError("catlim needs exactly one of FILE and --random");
            if (random) {
                const auto in = io::random_category_input(cmd, seed);
                result = io::run_catlim(in, opt);
                result.report["instance"] = io::category_to_json(in.category, *in.groups,
                                                                 in.subfunctor ? &*in.subfunctor : nullptr);
            } else {
                result = io::run_catlim(io::load_category(path), opt);
            }
        }
        if (const int rc = emit(result.report, out_path))
            return rc;
        return result.exit_code;
    } catch (const Error &e) {
        emit(io::error_json(command, e), "");
        return io::exit_code_for(e);
    } catch (const std::exception &e) {
        emit(io::error_json(command, InternalError(e.what())), "");
        return io::exit_internal;
    }
}
