#pragma once

// JSON reports for the command line tool. Field order is fixed and timings
// are only included on request, so reports are byte-identical across runs.

#include "blimwb/catcoh/nonabelian.h"
#include "blimwb/error.h"
#include "blimwb/intlin/abelian.h"
#include "blimwb/io/category_json.h"
#include "blimwb/words.h"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace blimwb::io {

using Json = nlohmann::ordered_json;

inline constexpr const char *schema_version = "1";

/// Exit codes of the tool.
enum ExitCode { exit_ok = 0, exit_failed = 1, exit_input = 2, exit_cap = 3, exit_internal = 4 };

int exit_code_for(const Error &e);

/// Cyclic orders of the invariant factors, 0 standing for Z.
Json invariants_json(const intlin::FgAbelian &a);

/// {"schema_version": "1", "command": ..., "error": {"kind": ..., "message": ...}}
Json error_json(const std::string &command, const Error &e);

/// Enumeration cap: BLIMWB_CAP when set, else `fallback`.
size_t cap_from_env(size_t fallback);

struct VerifyOptions {
    int n = 4;
    uint64_t seed = 1;
    size_t cap = 0;
    bool timings = false;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned workers = 0;
};

/// Blim and D_n/γ_n for one presentation, with the checks that apply to n:
/// inclusion always, equality for n <= 4, exponent two for n = 4.
Json verify_case(const words::FreePresentation &p, const VerifyOptions &opt);

struct Outcome {
    Json report;
    int exit_code = exit_ok;
};

/// Runs verify_case over the presentations concurrently; cases are reported
/// sorted by name.
Outcome run_verify(const std::vector<words::FreePresentation> &cases, const VerifyOptions &opt);

Outcome run_dimq(const words::FreePresentation &p, int n, size_t cap, uint64_t seed);
Outcome run_blim(const words::FreePresentation &p, int n, size_t cap);
/// which ∈ {inclusion, sym, identity, mono}.
Outcome run_props(const words::FreePresentation &p, const std::string &which, int n, size_t cap);

struct CatlimOptions {
    std::string cmd; // limn, lim1, delta, seq1, seq2
    std::optional<int> degree;
    uint64_t seed = 1;
    int alternative_lifts = 10;
    size_t cap = catcoh::default_z1_cap;
};
Outcome run_catlim(const CategoryInput &in, const CatlimOptions &opt);

/// A random instance (and, for seq1/seq2/delta, a random subfunctor) drawn
/// from `seed`.
CategoryInput random_category_input(const std::string &cmd, uint64_t seed);

} // namespace blimwb::io
