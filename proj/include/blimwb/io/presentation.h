#pragma once

// Text format for free presentations:
//
//   gens: x, y
//   rels: x^4, y^2 = x^2, [x, y]^2, (x*y)^3   # comment
//
// `a = b` stands for a·b⁻¹, `[a, b]` for a⁻¹b⁻¹ab and `1` for the empty
// word. Several `rels:` lines are concatenated.

#include "blimwb/words.h"

#include <string>

namespace blimwb::io {

/// Throws InputError with a "line:column" prefix on syntax errors, unknown
/// generators and zero exponents.
words::FreePresentation parse_presentation(const std::string &text, const std::string &name = "");

/// Parses one word over the given generator names.
words::Word parse_word(const std::string &text, const std::vector<std::string> &names);

/// Text that parse_presentation maps back to the same generators and relators.
std::string format_presentation(const words::FreePresentation &p);

/// Reads a file; the presentation is named after the file stem.
words::FreePresentation load_presentation(const std::string &path);

} // namespace blimwb::io
