#pragma once

#include <stdexcept>
#include <string>

namespace blimwb {

// Exit-code classes used by the command line tool.
enum class ErrorKind {
    input = 2,
    cap = 3,
    internal = 4,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind)
    {
    }
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

/// Malformed or inconsistent user input (bad generator, broken law, ...).
struct InputError : Error {
    explicit InputError(const std::string &what) : Error(ErrorKind::input, what) {}
};

/// An enumeration or size cap was exceeded.
struct CapExceeded : Error {
    explicit CapExceeded(const std::string &what) : Error(ErrorKind::cap, what) {}
};

/// A value that must be finite (an enumerated group, a quotient) is not.
struct InfiniteGroup : Error {
    explicit InfiniteGroup(const std::string &what) : Error(ErrorKind::cap, what) {}
};

/// Internal invariant violation; indicates a bug rather than bad input.
struct InternalError : Error {
    explicit InternalError(const std::string &what) : Error(ErrorKind::internal, what) {}
};

} // namespace blimwb
