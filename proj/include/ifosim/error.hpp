#ifndef IFOSIM_ERROR_HPP
#define IFOSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ifo {

// Error categories, mirrored by the C API status codes and the CLI exit codes.
enum class ErrorKind {
  io,                // file missing / unreadable / unwritable
  parse,             // malformed input data
  invalid_argument,  // bad parameter or configuration
  domain,            // numeric domain violation
  internal
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

} // namespace ifo

#endif
