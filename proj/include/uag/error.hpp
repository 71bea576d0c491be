#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace uag {

// Library errors carry a short machine-readable code ("cap-exceeded",
// "unknown-symbol", ...) next to the human message. The CLI renders the
// code in a structured error object and exits with status 1.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
  throw Error(std::move(code), message);
}

}  // namespace uag
