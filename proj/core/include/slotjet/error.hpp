#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace slotjet {

// Runtime error carrying a stable machine-readable code such as
// "SLOT_DEGENERATE" or "GRID_TOO_COARSE". The CLI prints the code verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + (detail.empty() ? "" : ": " + detail)),
        code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code,
                              const std::string& detail = "") {
  throw Error(code, detail);
}

}  // namespace slotjet
