#pragma once

#include <stdexcept>
#include <string>

namespace orbital {

enum class errc {
  ok = 0,
  internal = 1,
  not_elliptic = 2,
  witness_not_found = 3,
  bad_input = 4,
  characteristic_unsupported = 5,
  mismatch = 6,
  budget_exceeded = 7,
  degenerate_input = 8,
  not_integral = 9,
  precision_too_low = 10,
  parity_violation = 11,
  proviso_unverified = 12,
  window_unstable = 13,
  internal_case_gap = 14,
};

class error : public std::runtime_error {
public:
  error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc c, const std::string& what) { throw error(c, what); }

}  // namespace orbital
