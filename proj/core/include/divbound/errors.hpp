#pragma once

#include <stdexcept>
#include <string>

namespace divbound {

/// Failure categories raised by the library. Infinite divergence values are
/// never errors; only malformed inputs and broken preconditions throw.
enum class Errc {
  negative_mass,
  sum_out_of_tolerance,
  empty_alphabet,
  duplicate_label,
  alphabet_mismatch,
  alphabet_too_large_for_exact,
  floor_too_large,
  zero_q_atom,
  negative_order,
  out_of_range_probability,
  undefined_limit,
  non_positive_entry,
  not_strictly_positive,
  g_not_convex,
  tv_out_of_range,
  bad_balance,
  order_out_of_range,
  zero_q_min,
  zero_min,
  not_mutually_ac,
  non_positive_eta,
  bad_beta,
  grid_too_coarse,
  no_feasible_point,
  alphabet_too_large,
  infeasible_delta,
  unknown_inequality,
  empty_vector,
  param_out_of_range,
  length_mismatch,
  q_too_large,
  non_positive_delta,
  bad_input,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace divbound
