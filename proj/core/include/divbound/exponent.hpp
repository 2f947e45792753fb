#pragma once

#include <cstdint>

#include "divbound/measure.hpp"

namespace divbound {

/// Bracket on the exponential decay rate of the probability that an i.i.d.
/// sequence from Q is not delta-typical (per-atom relative deviation >= delta).
///
/// Both upper-bound variants are always computed and reported side by side:
/// e_upper_nominal treats the smallest admissible single-atom deviation
/// delta*q_min as the minimal total variation over the non-typical set, while
/// e_upper_adjusted uses |P-Q| >= 2 max_a |P(a)-Q(a)|, which makes that
/// minimum 2*delta*q_min. The exact oracle value arbitrates: it can exceed
/// the nominal variant (nominal_upper_holds = false) but never the adjusted
/// one for delta <= 1.
struct ExponentBracket {
  double delta = 0.0;
  double q_min = 0.0;
  double pi_q = 0.0;
  bool pi_q_approximate = false;
  double e_lower = 0.0;           // phi(pi_Q) q_min^2 delta^2
  double e_lower_loose = 0.0;     // q_min^2 delta^2 / 2
  double e_upper_nominal = 0.0;   // ln(1 + q_min delta^2 / 2)
  double e_upper_adjusted = 0.0;  // ln(1 + 2 q_min delta^2)
  double exact = 0.0;             // oracle minimum of D(P||Q) over non-typical P
  double ratio_nominal = 0.0;     // e_upper_nominal / e_lower, in [1, 1/q_min]
  bool nominal_upper_holds = true;
};

ExponentBracket exponent_bracket(const DiscreteDistribution& q, double delta);

struct MonteCarloNonTypical {
  double p_hat = 0.0;          // fraction of sequences that are not delta-typical
  double neg_log_rate = 0.0;   // -(1/N) ln p_hat
  bool rate_defined = false;   // false when p_hat = 0
  std::size_t violations = 0;
  std::size_t trials = 0;
  std::size_t sequence_length = 0;
};

/// Estimates the non-typicality probability from `trials` i.i.d. length-N
/// sequences drawn from Q; deterministic given the seed.
MonteCarloNonTypical montecarlo_nontypical(const DiscreteDistribution& q, double delta,
                                           std::size_t N, std::size_t trials,
                                           std::uint64_t seed);

}  // namespace divbound
