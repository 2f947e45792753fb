#include "divbound/exponent.hpp"

#include <cmath>
#include <random>

#include "divbound/bounds.hpp"
#include "divbound/oracle.hpp"

namespace divbound {

ExponentBracket exponent_bracket(const DiscreteDistribution& q, double delta) {
  if (!q.strictly_positive()) raise(Errc::not_strictly_positive, "Q must be strictly positive");
  if (!(delta > 0.0)) raise(Errc::non_positive_delta, "delta must be > 0");

  ExponentBracket bracket;
  bracket.delta = delta;
  bracket.q_min = q.min_prob();

  const auto balance = balance_coefficient(q, BalanceMode::allow_approximate);
  bracket.pi_q_approximate = balance.approximate;
  bracket.pi_q = balance.approximate
                     ? std::min(balance.value + 1e-6 * static_cast<double>(q.size()), 0.5)
                     : balance.value;

  const double dd = delta * delta;
  const double qmin2 = bracket.q_min * bracket.q_min;
  bracket.e_lower = ow_phi(bracket.pi_q) * qmin2 * dd;
  bracket.e_lower_loose = 0.5 * qmin2 * dd;
  bracket.e_upper_nominal = std::log1p(0.5 * bracket.q_min * dd);
  bracket.e_upper_adjusted = std::log1p(2.0 * bracket.q_min * dd);
  bracket.exact = sanov_exponent_exact(q, delta);
  bracket.ratio_nominal = bracket.e_upper_nominal / bracket.e_lower;
  bracket.nominal_upper_holds = bracket.exact <= bracket.e_upper_nominal;
  return bracket;
}

MonteCarloNonTypical montecarlo_nontypical(const DiscreteDistribution& q, double delta,
                                           std::size_t N, std::size_t trials,
                                           std::uint64_t seed) {
  if (!(delta > 0.0)) raise(Errc::non_positive_delta, "delta must be > 0");
  if (N < 1) raise(Errc::bad_input, "sequence length must be >= 1");
  if (trials < 1000) raise(Errc::bad_input, "need at least 10^3 trials");

  const auto& probs = q.probs();
  const std::size_t n = probs.size();
  std::mt19937_64 engine(seed);

  // Empirical counts of a length-N i.i.d. sequence are multinomial; sampling
  // them through a binomial chain avoids drawing N symbols per trial.
  std::vector<long> counts(n);
  std::size_t violations = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    long remaining = static_cast<long>(N);
    double mass_left = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      long c = 0;
      if (remaining > 0 && probs[i] > 0.0) {
        const double share = std::min(probs[i] / mass_left, 1.0);
        std::binomial_distribution<long> binom(remaining, share);
        c = binom(engine);
      }
      counts[i] = c;
      remaining -= c;
      mass_left -= probs[i];
    }
    counts[n - 1] = remaining;

    for (std::size_t i = 0; i < n; ++i) {
      const double deviation =
          std::abs(static_cast<double>(counts[i]) / static_cast<double>(N) - probs[i]);
      if (deviation >= delta * probs[i]) {
        ++violations;
        break;
      }
    }
  }

  MonteCarloNonTypical result;
  result.violations = violations;
  result.trials = trials;
  result.sequence_length = N;
  result.p_hat = static_cast<double>(violations) / static_cast<double>(trials);
  result.rate_defined = violations > 0;
  result.neg_log_rate =
      result.rate_defined ? -std::log(result.p_hat) / static_cast<double>(N) : 0.0;
  return result;
}

}  // namespace divbound
