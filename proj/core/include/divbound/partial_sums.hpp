#pragma once

#include <vector>

#include "divbound/measure.hpp"

namespace divbound {

/// Success probabilities of independent Bernoulli variables; entries in (0,1).
struct BernoulliVector {
  std::vector<double> params;

  std::size_t size() const noexcept { return params.size(); }
};

BernoulliVector make_bernoulli_vector(std::vector<double> params);

/// Poisson-binomial law of the partial sum on {0, ..., n}, by iterative
/// convolution with smallest-first factor ordering.
DiscreteDistribution partial_sum_pmf(const BernoulliVector& bernoullis);

struct RenyiChainCheck {
  double lhs = 0.0;             // D_alpha between the two partial-sum laws
  double additivity_sum = 0.0;  // sum_i d_alpha(p_i || q_i)
  double bound_sum = 0.0;       // per-factor reverse-Pinsker caps
  bool holds = false;           // lhs <= additivity_sum <= bound_sum (1e-10 slack)
};

/// Data-processing / additivity / reverse-Pinsker chain for the partial sums
/// of two Bernoulli vectors. Requires q_i <= 1/2 per factor. For alpha <= 2
/// the per-factor cap is ln(1 + 2 q_i (p_i/q_i - 1)^2); for alpha > 2 it is
/// ln(1 + 2 |p_i/q_i - 1|).
RenyiChainCheck renyi_chain_check(const BernoulliVector& p, const BernoulliVector& q,
                                  double alpha);

struct SummabilityCaps {
  double k1 = 0.0;           // sum ln(1 + eps_i^2), caps D_alpha for alpha <= 2
  double k2 = 0.0;           // sum ln(1 + 2 eps_i), caps D_alpha for alpha > 2
  std::vector<double> eps;   // eps_i = |p_i/q_i - 1|
};

/// Finite truncation of the summability caps; k1 dominates the alpha <= 2
/// per-factor bounds because 2 q_i <= 1 under the q_i <= 1/2 convention.
SummabilityCaps summability_caps(const BernoulliVector& p, const BernoulliVector& q);

}  // namespace divbound
