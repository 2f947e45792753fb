#pragma once

#include <limits>

#include "divbound/measure.hpp"

namespace divbound {

/// All divergences are reported in nats; conversion to bits is a
/// presentation-layer multiply by 1/ln 2. Infinite values are legitimate
/// outcomes and are returned, never thrown.

/// Relative entropy D(P||Q) = sum_{P(a)>0} P(a) ln(P(a)/Q(a)); +inf when some
/// P(a) > 0 = Q(a).
double kl(const MeasurePair& pair);

/// Total variation |P-Q| = sum_a |P(a)-Q(a)|, in [0, 2]. For mutually
/// absolutely continuous pairs the result is cross-checked against the two
/// relative-information forms E_Q|1-exp(i)| and E_P|1-exp(-i)|.
double total_variation(const MeasurePair& pair);

/// chi^2(P,Q) = sum_a (P(a)-Q(a))^2 / Q(a). Requires Q strictly positive.
double chi_square(const MeasurePair& pair);

/// Renyi divergence of order alpha in [0, inf]. alpha = 1 is KL, alpha = 0 is
/// -ln Q(Support(P)), alpha = inf is ln sup P/Q over Support(P). Monotone
/// non-decreasing in alpha.
double renyi(const MeasurePair& pair, double alpha);

struct BhattacharyyaResult {
  double coefficient;  // Z = sum sqrt(P(a) Q(a)), in [0, 1]
  double renyi_half;   // D_{1/2} = -2 ln Z
};

BhattacharyyaResult bhattacharyya(const MeasurePair& pair);

/// Euclidean norm |P-Q|_2.
double euclidean_l2(const MeasurePair& pair);

/// Two-atom specialization d_alpha(p||q) for p in [0,1], q in (0,1).
double binary_renyi(double p, double q, double alpha);

/// Binary relative entropy d(p||q) = binary_renyi(p, q, 1).
double binary_kl(double p, double q);

inline constexpr double kInfiniteOrder = std::numeric_limits<double>::infinity();

}  // namespace divbound
