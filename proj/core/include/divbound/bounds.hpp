#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divbound/measure.hpp"

namespace divbound {

enum class Direction { lower, upper };

/// Which exact quantity a bound constrains.
enum class Target { kl_pq, kl_qp, tv, chi2, d2, renyi };

struct BoundValue {
  std::string name;
  double value = 0.0;
  Direction direction = Direction::upper;
  Target target = Target::kl_pq;
  std::optional<double> order;  // Renyi order when target == renyi
  bool applicable = true;
  std::string reason;  // set when inapplicable

  /// True for values measured in nats (log-based); TV and chi^2 targets are
  /// unitless and never converted to bits.
  bool nats() const noexcept { return target != Target::tv && target != Target::chi2; }
};

/// phi from the probability-dependent Pinsker refinement:
/// phi(p) = ln((1-p)/p) / (4(1-2p)) on (0, 1/2), phi(1/2) = 1/2. Monotone
/// decreasing and continuous, phi >= 1/2.
double ow_phi(double p);

// --- Lower bounds -----------------------------------------------------------

/// D(P||Q) >= tv^2 / 2.
BoundValue pinsker_lower(double tv);

/// D(P||Q) >= phi(pi_Q) tv^2; always at least pinsker_lower.
BoundValue ow_refined_pinsker_lower(double tv, double pi_q);

/// D(Q||P) >= -ln(1 - tv/2) - (1 - tv/2) ln(1 + tv/2); tight for both large
/// and small tv but not uniformly tighter than Pinsker.
BoundValue gilardoni_dual_lower(double tv);

/// D_alpha(P||Q) >= (alpha/2) tv^2 for alpha in (0, 1].
BoundValue renyi_pinsker_lower(double tv, double alpha);

// --- Reverse (upper) bounds -------------------------------------------------

/// D(P||Q) <= (ln(1/beta1)/(1-beta1)) tv/2; inapplicable at beta1 = 0. The
/// beta1 = 1 corner uses the analytic limit 1 for ln(1/beta1)/(1-beta1).
BoundValue verdu_upper(double tv, double beta1);

/// D(P||Q) <= (ln(1/beta1)/(1-beta1) - beta2) tv/2; coincides with
/// verdu_upper at beta2 = 0.
BoundValue thm1_upper(double tv, double beta1, double beta2);

/// D(P||Q) <= tv^2 / q_min (finite alphabets).
BoundValue csiszar_talata_upper(double tv, double q_min);

/// D(P||Q) <= ln(1 + tv^2/(2 q_min)) - (beta2/2) tv^2.
BoundValue thm3_upper(double tv, double q_min, double beta2);

/// The beta2 = 0 loosening of thm3_upper: ln(1 + tv^2/(2 q_min)).
BoundValue corollary_upper(double tv, double q_min);

/// D_2(P||Q) <= ln(1 + l2^2/q_min), hence the same bound on D(P||Q);
/// equality when Q is equiprobable.
BoundValue euclidean_upper(double l2, double q_min, Target target = Target::d2);

/// beta2 >= max{q_min - tv, 0} / q_max for any P at the given tv.
double beta2_floor(double q_min, double q_max, double tv);

struct GeneralMeasureChain {
  double chi2_upper = 0.0;  // max{1/beta1 - 1, 1 - beta2} tv
  double d2_upper = 0.0;    // ln(1 + chi2_upper)
  double kl_upper = 0.0;    // same value, by Renyi monotonicity
  bool applicable = true;
  std::string reason;
};

/// The general-measure route through chi^2; thm1_upper is expected to be
/// tighter than kl_upper and the verify suite tests that empirically.
GeneralMeasureChain general_measure_chain(double tv, double beta1, double beta2);

/// Reverse Pinsker bound on D_alpha(P||Q) for alpha in [0, inf], strictly
/// positive P and Q. eps' = min{1, tv}.
BoundValue renyi_reverse_upper(double alpha, double tv, double p_min, double q_min);

// --- Relative-information lower bounds on the total variation ---------------

struct TvLowerOneParam {
  double value = 0.0;
  double eta = 0.0;
};

/// sup_{eta>0} (1-e^-eta) (Pr_P[i >= eta] + e^eta Pr_P[i <= -eta]), computed
/// exactly by a breakpoint scan over the distinct |rel_info| values (the
/// objective is piecewise increasing between inclusive breakpoints).
TvLowerOneParam tv_lower_relinfo(const MeasurePair& pair);

struct TvLowerTwoParam {
  double value = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
};

/// Two-parameter tightening: the objective separates into
/// sup_{eta1} (1-e^-eta1) Pr_P[i >= eta1] + sup_{eta2} (e^eta2 - 1) Pr_P[i <= -eta2],
/// each an independent breakpoint scan. Always >= tv_lower_relinfo and <= tv.
TvLowerTwoParam tv_lower_two_param(const MeasurePair& pair);

/// Two-atom pair with rel_info exactly (eta1, -eta2); the tv lower bounds are
/// attained with equality on it. eta1 = eta2 = eta recovers the
/// (e^eta-1)/(2 sinh eta) construction.
MeasurePair attainment_construction(double eta1, double eta2);

/// |P-Q| <= 2 sqrt(1 - exp(-D(P||Q))).
BoundValue tv_upper_from_kl(double kl);

struct EquiprobableBounds {
  double lower = 0.0;         // sqrt(2 (n^-beta - 1/n))
  double upper = 0.0;         // min{sqrt(2 (1-beta) ln n), 2 sqrt(1 - n^(beta-1))}
  double looser_lower = 0.0;  // sqrt((1-beta) ln n / n)
};

/// Bounds on |P-U| for the equiprobable U on n atoms when H(P) = beta ln n.
EquiprobableBounds equiprobable_example(std::size_t n, double beta);

// --- Consolidated report ----------------------------------------------------

struct BoundReport {
  DiscreteDistribution p, q;
  double kl_pq = 0.0, kl_qp = 0.0, tv = 0.0, chi2 = 0.0, l2 = 0.0;
  double renyi_half = 0.0, renyi_two = 0.0, renyi_inf = 0.0;
  double beta1 = 1.0, beta2 = 1.0, q_min = 0.0, q_max = 0.0, p_min = 0.0;
  double pi_q = 0.0;
  bool pi_q_approximate = false;
  std::vector<BoundValue> bounds;
  std::vector<std::pair<std::string, bool>> orderings;

  const BoundValue* find(const std::string& name) const;
};

/// Evaluates every applicable bound and ordering flag for one pair;
/// inapplicable bounds carry reasons instead of values.
BoundReport bound_report(const MeasurePair& pair);

}  // namespace divbound
