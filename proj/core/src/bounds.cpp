#include "divbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "divbound/divergence.hpp"

namespace divbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_tv(double tv, double hi = 2.0) {
  if (!(tv >= 0.0 && tv <= hi))
    raise(Errc::tv_out_of_range, "total variation " + std::to_string(tv) + " out of range");
}

// ln(1/beta1)/(1-beta1), continuously extended to 1 at beta1 = 1.
double log_ratio_slope(double beta1) {
  const double x = 1.0 - beta1;
  if (x == 0.0) return 1.0;
  return -std::log1p(-x) / x;
}

BoundValue inapplicable(std::string name, Direction dir, Target target, std::string reason) {
  BoundValue b;
  b.name = std::move(name);
  b.direction = dir;
  b.target = target;
  b.applicable = false;
  b.reason = std::move(reason);
  b.value = std::numeric_limits<double>::quiet_NaN();
  return b;
}

}  // namespace

double ow_phi(double p) {
  if (!(p > 0.0 && p <= 0.5)) raise(Errc::bad_balance, "phi needs p in (0, 1/2]");
  const double e = 1.0 - 2.0 * p;
  if (e < 1e-9) return 0.5;  // phi is flat to second order at p = 1/2
  return (std::log1p(e) - std::log1p(-e)) / (4.0 * e);
}

BoundValue pinsker_lower(double tv) {
  require_tv(tv);
  return {"pinsker", 0.5 * tv * tv, Direction::lower, Target::kl_pq, {}, true, {}};
}

BoundValue ow_refined_pinsker_lower(double tv, double pi_q) {
  require_tv(tv);
  const double phi = ow_phi(pi_q);
  return {"ow_refined_pinsker", phi * tv * tv, Direction::lower, Target::kl_pq, {}, true, {}};
}

BoundValue gilardoni_dual_lower(double tv) {
  if (!(tv >= 0.0 && tv < 2.0))
    raise(Errc::tv_out_of_range, "the dual lower bound needs tv in [0, 2)");
  const double half = 0.5 * tv;
  const double value = -std::log1p(-half) - (1.0 - half) * std::log1p(half);
  return {"gilardoni_dual", std::max(value, 0.0), Direction::lower, Target::kl_qp, {}, true, {}};
}

BoundValue renyi_pinsker_lower(double tv, double alpha) {
  require_tv(tv);
  if (!(alpha > 0.0 && alpha <= 1.0))
    raise(Errc::order_out_of_range, "the Renyi-Pinsker lower bound needs alpha in (0, 1]");
  return {"renyi_pinsker", 0.5 * alpha * tv * tv, Direction::lower, Target::renyi, alpha, true, {}};
}

BoundValue verdu_upper(double tv, double beta1) {
  require_tv(tv);
  if (!(beta1 >= 0.0 && beta1 <= 1.0)) raise(Errc::bad_input, "beta1 must lie in [0, 1]");
  if (beta1 == 0.0)
    return inapplicable("verdu", Direction::upper, Target::kl_pq,
                        "beta1 = 0: relative information unbounded from above");
  return {"verdu", 0.5 * log_ratio_slope(beta1) * tv, Direction::upper, Target::kl_pq, {}, true, {}};
}

BoundValue thm1_upper(double tv, double beta1, double beta2) {
  require_tv(tv);
  if (!(beta1 >= 0.0 && beta1 <= 1.0)) raise(Errc::bad_input, "beta1 must lie in [0, 1]");
  if (!(beta2 >= 0.0 && beta2 <= 1.0)) raise(Errc::bad_input, "beta2 must lie in [0, 1]");
  if (beta1 == 0.0)
    return inapplicable("thm1", Direction::upper, Target::kl_pq,
                        "beta1 = 0: relative information unbounded from above");
  const double value = 0.5 * (log_ratio_slope(beta1) - beta2) * tv;
  return {"thm1", value, Direction::upper, Target::kl_pq, {}, true, {}};
}

BoundValue csiszar_talata_upper(double tv, double q_min) {
  require_tv(tv);
  if (!(q_min > 0.0)) raise(Errc::zero_q_min, "Q must be strictly positive");
  return {"csiszar_talata", tv * tv / q_min, Direction::upper, Target::kl_pq, {}, true, {}};
}

BoundValue thm3_upper(double tv, double q_min, double beta2) {
  require_tv(tv);
  if (!(q_min > 0.0)) raise(Errc::zero_q_min, "Q must be strictly positive");
  if (!(beta2 >= 0.0 && beta2 <= 1.0)) raise(Errc::bad_input, "beta2 must lie in [0, 1]");
  const double value = std::log1p(tv * tv / (2.0 * q_min)) - 0.5 * beta2 * tv * tv;
  return {"thm3", value, Direction::upper, Target::kl_pq, {}, true, {}};
}

BoundValue corollary_upper(double tv, double q_min) {
  require_tv(tv);
  if (!(q_min > 0.0)) raise(Errc::zero_q_min, "Q must be strictly positive");
  return {"corollary", std::log1p(tv * tv / (2.0 * q_min)), Direction::upper, Target::kl_pq,
          {}, true, {}};
}

BoundValue euclidean_upper(double l2, double q_min, Target target) {
  if (!(l2 >= 0.0)) raise(Errc::bad_input, "the Euclidean norm must be >= 0");
  if (!(q_min > 0.0)) raise(Errc::zero_q_min, "Q must be strictly positive");
  if (target != Target::d2 && target != Target::kl_pq)
    raise(Errc::bad_input, "the Euclidean bound targets D2 or KL");
  return {"euclidean_l2", std::log1p(l2 * l2 / q_min), Direction::upper, target, {}, true, {}};
}

double beta2_floor(double q_min, double q_max, double tv) {
  if (!(q_min > 0.0 && q_min <= q_max)) raise(Errc::bad_input, "need 0 < q_min <= q_max");
  require_tv(tv);
  return std::max(q_min - tv, 0.0) / q_max;
}

GeneralMeasureChain general_measure_chain(double tv, double beta1, double beta2) {
  require_tv(tv);
  GeneralMeasureChain chain;
  if (beta1 == 0.0) {
    chain.applicable = false;
    chain.reason = "beta1 = 0: relative information unbounded from above";
    chain.chi2_upper = chain.d2_upper = chain.kl_upper = std::numeric_limits<double>::quiet_NaN();
    return chain;
  }
  chain.chi2_upper = std::max(1.0 / beta1 - 1.0, 1.0 - beta2) * tv;
  chain.d2_upper = std::log1p(chain.chi2_upper);
  chain.kl_upper = chain.d2_upper;
  return chain;
}

BoundValue renyi_reverse_upper(double alpha, double tv, double p_min, double q_min) {
  if (std::isnan(alpha) || alpha < 0.0) raise(Errc::negative_order, "Renyi order must be >= 0");
  require_tv(tv);
  if (!(p_min > 0.0 && q_min > 0.0))
    raise(Errc::zero_min, "the reverse Renyi bound needs strictly positive P and Q");

  const double eps = tv;
  const double eps_prime = std::min(1.0, eps);
  double value;
  if (alpha > 2.0) {  // includes alpha = inf
    value = std::log1p(eps / (2.0 * q_min));
  } else if (alpha >= 1.0) {
    value = std::log1p(eps * eps_prime / (2.0 * q_min));
  } else {
    const double f1 =
        alpha / (1.0 - alpha) *
        (std::log1p(eps * eps / (2.0 * p_min)) - 0.5 * q_min * eps * eps);
    const double f2 = std::log1p(eps * eps_prime / (2.0 * q_min)) - 0.5 * p_min * eps * eps;
    value = std::min(f1, f2);
    if (alpha <= 0.5) {
      // -2 ln(1 - eps/2) is +inf at eps = 2 and the min falls back to f1/f2.
      const double bhatt = eps < 2.0 ? -2.0 * std::log1p(-0.5 * eps) : kInf;
      value = std::min(value, bhatt);
    }
  }
  return {"renyi_reverse", value, Direction::upper, Target::renyi, alpha, true, {}};
}

namespace {

// Probability steps are inclusive at breakpoints; the relative tolerance
// realizes that inclusivity under rounding of the candidate etas.
double inclusion_tolerance(double eta) { return 1e-12 * std::max(1.0, eta); }

}  // namespace

TvLowerOneParam tv_lower_relinfo(const MeasurePair& pair) {
  if (!pair.mutually_absolutely_continuous)
    raise(Errc::not_mutually_ac, "the relative-information bound needs P and Q mutually "
                                 "absolutely continuous");
  std::set<double> candidates;
  for (double i : pair.rel_info)
    if (i != 0.0) candidates.insert(std::abs(i));
  TvLowerOneParam best{0.0, 0.0};
  const auto& p = pair.p.probs();
  for (double eta : candidates) {
    const double tol = inclusion_tolerance(eta);
    double pos = 0.0, neg = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (pair.rel_info[i] >= eta - tol) pos += p[i];
      if (pair.rel_info[i] <= -(eta - tol)) neg += p[i];
    }
    const double value = -std::expm1(-eta) * pos + std::expm1(eta) * neg;
    if (value > best.value) best = {value, eta};
  }
  return best;
}

TvLowerTwoParam tv_lower_two_param(const MeasurePair& pair) {
  if (!pair.mutually_absolutely_continuous)
    raise(Errc::not_mutually_ac, "the relative-information bound needs P and Q mutually "
                                 "absolutely continuous");
  const auto& p = pair.p.probs();
  std::set<double> pos_candidates, neg_candidates;
  for (double i : pair.rel_info) {
    if (i > 0.0) pos_candidates.insert(i);
    if (i < 0.0) neg_candidates.insert(-i);
  }
  TvLowerTwoParam best{0.0, 0.0, 0.0};
  double sup1 = 0.0;
  for (double eta : pos_candidates) {
    const double tol = inclusion_tolerance(eta);
    double mass = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (pair.rel_info[i] >= eta - tol) mass += p[i];
    const double value = -std::expm1(-eta) * mass;
    if (value > sup1) {
      sup1 = value;
      best.eta1 = eta;
    }
  }
  double sup2 = 0.0;
  for (double eta : neg_candidates) {
    const double tol = inclusion_tolerance(eta);
    double mass = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (pair.rel_info[i] <= -(eta - tol)) mass += p[i];
    const double value = std::expm1(eta) * mass;
    if (value > sup2) {
      sup2 = value;
      best.eta2 = eta;
    }
  }
  best.value = sup1 + sup2;
  return best;
}

MeasurePair attainment_construction(double eta1, double eta2) {
  if (!(eta1 > 0.0) || !(eta2 > 0.0)) raise(Errc::non_positive_eta, "etas must be > 0");
  // Stable closed forms: denom = e^eta1 - e^-eta2 written without
  // cancellation, all four atoms from positive products.
  const double em1_pos = std::expm1(eta1);        // e^eta1 - 1
  const double em1_neg = -std::expm1(-eta2);      // 1 - e^-eta2
  const double denom = em1_pos + em1_neg;
  const double p_a = std::exp(eta1) * em1_neg / denom;
  const double p_b = std::exp(-eta2) * em1_pos / denom;
  const double q_a = em1_neg / denom;
  const double q_b = em1_pos / denom;
  auto p = DiscreteDistribution({"a", "b"}, {p_a, p_b}, true);
  auto q = DiscreteDistribution({"a", "b"}, {q_a, q_b}, true);
  return make_pair(p, q);
}

BoundValue tv_upper_from_kl(double kl) {
  if (!(kl >= 0.0)) raise(Errc::bad_input, "relative entropy must be >= 0");
  const double value = std::isinf(kl) ? 2.0 : 2.0 * std::sqrt(-std::expm1(-kl));
  return {"tv_upper_from_kl", value, Direction::upper, Target::tv, {}, true, {}};
}

EquiprobableBounds equiprobable_example(std::size_t n, double beta) {
  if (n < 2) raise(Errc::empty_alphabet, "the equiprobable example needs n >= 2");
  if (!(beta >= 0.0 && beta <= 1.0)) raise(Errc::bad_beta, "beta must lie in [0, 1]");
  const double log_n = std::log(static_cast<double>(n));
  const double inv_n = 1.0 / static_cast<double>(n);
  EquiprobableBounds out;
  out.lower = std::sqrt(2.0 * std::max(std::exp(-beta * log_n) - inv_n, 0.0));
  const double from_pinsker = std::sqrt(2.0 * (1.0 - beta) * log_n);
  const double from_exp = 2.0 * std::sqrt(std::max(1.0 - std::exp((beta - 1.0) * log_n), 0.0));
  out.upper = std::min(from_pinsker, from_exp);
  out.looser_lower = std::sqrt((1.0 - beta) * log_n * inv_n);
  return out;
}

const BoundValue* BoundReport::find(const std::string& name) const {
  for (const auto& b : bounds)
    if (b.name == name) return &b;
  return nullptr;
}

BoundReport bound_report(const MeasurePair& pair) {
  BoundReport report;
  report.p = pair.p;
  report.q = pair.q;
  report.beta1 = pair.beta1;
  report.beta2 = pair.beta2;
  report.q_min = pair.q_min;
  report.q_max = pair.q_max;
  report.p_min = pair.p_min;

  report.kl_pq = kl(pair);
  const MeasurePair reversed = make_pair(pair.q, pair.p);
  report.kl_qp = kl(reversed);
  report.tv = total_variation(pair);
  report.l2 = euclidean_l2(pair);
  report.chi2 = pair.q_min > 0.0 ? chi_square(pair) : kInf;
  report.renyi_half = renyi(pair, 0.5);
  report.renyi_two = renyi(pair, 2.0);
  report.renyi_inf = renyi(pair, kInf);

  const auto balance = balance_coefficient(pair.q, BalanceMode::allow_approximate);
  report.pi_q_approximate = balance.approximate;
  report.pi_q = balance.value;
  if (balance.approximate) {
    // Conservative adjustment: phi is decreasing, so rounding pi_Q upward can
    // only weaken the refined lower bound, never break it.
    report.pi_q = std::min(balance.value + 1e-6 * static_cast<double>(pair.size()), 0.5);
  }

  auto& bounds = report.bounds;
  bounds.push_back(pinsker_lower(report.tv));
  if (report.pi_q > 0.0) {
    bounds.push_back(ow_refined_pinsker_lower(report.tv, report.pi_q));
  } else {
    bounds.push_back(inapplicable("ow_refined_pinsker", Direction::lower, Target::kl_pq,
                                  "pi_Q = 0: Q is concentrated on a single atom"));
  }
  if (report.tv < 2.0) {
    bounds.push_back(gilardoni_dual_lower(report.tv));
  } else {
    bounds.push_back(inapplicable("gilardoni_dual", Direction::lower, Target::kl_qp,
                                  "tv = 2: disjoint supports"));
  }
  bounds.push_back(renyi_pinsker_lower(report.tv, 0.5));

  bounds.push_back(verdu_upper(report.tv, pair.beta1));
  bounds.push_back(thm1_upper(report.tv, pair.beta1, pair.beta2));
  if (pair.q_min > 0.0) {
    bounds.push_back(csiszar_talata_upper(report.tv, pair.q_min));
    bounds.push_back(thm3_upper(report.tv, pair.q_min, pair.beta2));
    bounds.push_back(corollary_upper(report.tv, pair.q_min));
    bounds.push_back(euclidean_upper(report.l2, pair.q_min));
  } else {
    const std::string why = "q_min = 0: Q is not strictly positive";
    bounds.push_back(inapplicable("csiszar_talata", Direction::upper, Target::kl_pq, why));
    bounds.push_back(inapplicable("thm3", Direction::upper, Target::kl_pq, why));
    bounds.push_back(inapplicable("corollary", Direction::upper, Target::kl_pq, why));
    bounds.push_back(inapplicable("euclidean_l2", Direction::upper, Target::d2, why));
  }

  const auto chain = general_measure_chain(report.tv, pair.beta1, pair.beta2);
  if (chain.applicable) {
    bounds.push_back({"general_chain_chi2", chain.chi2_upper, Direction::upper, Target::chi2,
                      {}, true, {}});
    bounds.push_back({"general_chain_kl", chain.kl_upper, Direction::upper, Target::kl_pq,
                      {}, true, {}});
  } else {
    bounds.push_back(inapplicable("general_chain_chi2", Direction::upper, Target::chi2,
                                  chain.reason));
    bounds.push_back(inapplicable("general_chain_kl", Direction::upper, Target::kl_pq,
                                  chain.reason));
  }

  const bool strictly_positive = pair.p_min > 0.0 && pair.q_min > 0.0;
  for (double alpha : {0.5, 2.0, kInf}) {
    if (strictly_positive) {
      bounds.push_back(renyi_reverse_upper(alpha, report.tv, pair.p_min, pair.q_min));
    } else {
      auto b = inapplicable("renyi_reverse", Direction::upper, Target::renyi,
                            "P and Q must be strictly positive");
      b.order = alpha;
      bounds.push_back(b);
    }
  }

  std::optional<TvLowerOneParam> one;
  std::optional<TvLowerTwoParam> two;
  if (pair.mutually_absolutely_continuous) {
    one = tv_lower_relinfo(pair);
    two = tv_lower_two_param(pair);
    bounds.push_back({"tv_lower_relinfo", one->value, Direction::lower, Target::tv, {}, true, {}});
    bounds.push_back({"tv_lower_two_param", two->value, Direction::lower, Target::tv, {}, true, {}});
  } else {
    const std::string why = "P and Q are not mutually absolutely continuous";
    bounds.push_back(inapplicable("tv_lower_relinfo", Direction::lower, Target::tv, why));
    bounds.push_back(inapplicable("tv_lower_two_param", Direction::lower, Target::tv, why));
  }
  bounds.push_back(tv_upper_from_kl(report.kl_pq));

  auto value_of = [&bounds](const std::string& name) -> std::optional<double> {
    for (const auto& b : bounds)
      if (b.name == name && b.applicable) return b.value;
    return std::nullopt;
  };
  auto ordering = [&report](const std::string& flag, std::optional<double> lhs,
                            std::optional<double> rhs) {
    if (lhs && rhs) report.orderings.emplace_back(flag, *lhs <= *rhs + 1e-12);
  };
  ordering("thm1_le_verdu", value_of("thm1"), value_of("verdu"));
  ordering("thm3_le_corollary", value_of("thm3"), value_of("corollary"));
  ordering("corollary_le_csiszar_talata", value_of("corollary"), value_of("csiszar_talata"));
  ordering("ow_ge_pinsker", value_of("pinsker"), value_of("ow_refined_pinsker"));
  if (one && two) ordering("two_param_ge_one_param", one->value, two->value);

  return report;
}

}  // namespace divbound
