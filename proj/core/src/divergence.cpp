#include "divbound/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace divbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double chi_square_sum(const MeasurePair& pair, bool* q_has_zero) {
  const auto& p = pair.p.probs();
  const auto& q = pair.q.probs();
  double sum = 0.0;
  *q_has_zero = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] == 0.0) {
      *q_has_zero = true;
      return kInf;
    }
    const double d = p[i] - q[i];
    sum += d * d / q[i];
  }
  return sum;
}

}  // namespace

double kl(const MeasurePair& pair) {
  const auto& p = pair.p.probs();
  const auto& q = pair.q.probs();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    sum += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(sum, 0.0);
}

double total_variation(const MeasurePair& pair) {
  const auto& p = pair.p.probs();
  const auto& q = pair.q.probs();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);

  if (pair.mutually_absolutely_continuous) {
    // Self-check against the relative-information identities under Y ~ Q and
    // X ~ P; disagreement beyond rounding means the pair statistics are
    // inconsistent.
    double under_q = 0.0, under_p = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      under_q += q[i] * std::abs(1.0 - std::exp(pair.rel_info[i]));
      under_p += p[i] * std::abs(1.0 - std::exp(-pair.rel_info[i]));
    }
    if (std::abs(under_q - sum) > 1e-12 || std::abs(under_p - sum) > 1e-12)
      throw std::logic_error("total variation disagrees with its relative-information form");
  }
  return sum;
}

double chi_square(const MeasurePair& pair) {
  bool q_has_zero = false;
  const double value = chi_square_sum(pair, &q_has_zero);
  if (q_has_zero) raise(Errc::zero_q_atom, "chi^2 requires Q strictly positive");
  return value;
}

double renyi(const MeasurePair& pair, double alpha) {
  if (std::isnan(alpha) || alpha < 0.0) raise(Errc::negative_order, "Renyi order must be >= 0");
  const auto& p = pair.p.probs();
  const auto& q = pair.q.probs();

  if (alpha == 1.0) return kl(pair);

  if (alpha == 0.0) {
    double q_support = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] > 0.0) q_support += q[i];
    return -std::log(q_support);
  }

  if (std::isinf(alpha)) {
    double max_ratio = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0.0) continue;
      if (q[i] == 0.0) return kInf;
      max_ratio = std::max(max_ratio, p[i] / q[i]);
    }
    return std::log(max_ratio);
  }

  if (alpha == 2.0) {
    // 1 + chi^2 equals sum P^2/Q; routing through the difference form keeps
    // the chi^2 = exp(D_2) - 1 identity exact to rounding.
    bool q_has_zero = false;
    const double chi2 = chi_square_sum(pair, &q_has_zero);
    return q_has_zero ? kInf : std::log1p(chi2);
  }

  // log-sum-exp of alpha ln P + (1-alpha) ln Q keeps extreme density ratios
  // (large alpha, tiny atoms) inside the double range.
  std::vector<double> exponents;
  exponents.reserve(p.size());
  double peak = -kInf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;  // 0^alpha = 0 for alpha > 0
    if (q[i] == 0.0) {
      if (alpha > 1.0) return kInf;
      continue;  // P^alpha Q^{1-alpha} = 0 for alpha < 1
    }
    const double t = alpha * std::log(p[i]) + (1.0 - alpha) * std::log(q[i]);
    exponents.push_back(t);
    peak = std::max(peak, t);
  }
  if (exponents.empty()) return kInf;  // disjoint supports, alpha < 1
  double sum = 0.0;
  for (double t : exponents) sum += std::exp(t - peak);
  return (peak + std::log(sum)) / (alpha - 1.0);
}

BhattacharyyaResult bhattacharyya(const MeasurePair& pair) {
  const auto& p = pair.p.probs();
  const auto& q = pair.q.probs();
  double z = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) z += std::sqrt(p[i] * q[i]);
  z = std::min(z, 1.0);
  return {z, z > 0.0 ? -2.0 * std::log(z) : kInf};
}

double euclidean_l2(const MeasurePair& pair) {
  const auto& p = pair.p.probs();
  const auto& q = pair.q.probs();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - q[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double binary_renyi(double p, double q, double alpha) {
  if (!(p >= 0.0 && p <= 1.0)) raise(Errc::out_of_range_probability, "p must lie in [0, 1]");
  if (!(q > 0.0 && q < 1.0)) raise(Errc::out_of_range_probability, "q must lie in (0, 1)");
  if (std::isnan(alpha) || alpha < 0.0) raise(Errc::negative_order, "Renyi order must be >= 0");

  if (alpha == 1.0) return binary_kl(p, q);
  if (alpha == 0.0) {
    if (p == 1.0) return -std::log(q);
    if (p == 0.0) return -std::log(1.0 - q);
    return 0.0;
  }
  if (std::isinf(alpha)) {
    double max_ratio = 0.0;
    if (p > 0.0) max_ratio = p / q;
    if (p < 1.0) max_ratio = std::max(max_ratio, (1.0 - p) / (1.0 - q));
    return std::log(max_ratio);
  }
  if (alpha == 2.0) {
    const double d = p - q;
    return std::log1p(d * d / (q * (1.0 - q)));
  }
  double t0 = -kInf, t1 = -kInf;
  if (p > 0.0) t0 = alpha * std::log(p) + (1.0 - alpha) * std::log(q);
  if (p < 1.0) t1 = alpha * std::log1p(-p) + (1.0 - alpha) * std::log1p(-q);
  const double peak = std::max(t0, t1);
  const double sum = std::exp(t0 - peak) + std::exp(t1 - peak);
  return (peak + std::log(sum)) / (alpha - 1.0);
}

double binary_kl(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) raise(Errc::out_of_range_probability, "p must lie in [0, 1]");
  if (!(q > 0.0 && q < 1.0)) raise(Errc::out_of_range_probability, "q must lie in (0, 1)");
  double sum = 0.0;
  if (p > 0.0) sum += p * std::log(p / q);
  if (p < 1.0) sum += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return std::max(sum, 0.0);
}

}  // namespace divbound
