#include "divbound/partial_sums.hpp"

#include <algorithm>
#include <cmath>

#include "divbound/divergence.hpp"

namespace divbound {

namespace {

constexpr std::size_t kMaxFactors = 1000;

void check_lengths(const BernoulliVector& p, const BernoulliVector& q) {
  if (p.size() != q.size())
    raise(Errc::length_mismatch, "Bernoulli vectors differ in length");
}

}  // namespace

BernoulliVector make_bernoulli_vector(std::vector<double> params) {
  if (params.empty()) raise(Errc::empty_vector, "need at least one Bernoulli factor");
  if (params.size() > kMaxFactors)
    raise(Errc::param_out_of_range, "factor count capped at 1000");
  for (double v : params)
    if (!(v > 0.0 && v < 1.0))
      raise(Errc::param_out_of_range, "Bernoulli parameters must lie in (0, 1)");
  return {std::move(params)};
}

DiscreteDistribution partial_sum_pmf(const BernoulliVector& bernoullis) {
  if (bernoullis.params.empty()) raise(Errc::empty_vector, "need at least one Bernoulli factor");
  std::vector<double> params = bernoullis.params;
  for (double v : params)
    if (!(v > 0.0 && v < 1.0))
      raise(Errc::param_out_of_range, "Bernoulli parameters must lie in (0, 1)");
  std::sort(params.begin(), params.end());

  std::vector<double> pmf{1.0};
  pmf.reserve(params.size() + 1);
  for (double prob : params) {
    pmf.push_back(0.0);
    for (std::size_t k = pmf.size() - 1; k > 0; --k)
      pmf[k] = pmf[k] * (1.0 - prob) + pmf[k - 1] * prob;
    pmf[0] *= 1.0 - prob;
  }

  std::vector<std::string> labels(pmf.size());
  for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = std::to_string(k);
  return DiscreteDistribution(std::move(labels), std::move(pmf));
}

RenyiChainCheck renyi_chain_check(const BernoulliVector& p, const BernoulliVector& q,
                                  double alpha) {
  check_lengths(p, q);
  for (double v : q.params)
    if (v > 0.5) raise(Errc::q_too_large, "the convention q_i <= 1/2 is required");

  RenyiChainCheck result;
  result.lhs = renyi(make_pair(partial_sum_pmf(p), partial_sum_pmf(q)), alpha);
  for (std::size_t i = 0; i < p.size(); ++i) {
    result.additivity_sum += binary_renyi(p.params[i], q.params[i], alpha);
    const double ratio_dev = p.params[i] / q.params[i] - 1.0;
    if (alpha <= 2.0) {
      result.bound_sum += std::log1p(2.0 * q.params[i] * ratio_dev * ratio_dev);
    } else {
      result.bound_sum += std::log1p(2.0 * std::abs(ratio_dev));
    }
  }
  result.holds = result.lhs <= result.additivity_sum + 1e-10 &&
                 result.additivity_sum <= result.bound_sum + 1e-10;
  return result;
}

SummabilityCaps summability_caps(const BernoulliVector& p, const BernoulliVector& q) {
  check_lengths(p, q);
  SummabilityCaps caps;
  caps.eps.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double eps = std::abs(p.params[i] / q.params[i] - 1.0);
    caps.eps[i] = eps;
    caps.k1 += std::log1p(eps * eps);
    caps.k2 += std::log1p(2.0 * eps);
  }
  return caps;
}

}  // namespace divbound
