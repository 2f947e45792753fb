#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "divbound/errors.hpp"

namespace divbound {

/// Absolute tolerance on probability-vector sums at construction.
inline constexpr double kSumTolerance = 1e-12;

/// Largest alphabet for which the balance coefficient is computed by exact
/// subset enumeration (2^n subsets).
inline constexpr std::size_t kExactSubsetLimit = 20;

/// A probability distribution on a named finite alphabet. Entries are
/// non-negative, sum to one within kSumTolerance, and labels are unique.
class DiscreteDistribution {
 public:
  DiscreteDistribution() = default;

  /// Validating constructor; renormalize divides by the mass sum instead of
  /// requiring it to be 1 already.
  DiscreteDistribution(std::vector<std::string> labels, std::vector<double> masses,
                       bool renormalize = false);

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  double min_prob() const noexcept;
  double max_prob() const noexcept;
  bool strictly_positive() const noexcept;

 private:
  std::vector<std::string> labels_;
  std::vector<double> probs_;
};

DiscreteDistribution build_distribution(std::vector<std::string> labels,
                                        std::vector<double> masses, bool renormalize = false);

/// Distribution over synthetic labels "a0", "a1", ...
DiscreteDistribution distribution_from_probs(std::vector<double> probs, bool renormalize = false);

DiscreteDistribution uniform_distribution(std::size_t n);

/// A (P, Q) pair on a common alphabet with cached pair statistics.
///
/// Atoms with P(a) = Q(a) = 0 are dropped at construction. rel_info holds
/// ln(P(a)/Q(a)) per atom, +inf where Q(a) = 0 < P(a) and -inf where
/// P(a) = 0 < Q(a). beta1 = 1/sup P/Q (0 when the ratio is unbounded) and
/// beta2 = inf P/Q over atoms with Q(a) > 0.
struct MeasurePair {
  DiscreteDistribution p;
  DiscreteDistribution q;
  std::vector<double> rel_info;
  double beta1 = 1.0;
  double beta2 = 1.0;
  double q_min = 0.0;
  double q_max = 0.0;
  double p_min = 0.0;
  bool mutually_absolutely_continuous = false;

  std::size_t size() const noexcept { return rel_info.size(); }
};

MeasurePair make_pair(const DiscreteDistribution& p, const DiscreteDistribution& q);

MeasurePair make_pair(std::vector<double> p_probs, std::vector<double> q_probs);

enum class BalanceMode { exact_only, allow_approximate };

struct BalanceCoefficient {
  double value = 0.0;
  bool approximate = false;
};

/// Balance coefficient pi_Q = max_A min{Q(A), 1-Q(A)} over all subsets A of
/// the alphabet; always <= 1/2. Exact enumeration up to kExactSubsetLimit
/// atoms; beyond that a closest-subset-sum pass on a 1e-6 mass grid is used
/// when allow_approximate is requested, and the result is flagged.
BalanceCoefficient balance_coefficient(const DiscreteDistribution& q,
                                       BalanceMode mode = BalanceMode::exact_only);

/// Seeded generator of strictly-positive-capable random pairs: each side is
/// uniform on the simplex (normalized unit-rate exponentials), then mixed
/// with the uniform distribution so every atom carries at least
/// positivity_floor mass. Identical seed and parameters reproduce the exact
/// same pair sequence.
class PairSampler {
 public:
  PairSampler(std::uint64_t seed, std::size_t alphabet_size, double positivity_floor = 0.0);

  MeasurePair next();
  DiscreteDistribution next_distribution();

  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t alphabet_size() const noexcept { return n_; }
  double positivity_floor() const noexcept { return floor_; }

 private:
  std::uint64_t seed_;
  std::size_t n_;
  double floor_;
  std::mt19937_64 engine_;
  std::vector<std::string> labels_;
};

}  // namespace divbound
