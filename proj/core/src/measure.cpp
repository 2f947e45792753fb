#include "divbound/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string_view>
#include <unordered_set>

#include <boost/dynamic_bitset.hpp>

namespace divbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::negative_mass: return "NegativeMass";
    case Errc::sum_out_of_tolerance: return "SumOutOfTolerance";
    case Errc::empty_alphabet: return "EmptyAlphabet";
    case Errc::duplicate_label: return "DuplicateLabel";
    case Errc::alphabet_mismatch: return "AlphabetMismatch";
    case Errc::alphabet_too_large_for_exact: return "AlphabetTooLargeForExact";
    case Errc::floor_too_large: return "FloorTooLarge";
    case Errc::zero_q_atom: return "ZeroQAtom";
    case Errc::negative_order: return "NegativeOrder";
    case Errc::out_of_range_probability: return "OutOfRangeProbability";
    case Errc::undefined_limit: return "UndefinedLimit";
    case Errc::non_positive_entry: return "NonPositiveEntry";
    case Errc::not_strictly_positive: return "NotStrictlyPositive";
    case Errc::g_not_convex: return "GNotConvex";
    case Errc::tv_out_of_range: return "TVOutOfRange";
    case Errc::bad_balance: return "BadBalance";
    case Errc::order_out_of_range: return "OrderOutOfRange";
    case Errc::zero_q_min: return "ZeroQMin";
    case Errc::zero_min: return "ZeroMin";
    case Errc::not_mutually_ac: return "NotMutuallyAC";
    case Errc::non_positive_eta: return "NonPositiveEta";
    case Errc::bad_beta: return "BadBeta";
    case Errc::grid_too_coarse: return "GridTooCoarse";
    case Errc::no_feasible_point: return "NoFeasiblePoint";
    case Errc::alphabet_too_large: return "AlphabetTooLarge";
    case Errc::infeasible_delta: return "InfeasibleDelta";
    case Errc::unknown_inequality: return "UnknownInequality";
    case Errc::empty_vector: return "EmptyVector";
    case Errc::param_out_of_range: return "ParamOutOfRange";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::q_too_large: return "QTooLarge";
    case Errc::non_positive_delta: return "NonPositiveDelta";
    case Errc::bad_input: return "BadInput";
  }
  return "UnknownError";
}

DiscreteDistribution::DiscreteDistribution(std::vector<std::string> labels,
                                           std::vector<double> masses, bool renormalize)
    : labels_(std::move(labels)), probs_(std::move(masses)) {
  if (probs_.empty()) raise(Errc::empty_alphabet, "a distribution needs at least one atom");
  if (labels_.size() != probs_.size())
    raise(Errc::length_mismatch, "label and mass vectors differ in length");

  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels_) {
    if (!seen.insert(label).second) raise(Errc::duplicate_label, "repeated label '" + label + "'");
  }

  double sum = 0.0;
  for (double m : probs_) {
    if (!(m >= 0.0)) raise(Errc::negative_mass, "mass entries must be non-negative");
    sum += m;
  }
  if (renormalize) {
    if (sum <= 0.0) raise(Errc::sum_out_of_tolerance, "cannot renormalize zero total mass");
    for (double& m : probs_) m /= sum;
  } else if (std::abs(sum - 1.0) > kSumTolerance) {
    raise(Errc::sum_out_of_tolerance,
          "masses sum to " + std::to_string(sum) + ", expected 1 within 1e-12");
  }
}

double DiscreteDistribution::min_prob() const noexcept {
  return *std::min_element(probs_.begin(), probs_.end());
}

double DiscreteDistribution::max_prob() const noexcept {
  return *std::max_element(probs_.begin(), probs_.end());
}

bool DiscreteDistribution::strictly_positive() const noexcept { return min_prob() > 0.0; }

DiscreteDistribution build_distribution(std::vector<std::string> labels,
                                        std::vector<double> masses, bool renormalize) {
  return DiscreteDistribution(std::move(labels), std::move(masses), renormalize);
}

DiscreteDistribution distribution_from_probs(std::vector<double> probs, bool renormalize) {
  std::vector<std::string> labels(probs.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = "a" + std::to_string(i);
  return DiscreteDistribution(std::move(labels), std::move(probs), renormalize);
}

DiscreteDistribution uniform_distribution(std::size_t n) {
  if (n == 0) raise(Errc::empty_alphabet, "a distribution needs at least one atom");
  return distribution_from_probs(std::vector<double>(n, 1.0 / static_cast<double>(n)), true);
}

MeasurePair make_pair(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  if (p.labels() != q.labels())
    raise(Errc::alphabet_mismatch, "P and Q must share the same ordered alphabet");

  // Drop atoms that carry no mass on either side; they contribute nothing to
  // any divergence under the 0*f(0/0) = 0 convention.
  std::vector<std::string> labels;
  std::vector<double> pp, qq;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0 && q[i] == 0.0) continue;
    labels.push_back(p.labels()[i]);
    pp.push_back(p[i]);
    qq.push_back(q[i]);
  }
  if (labels.empty()) raise(Errc::empty_alphabet, "all atoms have zero mass on both sides");

  MeasurePair pair;
  pair.rel_info.resize(pp.size());
  double max_ratio = 0.0;
  double min_ratio = kInf;
  bool ratio_unbounded = false;
  for (std::size_t i = 0; i < pp.size(); ++i) {
    if (qq[i] == 0.0) {
      pair.rel_info[i] = kInf;  // P(a) > 0 here by the drop rule
      ratio_unbounded = true;
    } else if (pp[i] == 0.0) {
      pair.rel_info[i] = -kInf;
      min_ratio = 0.0;
    } else {
      const double ratio = pp[i] / qq[i];
      pair.rel_info[i] = std::log(ratio);
      max_ratio = std::max(max_ratio, ratio);
      min_ratio = std::min(min_ratio, ratio);
    }
  }
  pair.beta1 = ratio_unbounded ? 0.0 : 1.0 / max_ratio;
  pair.beta2 = std::isfinite(min_ratio) ? min_ratio : 0.0;
  pair.q_min = *std::min_element(qq.begin(), qq.end());
  pair.q_max = *std::max_element(qq.begin(), qq.end());
  pair.p_min = *std::min_element(pp.begin(), pp.end());
  pair.mutually_absolutely_continuous = pair.p_min > 0.0 && pair.q_min > 0.0;
  pair.p = DiscreteDistribution(labels, std::move(pp));
  pair.q = DiscreteDistribution(std::move(labels), std::move(qq));
  return pair;
}

MeasurePair make_pair(std::vector<double> p_probs, std::vector<double> q_probs) {
  return make_pair(distribution_from_probs(std::move(p_probs)),
                   distribution_from_probs(std::move(q_probs)));
}

namespace {

double exact_balance(const std::vector<double>& q) {
  // pi_Q is the largest achievable subset mass not exceeding 1/2: a subset
  // and its complement realize min{s, 1-s} symmetrically.
  const std::size_t n = q.size();
  double best = 0.0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  double sum = 0.0;
  std::uint64_t gray = 0;
  for (std::uint64_t index = 1; index < subsets; ++index) {
    const std::uint64_t next_gray = index ^ (index >> 1);
    const std::uint64_t flipped = gray ^ next_gray;
    const int bit = std::countr_zero(flipped);
    sum += (next_gray & flipped) ? q[static_cast<std::size_t>(bit)]
                                 : -q[static_cast<std::size_t>(bit)];
    gray = next_gray;
    best = std::max(best, std::min(sum, 1.0 - sum));
  }
  return std::min(best, 0.5);
}

double approximate_balance(const std::vector<double>& q) {
  // Pseudo-polynomial closest-subset-sum on a 1e-6 mass grid.
  constexpr long grid = 1'000'000;
  std::vector<long> units(q.size());
  long total = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    units[i] = std::lround(q[i] * grid);
    total += units[i];
  }
  boost::dynamic_bitset<> reachable(static_cast<std::size_t>(total) + 1);
  reachable[0] = true;
  for (long u : units) {
    if (u > 0) reachable |= reachable << static_cast<std::size_t>(u);
  }
  const long half = total / 2;
  long below = -1, above = -1;
  for (long j = half; j >= 0; --j) {
    if (reachable[static_cast<std::size_t>(j)]) { below = j; break; }
  }
  for (long j = half + 1; j <= total; ++j) {
    if (reachable[static_cast<std::size_t>(j)]) { above = j; break; }
  }
  double best = 0.0;
  if (below >= 0) best = std::max(best, std::min<double>(below, total - below));
  if (above >= 0) best = std::max(best, std::min<double>(above, total - above));
  return std::min(best / grid, 0.5);
}

}  // namespace

BalanceCoefficient balance_coefficient(const DiscreteDistribution& q, BalanceMode mode) {
  if (q.size() <= kExactSubsetLimit) return {exact_balance(q.probs()), false};
  if (mode == BalanceMode::exact_only)
    raise(Errc::alphabet_too_large_for_exact,
          "exact subset enumeration is capped at " + std::to_string(kExactSubsetLimit) +
              " atoms; opt into the approximate mode");
  return {approximate_balance(q.probs()), true};
}

namespace {

// 53-bit mantissa mapping keeps the draw sequence identical across standard
// library implementations.
double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace

PairSampler::PairSampler(std::uint64_t seed, std::size_t alphabet_size, double positivity_floor)
    : seed_(seed), n_(alphabet_size), floor_(positivity_floor), engine_(seed) {
  if (n_ < 2) raise(Errc::empty_alphabet, "pair sampling needs at least two atoms");
  if (!(floor_ >= 0.0)) raise(Errc::floor_too_large, "positivity floor must be >= 0");
  if (floor_ * static_cast<double>(n_) >= 1.0)
    raise(Errc::floor_too_large, "positivity_floor * alphabet_size must be < 1");
  labels_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) labels_[i] = "a" + std::to_string(i);
}

DiscreteDistribution PairSampler::next_distribution() {
  std::vector<double> x(n_);
  double sum = 0.0;
  for (double& v : x) {
    // Unit-rate exponential draws normalize to a uniform simplex point.
    v = -std::log1p(-uniform01(engine_));
    sum += v;
  }
  const double mix = floor_ * static_cast<double>(n_);
  for (double& v : x) v = (1.0 - mix) * (v / sum) + floor_;
  return DiscreteDistribution(labels_, std::move(x));
}

MeasurePair PairSampler::next() {
  DiscreteDistribution p = next_distribution();
  DiscreteDistribution q = next_distribution();
  return make_pair(p, q);
}

}  // namespace divbound
