#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "divbound/measure.hpp"

namespace divbound {

/// Enumerates every probability vector with entries k/m on an n-atom
/// alphabet (the type classes of length-m sequences); there are
/// C(m+n-1, n-1) of them.
class TypeClassGrid {
 public:
  TypeClassGrid(std::size_t n, unsigned m);

  std::size_t alphabet_size() const noexcept { return n_; }
  unsigned denominator() const noexcept { return m_; }

  /// Number of grid points, C(m+n-1, n-1); throws on 64-bit overflow.
  unsigned long long count() const;

  /// Visits every count vector (k_1, ..., k_n) with sum m, in a fixed
  /// deterministic order.
  template <class Visitor>
  void for_each(Visitor&& visit) const {
    std::vector<unsigned> counts(n_, 0);
    counts[0] = m_;
    while (true) {
      visit(static_cast<const std::vector<unsigned>&>(counts));
      if (counts[n_ - 1] == m_) break;
      std::size_t i = n_ - 1;
      while (counts[--i] == 0) {}
      --counts[i];
      const unsigned carry = counts[n_ - 1] + 1;
      counts[n_ - 1] = 0;
      counts[i + 1] = carry;
    }
  }

 private:
  std::size_t n_;
  unsigned m_;
};

struct DStarResult {
  double value = 0.0;                 // grid-plus-refinement minimum of D(P||Q)
  DiscreteDistribution argmin;
  double eps = 0.0;
  unsigned m = 0;
  std::string note;                   // honest oracle semantics: upper bound on the infimum
};

/// Brute-force upper bound on D*(eps, Q) = inf {D(P||Q) : |P-Q| >= eps}:
/// grid minimum over type classes with |P-Q| >= eps, then one local
/// coordinate-pair refinement pass at step 1/(10m) projected to the
/// constraint boundary. Gap O(n/m).
DStarResult d_star(const DiscreteDistribution& q, double eps, unsigned m);

/// Exact minimum of D(P||Q) over {P : exists a, |P(a)-Q(a)| >= delta Q(a)}:
/// the constrained minimizer fixes one atom at (1 +/- delta) Q(a) and spreads
/// the rest proportionally, so the value is the smallest feasible binary
/// divergence d((1 +/- delta) Q(a) || Q(a)).
double sanov_exponent_exact(const DiscreteDistribution& q, double delta);

/// Grid restriction of the same minimum over type classes (n <= 4, m >= 200);
/// never smaller than the exact value.
double sanov_exponent_grid(const DiscreteDistribution& q, double delta, unsigned m);

struct Violation {
  double lhs = 0.0;   // canonical form: lhs <= rhs violated
  double rhs = 0.0;
  double slack = 0.0; // lhs - rhs when positive
  std::string detail;
};

struct InequalityCheck {
  std::string id;
  bool proven;  // proven checks must yield zero witnesses; diagnostics may not
  std::string description;
  std::function<std::optional<Violation>(const MeasurePair&)> evaluate;
};

/// All registered inequality and identity checks, proven and diagnostic.
const std::vector<InequalityCheck>& inequality_catalog();

const InequalityCheck* find_inequality(const std::string& id);

struct Witness {
  std::string inequality;
  MeasurePair pair;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::string detail;
};

/// Evaluates one registered inequality on `trials` sampled pairs and returns
/// the first violating pair, if any. Deterministic given the sampler seed.
std::optional<Witness> counterexample_search(const std::string& inequality_id,
                                             PairSampler sampler, std::size_t trials);

struct VerificationSummary {
  std::size_t pairs = 0;
  std::size_t checks = 0;
  std::vector<Witness> violations;   // failures of proven checks
  std::vector<Witness> diagnostics;  // findings from expected-to-fail checks
};

/// The standard sweep: `trials` pairs split across the alphabet sizes, every
/// catalog entry evaluated on each pair. Proven-check failures land in
/// violations; diagnostic findings are reported separately (first witness per
/// diagnostic id).
VerificationSummary run_verification_sweep(std::uint64_t seed, std::size_t trials,
                                           const std::vector<std::size_t>& sizes = {2, 3, 8, 64},
                                           bool include_diagnostics = true);

}  // namespace divbound
