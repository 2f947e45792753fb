#include "divbound/divergence.hpp"

#include <cmath>
#include <limits>

#include "approx.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace divbound;
using testutil::close;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const MeasurePair kRunning = make_pair({0.5, 0.5}, {0.25, 0.75});
}  // namespace

TEST_CASE("relative entropy") {
  CHECK(close(kl(kRunning), 0.143841036225890464, 1e-14));
  CHECK(kl(make_pair({0.3, 0.7}, {0.3, 0.7})) == 0.0);
  CHECK(std::isinf(kl(make_pair({1.0, 0.0}, {0.0, 1.0}))));
}

TEST_CASE("total variation") {
  CHECK(total_variation(kRunning) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(total_variation(make_pair({0.3, 0.7}, {0.3, 0.7})) == 0.0);
  CHECK(total_variation(make_pair({1.0, 0.0}, {0.0, 1.0})) == 2.0);
}

TEST_CASE("chi square") {
  CHECK(close(chi_square(kRunning), 1.0 / 3.0, 1e-15));
  CHECK(chi_square(make_pair({0.3, 0.7}, {0.3, 0.7})) == 0.0);
  // (0.4^2 + 0.4^2) / 0.5 by exact rational arithmetic.
  CHECK(close(chi_square(make_pair({0.9, 0.1}, {0.5, 0.5})), 0.64, 1e-15));
  CHECK_THROWS_AS(chi_square(make_pair({0.5, 0.5}, {1.0, 0.0})), Error);
}

TEST_CASE("Renyi divergence endpoints and frozen orders") {
  CHECK(close(renyi(kRunning, 2.0), 0.287682072451780927, 1e-14));
  CHECK(close(renyi(kRunning, kInf), 0.693147180559945309, 1e-14));
  CHECK(close(renyi(kRunning, 0.25), 0.0337525898559189878, 1e-13));
  CHECK(close(renyi(kRunning, 1.5), 0.218345608256707017, 1e-13));
  CHECK(close(renyi(kRunning, 3.0), 0.399253848108885805, 1e-13));
  CHECK(renyi(kRunning, 1.0) == kl(kRunning));
  CHECK(close(renyi(make_pair({1.0, 0.0}, {0.25, 0.75}), 0.0), 1.38629436111989062, 1e-14));
  CHECK(renyi(kRunning, 0.0) == 0.0);  // full support
  CHECK_THROWS_AS(renyi(kRunning, -0.5), Error);
}

TEST_CASE("Renyi divergence against the high-precision oracle") {
  PairSampler sampler(3, 5, 1e-4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pair = sampler.next();
    const auto& p = pair.p.probs();
    const auto& q = pair.q.probs();
    CHECK(close(kl(pair), oracles::kl(p, q), 1e-13));
    CHECK(close(total_variation(pair), oracles::total_variation(p, q), 1e-13));
    CHECK(close(chi_square(pair), oracles::chi_square(p, q), 1e-13));
    for (double alpha : {0.3, 0.7, 1.4, 2.0, 2.5, 6.0})
      CHECK(close(renyi(pair, alpha), oracles::renyi(p, q, alpha), 1e-12));
  }
}

TEST_CASE("Renyi monotonicity and the alpha = 1 seam") {
  PairSampler sampler(9, 8, 1e-4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pair = sampler.next();
    double previous = -1.0;
    for (double alpha : {0.0, 0.1, 0.2, 0.5, 0.9, 1.0, 1.1, 1.5, 2.0, 3.0, 4.0, 8.0, kInf}) {
      const double value = renyi(pair, alpha);
      CHECK(value >= previous - 1e-12);
      previous = value;
    }
    const double d = kl(pair);
    CHECK(std::abs(renyi(pair, 1.0 - 1e-6) - d) <= 1e-4);
    CHECK(std::abs(renyi(pair, 1.0 + 1e-6) - d) <= 1e-4);
  }
}

TEST_CASE("skew symmetry and the chi2 identity") {
  PairSampler sampler(17, 3, 1e-4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pair = sampler.next();
    const auto reversed = make_pair(pair.q, pair.p);
    for (double alpha : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      const double lhs = renyi(pair, alpha);
      const double rhs = alpha / (1.0 - alpha) * renyi(reversed, 1.0 - alpha);
      CHECK(close(lhs, rhs, 1e-10));
    }
    CHECK(close(chi_square(pair), std::expm1(renyi(pair, 2.0)), 1e-12));
  }
}

TEST_CASE("relative-information identities") {
  PairSampler sampler(23, 6, 1e-4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pair = sampler.next();
    double sum = 0.0;  // E_Q[i exp(i)]
    double max_dev = 0.0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
      sum += pair.q[i] * pair.rel_info[i] * std::exp(pair.rel_info[i]);
      max_dev = std::max(max_dev, std::abs(pair.p[i] - pair.q[i]));
    }
    CHECK(close(kl(pair), sum, 1e-12));
    CHECK(total_variation(pair) >= 2.0 * max_dev - 1e-12);
  }
}

TEST_CASE("Bhattacharyya coefficient") {
  const auto running = bhattacharyya(kRunning);
  CHECK(close(running.coefficient, 0.965925826289068287, 1e-15));
  CHECK(close(running.renyi_half, 0.0693364641950739102, 1e-13));
  CHECK(close(running.renyi_half, renyi(kRunning, 0.5), 1e-13));

  const auto same = bhattacharyya(make_pair({0.3, 0.7}, {0.3, 0.7}));
  CHECK(same.coefficient == 1.0);
  CHECK(same.renyi_half == 0.0);

  const auto disjoint = bhattacharyya(make_pair({1.0, 0.0}, {0.0, 1.0}));
  CHECK(disjoint.coefficient == 0.0);
  CHECK(std::isinf(disjoint.renyi_half));
}

TEST_CASE("Euclidean norm") {
  CHECK(close(euclidean_l2(kRunning), 0.353553390593273762, 1e-15));
  CHECK(euclidean_l2(make_pair({0.3, 0.7}, {0.3, 0.7})) == 0.0);
  CHECK(close(euclidean_l2(make_pair({1.0, 0.0}, {0.0, 1.0})), std::sqrt(2.0), 1e-15));
}

TEST_CASE("binary Renyi specialization") {
  CHECK(close(binary_kl(0.275, 0.25), 0.00163167448132035905, 1e-13));
  for (double alpha : {0.0, 0.5, 1.0, 2.0, kInf}) CHECK(binary_renyi(0.3, 0.3, alpha) == 0.0);
  CHECK(close(binary_renyi(0.5, 0.25, 2.0), 0.287682072451780927, 1e-14));

  // Matches the two-atom general-alphabet path.
  std::mt19937_64 engine(5);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const double p = unif(engine);
    const double q = unif(engine);
    const auto pair = make_pair({p, 1.0 - p}, {q, 1.0 - q});
    for (double alpha : {0.0, 0.25, 0.5, 1.0, 1.7, 2.0, 3.0, kInf})
      CHECK(close(binary_renyi(p, q, alpha), renyi(pair, alpha), 1e-12));
  }

  CHECK_THROWS_AS(binary_renyi(1.2, 0.5, 1.0), Error);
  CHECK_THROWS_AS(binary_renyi(0.5, 1.0, 1.0), Error);
  CHECK_THROWS_AS(binary_renyi(0.5, 0.5, -1.0), Error);
}
