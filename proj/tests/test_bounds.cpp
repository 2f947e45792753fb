#include "divbound/bounds.hpp"

#include <cmath>
#include <limits>

#include "approx.hpp"
#include "divbound/divergence.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace divbound;
using testutil::close;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const MeasurePair kRunning = make_pair({0.5, 0.5}, {0.25, 0.75});
}  // namespace

TEST_CASE("Pinsker and its probability-dependent refinement") {
  CHECK(pinsker_lower(0.5).value == 0.125);
  CHECK(pinsker_lower(0.0).value == 0.0);
  CHECK_THROWS_AS(pinsker_lower(2.5), Error);

  CHECK(ow_phi(0.5) == 0.5);
  CHECK(close(ow_phi(0.25), 0.549306144334054846, 1e-14));
  CHECK(close(ow_phi(0.4999), 0.500000006666666827, 1e-12));
  CHECK(std::abs(ow_phi(0.4999) - 0.5) <= 1e-3);
  CHECK_THROWS_AS(ow_phi(0.0), Error);
  CHECK_THROWS_AS(ow_phi(0.75), Error);

  CHECK(ow_refined_pinsker_lower(0.5, 0.5).value == 0.125);
  CHECK(close(ow_refined_pinsker_lower(0.5, 0.25).value, 0.137326536083513711, 1e-14));

  double previous = kInf;  // phi decreases on (0, 1/2]
  for (double p : {0.05, 0.1, 0.2, 0.3, 0.4, 0.45, 0.5}) {
    const double phi = ow_phi(p);
    CHECK(phi <= previous + 1e-15);
    CHECK(phi >= 0.5);
    previous = phi;
  }
}

TEST_CASE("two-point band scaling") {
  // P(a) = 1/2 - eta/4 against its swap; tv = eta and eta^2/2 <= KL <= eta^2.
  for (double eta : {1e-3, 1e-2, 1e-1}) {
    const auto pair = make_pair({0.5 - eta / 4.0, 0.5 + eta / 4.0},
                                {0.5 + eta / 4.0, 0.5 - eta / 4.0});
    const double tv = total_variation(pair);
    CHECK(close(tv, eta, 1e-12));
    const double d = kl(pair);
    CHECK(d >= pinsker_lower(tv).value - 1e-18);
    CHECK(d <= eta * eta);
  }
  const auto tiny = make_pair({0.5 - 2.5e-4, 0.5 + 2.5e-4}, {0.5 + 2.5e-4, 0.5 - 2.5e-4});
  CHECK(std::abs(1e-6 / kl(tiny) - 2.0) <= 0.1);  // ratio of bounds is 2 within 5%
}

TEST_CASE("Gilardoni dual lower bound") {
  CHECK(close(gilardoni_dual_lower(0.5).value, 0.120324408966123611, 1e-14));
  CHECK(gilardoni_dual_lower(0.0).value == 0.0);
  CHECK_THROWS_AS(gilardoni_dual_lower(2.0), Error);

  // Not uniformly tighter than Pinsker: at the running pair it is smaller,
  // yet both sit under D(Q||P).
  const double kl_qp = kl(make_pair(kRunning.q, kRunning.p));
  CHECK(gilardoni_dual_lower(0.5).value < pinsker_lower(0.5).value);
  CHECK(kl_qp >= pinsker_lower(0.5).value);
  CHECK(kl_qp >= gilardoni_dual_lower(0.5).value);
}

TEST_CASE("Renyi-Pinsker lower bound") {
  CHECK(renyi_pinsker_lower(0.5, 1.0).value == 0.125);
  CHECK(renyi_pinsker_lower(0.5, 0.5).value == 0.0625);
  CHECK(renyi_pinsker_lower(0.5, 0.25).value <= renyi(kRunning, 0.25));
  CHECK_THROWS_AS(renyi_pinsker_lower(0.5, 1.5), Error);
  CHECK_THROWS_AS(renyi_pinsker_lower(0.5, 0.0), Error);
}

TEST_CASE("reverse bounds on the running pair") {
  const double tv = 0.5;
  CHECK(close(verdu_upper(tv, 0.5).value, 0.346573590279972655, 1e-14));
  CHECK(close(thm1_upper(tv, 0.5, 2.0 / 3.0).value, 0.179906923613305988, 1e-14));
  CHECK(close(csiszar_talata_upper(tv, 0.25).value, 1.0, 1e-15));
  CHECK(close(thm3_upper(tv, 0.25, 2.0 / 3.0).value, 0.322131774774831049, 1e-14));
  CHECK(close(corollary_upper(tv, 0.25).value, 0.405465108108164382, 1e-14));
  CHECK(close(euclidean_upper(euclidean_l2(kRunning), 0.25).value, 0.405465108108164382, 1e-14));

  const double exact = kl(kRunning);
  for (double bound : {verdu_upper(tv, 0.5).value, thm1_upper(tv, 0.5, 2.0 / 3.0).value,
                       csiszar_talata_upper(tv, 0.25).value,
                       thm3_upper(tv, 0.25, 2.0 / 3.0).value})
    CHECK(bound >= exact);
}

TEST_CASE("reverse bound corner cases") {
  CHECK(verdu_upper(0.0, 1.0).value == 0.0);  // beta1 = 1 forces P = Q
  CHECK(verdu_upper(0.5, 1.0).value == 0.25);  // analytic limit tv/2
  CHECK_FALSE(verdu_upper(0.5, 0.0).applicable);
  CHECK_FALSE(thm1_upper(0.5, 0.0, 0.0).applicable);
  CHECK(thm1_upper(0.5, 0.37, 0.0).value == verdu_upper(0.5, 0.37).value);
  CHECK(csiszar_talata_upper(0.0, 0.25).value == 0.0);
  CHECK_THROWS_AS(csiszar_talata_upper(0.5, 0.0), Error);
  CHECK_THROWS_AS(thm3_upper(0.5, 0.0, 0.5), Error);
  CHECK(thm3_upper(0.5, 0.25, 0.0).value == corollary_upper(0.5, 0.25).value);
  CHECK(euclidean_upper(0.0, 0.25).value == 0.0);
}

TEST_CASE("band condition collapses the tightened bound") {
  // With beta1 >= 1/(1+eta), beta2 >= 1-eta the bound falls to eta*tv and,
  // with tv <= eta, to eta^2.
  for (double eta : {0.05, 0.1, 0.3, 0.6}) {
    const double tv = eta;
    const auto bound = thm1_upper(tv, 1.0 / (1.0 + eta), 1.0 - eta);
    const double display = 0.5 * ((1.0 + eta) * std::log1p(eta) / eta - (1.0 - eta)) * tv;
    CHECK(close(bound.value, display, 1e-13));
    CHECK(bound.value <= eta * tv + 1e-15);
    CHECK(bound.value <= eta * eta + 1e-15);
  }
}

TEST_CASE("beta2 floor") {
  CHECK(beta2_floor(0.25, 0.75, 0.1) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(beta2_floor(0.25, 0.75, 0.3) == 0.0);
  CHECK_THROWS_AS(beta2_floor(0.0, 0.5, 0.1), Error);

  PairSampler sampler(51, 6, 1e-4);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto pair = sampler.next();
    const double floor = beta2_floor(pair.q_min, pair.q_max, total_variation(pair));
    CHECK(floor <= pair.beta2 + 1e-12);
  }
}

TEST_CASE("general measure chain") {
  const auto chain = general_measure_chain(0.5, 0.5, 2.0 / 3.0);
  CHECK(chain.chi2_upper == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(close(chain.kl_upper, 0.405465108108164382, 1e-14));
  CHECK(chain.kl_upper >= thm1_upper(0.5, 0.5, 2.0 / 3.0).value);

  const auto degenerate = general_measure_chain(0.0, 1.0, 1.0);
  CHECK(degenerate.chi2_upper == 0.0);
  CHECK(degenerate.kl_upper == 0.0);

  CHECK_FALSE(general_measure_chain(0.5, 0.0, 0.0).applicable);

  PairSampler sampler(61, 8, 1e-4);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto pair = sampler.next();
    const auto c = general_measure_chain(total_variation(pair), pair.beta1, pair.beta2);
    CHECK(chi_square(pair) <= c.chi2_upper + 1e-9 * std::max(1.0, c.chi2_upper));
    CHECK(renyi(pair, 2.0) <= c.d2_upper + 1e-12);
    CHECK(kl(pair) <= c.kl_upper + 1e-12);
  }
}

TEST_CASE("reverse Renyi bound") {
  const double tv = 0.5, p_min = 0.5, q_min = 0.25;
  CHECK(close(renyi_reverse_upper(3.0, tv, p_min, q_min).value, 0.693147180559945309, 1e-14));
  CHECK(close(renyi_reverse_upper(kInf, tv, p_min, q_min).value, 0.693147180559945309, 1e-14));
  CHECK(close(renyi_reverse_upper(1.5, tv, p_min, q_min).value, 0.405465108108164382, 1e-14));
  // alpha = 0.25: min{-2 ln(1 - tv/2), f1, f2} lands on f1.
  CHECK(close(renyi_reverse_upper(0.25, tv, p_min, q_min).value, 0.0639645171047365853, 1e-13));
  CHECK(renyi_reverse_upper(3.0, tv, p_min, q_min).value >= renyi(kRunning, 3.0));
  CHECK(renyi_reverse_upper(1.5, tv, p_min, q_min).value >= renyi(kRunning, 1.5));
  CHECK(renyi_reverse_upper(0.25, tv, p_min, q_min).value >= renyi(kRunning, 0.25));

  // At tv = 2 the Bhattacharyya branch is +inf and the min falls to f1/f2.
  const auto at_two = renyi_reverse_upper(0.25, 2.0, 0.1, 0.1);
  CHECK(std::isfinite(at_two.value));

  CHECK_THROWS_AS(renyi_reverse_upper(0.5, 0.5, 0.0, 0.25), Error);
  CHECK_THROWS_AS(renyi_reverse_upper(-1.0, 0.5, 0.5, 0.25), Error);
}

TEST_CASE("relative-information lower bound on tv") {
  const auto one = tv_lower_relinfo(kRunning);
  CHECK(close(one.value, 5.0 / 12.0, 1e-14));
  CHECK(close(one.eta, 0.405465108108164382, 1e-14));
  CHECK(one.value <= total_variation(kRunning));

  const auto same = tv_lower_relinfo(make_pair({0.3, 0.7}, {0.3, 0.7}));
  CHECK(same.value == 0.0);
  CHECK(same.eta == 0.0);

  CHECK_THROWS_AS(tv_lower_relinfo(make_pair({1.0, 0.0}, {0.5, 0.5})), Error);

  // Attainment at the sinh construction.
  const auto constructed = attainment_construction(std::log(2.0), std::log(2.0));
  CHECK(close(constructed.p[0], 2.0 / 3.0, 1e-14));
  CHECK(close(constructed.q[0], 1.0 / 3.0, 1e-14));
  const double tv = total_variation(constructed);
  CHECK(close(tv, 2.0 / 3.0, 1e-13));
  CHECK(close(tv_lower_relinfo(constructed).value, tv, 1e-12));

  // The breakpoint scan dominates any dense grid scan of the objective.
  PairSampler sampler(71, 7, 1e-3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pair = sampler.next();
    const auto best = tv_lower_relinfo(pair);
    const double dense =
        oracles::tv_lower_dense_scan(pair.p.probs(), pair.rel_info, 12.0, 3000);
    CHECK(best.value >= dense - 1e-9);
    CHECK(best.value <= total_variation(pair) + 1e-12);
  }
}

TEST_CASE("two-parameter lower bound") {
  const auto two = tv_lower_two_param(kRunning);
  CHECK(close(two.value, 0.5, 1e-13));  // attains tv exactly on this pair
  CHECK(close(two.eta1, 0.693147180559945309, 1e-14));
  CHECK(close(two.eta2, 0.405465108108164382, 1e-14));

  const auto same = tv_lower_two_param(make_pair({0.3, 0.7}, {0.3, 0.7}));
  CHECK(same.value == 0.0);

  PairSampler sampler(73, 9, 1e-4);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto pair = sampler.next();
    const auto one = tv_lower_relinfo(pair);
    const auto pair_two = tv_lower_two_param(pair);
    CHECK(pair_two.value >= one.value - 1e-12);
    CHECK(pair_two.value <= total_variation(pair) + 1e-12);
  }
}

TEST_CASE("attainment construction hits the bound on a grid") {
  CHECK_THROWS_AS(attainment_construction(0.0, 1.0), Error);
  CHECK_THROWS_AS(attainment_construction(1.0, -1.0), Error);

  const auto general = attainment_construction(std::log(2.0), std::log(1.5));
  CHECK(close(general.p[0], 0.5, 1e-14));
  CHECK(close(general.q[0], 0.25, 1e-14));

  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      const double eta1 = 0.15 * i;
      const double eta2 = 0.15 * j;
      const auto pair = attainment_construction(eta1, eta2);
      CHECK(std::abs(pair.rel_info[0] - eta1) <= 1e-12 * std::max(1.0, eta1));
      CHECK(std::abs(pair.rel_info[1] + eta2) <= 1e-12 * std::max(1.0, eta2));
      const double tv = total_variation(pair);
      const auto bound = tv_lower_two_param(pair);
      CHECK(std::abs(bound.value - tv) <= 1e-12 * std::max(1.0, tv));
    }
  }
}

TEST_CASE("tv upper bound from the relative entropy") {
  CHECK(tv_upper_from_kl(0.0).value == 0.0);
  CHECK(close(tv_upper_from_kl(std::log(2.0)).value, 1.41421356237309505, 1e-14));
  CHECK(close(tv_upper_from_kl(kl(kRunning)).value, 0.732050807568877294, 1e-13));
  CHECK(tv_upper_from_kl(kl(kRunning)).value >= total_variation(kRunning));
  CHECK(tv_upper_from_kl(kInf).value == 2.0);
  CHECK_THROWS_AS(tv_upper_from_kl(-0.1), Error);
}

TEST_CASE("equiprobable example") {
  const auto bounds = equiprobable_example(1024, 0.5);
  CHECK(close(bounds.lower, 0.246062746062869094, 1e-13));
  CHECK(close(bounds.looser_lower, 0.0581765220477974083, 1e-13));
  CHECK(close(bounds.upper, 1.96850196850295275, 1e-13));
  CHECK(bounds.lower >= bounds.looser_lower);

  const auto degenerate = equiprobable_example(1024, 1.0);
  CHECK(degenerate.lower == 0.0);
  CHECK(degenerate.upper == 0.0);

  const auto nearly_zero = equiprobable_example(1024, 1e-6);
  CHECK(std::abs(nearly_zero.upper / nearly_zero.lower - std::sqrt(2.0)) <= 1e-3);

  CHECK_THROWS_AS(equiprobable_example(1, 0.5), Error);
  CHECK_THROWS_AS(equiprobable_example(16, 1.5), Error);
}

TEST_CASE("bound report consolidates everything") {
  const auto report = bound_report(kRunning);
  CHECK(close(report.kl_pq, 0.143841036225890464, 1e-14));
  CHECK(close(report.kl_qp, 0.130812035941136959, 1e-14));
  CHECK(report.tv == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(report.pi_q == 0.25);
  CHECK_FALSE(report.pi_q_approximate);

  for (const auto& bound : report.bounds) {
    if (!bound.applicable) continue;
    double target = 0.0;
    switch (bound.target) {
      case Target::kl_pq: target = report.kl_pq; break;
      case Target::kl_qp: target = report.kl_qp; break;
      case Target::tv: target = report.tv; break;
      case Target::chi2: target = report.chi2; break;
      case Target::d2: target = report.renyi_two; break;
      case Target::renyi: target = renyi(kRunning, *bound.order); break;
    }
    if (bound.direction == Direction::upper) {
      CHECK(bound.value >= target - 1e-12);
    } else {
      CHECK(bound.value <= target + 1e-12);
    }
  }
  for (const auto& [name, holds] : report.orderings) {
    INFO(name);
    CHECK(holds);
  }
  REQUIRE(report.find("thm1") != nullptr);
  CHECK(report.find("thm1")->applicable);
  CHECK(report.find("no_such_bound") == nullptr);
}

TEST_CASE("bound report on degenerate pairs") {
  const auto same = bound_report(make_pair({0.3, 0.7}, {0.3, 0.7}));
  CHECK(same.kl_pq == 0.0);
  CHECK(same.tv == 0.0);
  for (const auto& bound : same.bounds) {
    if (bound.applicable && bound.direction == Direction::upper) CHECK(bound.value >= 0.0);
  }

  const auto one_sided = bound_report(make_pair({1.0, 0.0}, {0.5, 0.5}));
  CHECK(close(one_sided.kl_pq, 0.693147180559945309, 1e-14));
  REQUIRE(one_sided.find("verdu") != nullptr);
  CHECK(one_sided.find("verdu")->applicable);
  CHECK(close(one_sided.find("verdu")->value, 0.693147180559945309, 1e-13));
  CHECK(one_sided.find("thm1")->applicable);
  CHECK(one_sided.find("thm1")->value >= one_sided.kl_pq - 1e-12);
  CHECK_FALSE(one_sided.find("tv_lower_relinfo")->applicable);
  CHECK_FALSE(one_sided.find("tv_lower_relinfo")->reason.empty());
}
