#include "divbound/fdivergence.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "divbound/divergence.hpp"

namespace divbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool midpoint_convex(const std::function<double(double)>& f) {
  // Spot check on 10^3 random triples (x, y, midpoint), log-uniform over
  // roughly (1e-3, 20).
  std::mt19937_64 engine(0x5eedf00dULL);
  std::uniform_real_distribution<double> log_range(-7.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = std::exp(log_range(engine));
    const double y = std::exp(log_range(engine));
    const double fx = f(x), fy = f(y), fm = f(0.5 * (x + y));
    const double slack = 1e-9 * (1.0 + std::abs(fx) + std::abs(fy));
    if (!(fm <= 0.5 * (fx + fy) + slack)) return false;
  }
  return true;
}

}  // namespace

ConvexGenerator make_generator(std::string name, std::function<double(double)> f,
                               double f_at_zero, double slope_at_infinity, bool g_convex) {
  if (std::abs(f(1.0)) > 1e-12)
    raise(Errc::bad_input, "generator '" + name + "' must satisfy f(1) = 0");
  if (!midpoint_convex(f))
    raise(Errc::bad_input, "generator '" + name + "' failed the convexity spot-check");
  ConvexGenerator gen{std::move(name), std::move(f), f_at_zero, slope_at_infinity, g_convex};
  if (g_convex) {
    if (!midpoint_convex([&gen](double t) { return gen.g(t); }))
      raise(Errc::g_not_convex, "companion g(t) = -t f(t) failed the convexity spot-check");
  }
  return gen;
}

double f_divergence(const ConvexGenerator& gen, const MeasurePair& pair) {
  const auto& p = pair.p.probs();
  const auto& q = pair.q.probs();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] > 0.0 && p[i] > 0.0) {
      sum += q[i] * gen.f(p[i] / q[i]);
    } else if (q[i] > 0.0) {  // P(a) = 0: use f(0) = lim f
      if (std::isnan(gen.f_at_zero))
        raise(Errc::undefined_limit, "generator '" + gen.name + "' lacks lim_{t->0} f(t)");
      sum += q[i] * gen.f_at_zero;
    } else if (p[i] > 0.0) {  // Q(a) = 0: use b lim f(u)/u
      if (std::isnan(gen.slope_at_infinity))
        raise(Errc::undefined_limit, "generator '" + gen.name + "' lacks lim f(u)/u");
      sum += p[i] * gen.slope_at_infinity;
    }
    if (std::isinf(sum)) return kInf;
  }
  return sum;
}

double jensen_functional(const ConvexGenerator& gen, std::span<const double> u,
                         const DiscreteDistribution& mu) {
  if (u.size() != mu.size())
    raise(Errc::length_mismatch, "u must have one entry per alphabet atom");
  double mean = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0)) raise(Errc::non_positive_entry, "u entries must be strictly positive");
    mean += mu[i] * u[i];
    sum += mu[i] * gen.f(u[i]);
  }
  return sum - gen.f(mean);
}

Sandwich dragomir_sandwich(const ConvexGenerator& gen, std::span<const double> u,
                           const MeasurePair& pair) {
  if (!pair.mutually_absolutely_continuous)
    raise(Errc::not_strictly_positive, "both measures must be strictly positive");
  const double jq = jensen_functional(gen, u, pair.q);
  const double jp = jensen_functional(gen, u, pair.p);
  return {pair.beta2 * jq, jp, jq / pair.beta1};
}

Sandwich proposition_sandwich(const ConvexGenerator& gen, const MeasurePair& pair) {
  if (!gen.g_convex)
    raise(Errc::g_not_convex, "generator '" + gen.name + "' does not claim a convex g");
  if (!pair.mutually_absolutely_continuous)
    raise(Errc::not_strictly_positive, "both measures must be strictly positive");

  const auto& p = pair.p.probs();
  const auto& q = pair.q.probs();
  double df = 0.0;       // D_f(P||Q)
  double neg_dg = 0.0;   // -D_g(P||Q) = sum P(a) f(P(a)/Q(a))
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double ratio = p[i] / q[i];
    const double value = gen.f(ratio);
    df += q[i] * value;
    neg_dg += p[i] * value;
  }
  const double mid = neg_dg - gen.f(1.0 + chi_square(pair));
  return {pair.beta2 * df, mid, df / pair.beta1};
}

namespace {

ConvexGenerator make_kl_generator() {
  return make_generator(
      "t ln t", [](double t) { return t * std::log(t); }, 0.0, kInf, false);
}

ConvexGenerator make_dual_kl_generator() {
  return make_generator(
      "-ln t", [](double t) { return -std::log(t); }, kInf, 0.0, true);
}

ConvexGenerator make_chi_square_generator() {
  return make_generator(
      "(t-1)^2", [](double t) { const double d = t - 1.0; return d * d; }, 1.0, kInf, false);
}

ConvexGenerator make_hellinger_generator() {
  return make_generator(
      "1-sqrt(t)", [](double t) { return 1.0 - std::sqrt(t); }, 1.0, 0.0, true);
}

ConvexGenerator make_total_variation_generator() {
  return make_generator(
      "|t-1|", [](double t) { return std::abs(t - 1.0); }, 1.0, 1.0, false);
}

}  // namespace

const ConvexGenerator& kl_generator() {
  static const ConvexGenerator gen = make_kl_generator();
  return gen;
}

const ConvexGenerator& dual_kl_generator() {
  static const ConvexGenerator gen = make_dual_kl_generator();
  return gen;
}

const ConvexGenerator& chi_square_generator() {
  static const ConvexGenerator gen = make_chi_square_generator();
  return gen;
}

const ConvexGenerator& hellinger_generator() {
  static const ConvexGenerator gen = make_hellinger_generator();
  return gen;
}

const ConvexGenerator& total_variation_generator() {
  static const ConvexGenerator gen = make_total_variation_generator();
  return gen;
}

}  // namespace divbound
