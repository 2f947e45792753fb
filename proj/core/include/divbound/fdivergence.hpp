#pragma once

#include <functional>
#include <span>
#include <string>

#include "divbound/measure.hpp"

namespace divbound {

/// A convex generator f on (0, inf) with f(1) = 0, together with the endpoint
/// limits the zero-atom conventions need and the companion g(t) = -t f(t).
/// Limits may be infinite; NaN marks an unavailable limit.
struct ConvexGenerator {
  std::string name;
  std::function<double(double)> f;
  double f_at_zero;           // lim_{t->0+} f(t)
  double slope_at_infinity;   // lim_{u->inf} f(u)/u
  bool g_convex = false;

  double g(double t) const { return -t * f(t); }
};

/// Validates and returns a generator: f(1) = 0 within 1e-12 and midpoint
/// convexity on 10^3 seeded random triples (same check for g when g_convex
/// is claimed). A failing spot-check rejects the generator.
ConvexGenerator make_generator(std::string name, std::function<double(double)> f,
                               double f_at_zero, double slope_at_infinity, bool g_convex = false);

/// D_f(P||Q) = sum_a Q(a) f(P(a)/Q(a)) with the zero-atom conventions
/// 0 f(0/0) = 0, f(0) = lim f, and 0 f(b/0) = b lim f(u)/u.
double f_divergence(const ConvexGenerator& gen, const MeasurePair& pair);

/// Jensen gap J_n(f, u, mu) = sum mu_i f(u_i) - f(sum mu_i u_i); >= 0 for
/// convex f. Entries of u must be strictly positive.
double jensen_functional(const ConvexGenerator& gen, std::span<const double> u,
                         const DiscreteDistribution& mu);

struct Sandwich {
  double low;
  double mid;
  double high;
};

/// Refined Jensen inequality: min(P/Q) J_n(f,u,Q) <= J_n(f,u,P) <=
/// max(P/Q) J_n(f,u,Q). Requires a strictly positive pair.
Sandwich dragomir_sandwich(const ConvexGenerator& gen, std::span<const double> u,
                           const MeasurePair& pair);

/// Specialization at u = P/Q, requiring convex g:
///   min(P/Q) D_f(P||Q) <= -D_g(P||Q) - f(1 + chi^2(P,Q)) <= max(P/Q) D_f(P||Q).
/// With f = -ln t this is the beta2 D(Q||P) <= ln(1+chi^2) - D(P||Q) <=
/// (1/beta1) D(Q||P) sandwich.
Sandwich proposition_sandwich(const ConvexGenerator& gen, const MeasurePair& pair);

// Built-in generator catalog.
const ConvexGenerator& kl_generator();          // t ln t
const ConvexGenerator& dual_kl_generator();     // -ln t
const ConvexGenerator& chi_square_generator();  // (t-1)^2
const ConvexGenerator& hellinger_generator();   // 1 - sqrt(t)
const ConvexGenerator& total_variation_generator();  // |t-1|: D_f = |P-Q| in L1

}  // namespace divbound
