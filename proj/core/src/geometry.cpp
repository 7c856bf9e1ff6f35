#include "porolub/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace porolub {

namespace {

[[noreturn]] void fail(const char* what, double got) {
  std::ostringstream msg;
  msg << "invalid geometry: " << what << " (got " << got << ")";
  throw std::invalid_argument(msg.str());
}

}  // namespace

void validate(const BearingGeometry& g) {
  if (!(g.R1 > 0.0)) fail("R1 must be positive", g.R1);
  if (!(g.R2 > g.R1)) fail("R2 must exceed R1", g.R2);
  if (!(g.L > 0.0)) fail("L must be positive", g.L);
  if (!(g.c > 0.0)) fail("c must be positive", g.c);
  if (!(g.eps >= 0.0 && g.eps < 1.0)) fail("eps must satisfy 0 <= eps < 1", g.eps);
  if (!(g.mu > 0.0)) fail("mu must be positive", g.mu);
  if (!(g.U >= 0.0)) fail("U must be non-negative", g.U);
  if (!(g.Phi > 0.0)) fail("Phi must be positive", g.Phi);
}

void validate(const LongBearingConfig& cfg) {
  if (!(cfg.a > 0.0)) fail("a must be positive", cfg.a);
  if (!(cfg.eps >= 0.0 && cfg.eps < 1.0)) fail("eps must satisfy 0 <= eps < 1", cfg.eps);
  if (!(cfg.k1 > 0.0)) fail("k1 multiplier must be positive", cfg.k1);
  if (!(cfg.k3 >= 0.0)) fail("k3 multiplier must be non-negative", cfg.k3);
}

ReynoldsCoefficients reynolds_coefficients(const BearingGeometry& g) {
  validate(g);
  ReynoldsCoefficients k;
  k.k1 = g.c * g.c / (12.0 * g.Phi * g.R2 * g.R2);
  k.k2 = g.c * g.c / (12.0 * g.L * g.L * g.Phi);
  k.k3 = 6.0 * g.U * g.mu / (12.0 * g.Phi * g.R2);
  return k;
}

double film_height_journal(double theta, const BearingGeometry& g) {
  return g.c * (1.0 + g.eps * std::cos(theta));
}

double film_slope_journal(double theta, const BearingGeometry& g) {
  return -g.c * g.eps * std::sin(theta);
}

double film_height_long(double x, const LongBearingConfig& cfg) {
  return 1.0 + cfg.eps * std::cos(2.0 * x);
}

double film_slope_long(double x, const LongBearingConfig& cfg) {
  return -2.0 * cfg.eps * std::sin(2.0 * x);
}

}  // namespace porolub
