#ifndef POROLUB_GEOMETRY_HPP
#define POROLUB_GEOMETRY_HPP

namespace porolub {

/** Physical description of a porous journal bearing.
 *
 * The porous matrix is the annulus R1 < rho < R2 of length L; the lubricant
 * film of nominal clearance c sits on the outer surface rho = R2. All fields
 * are in one consistent unit system chosen by the caller; the solvers only
 * ever consume the dimensionless combinations below.
 */
struct BearingGeometry {
  double R1;   // inner matrix radius
  double R2;   // outer radius, carries the film
  double L;    // bearing length
  double c;    // radial clearance
  double eps;  // eccentricity ratio, 0 <= eps < 1
  double mu;   // lubricant viscosity
  double U;    // shaft surface speed
  double Phi;  // permeability of the porous matrix
};

// Throws std::invalid_argument naming the violated constraint.
// eps == 0 (concentric shaft) is admitted; it makes the load vanish.
void validate(const BearingGeometry& g);

/** The three dimensionless groups of the surface Reynolds equation:
 *    k1 = c^2 / (12 Phi R2^2),  k2 = c^2 / (12 L^2 Phi),
 *    k3 = 6 U mu / (12 Phi R2)   (kept unsimplified; equals U mu / (2 Phi R2)).
 */
struct ReynoldsCoefficients {
  double k1;
  double k2;
  double k3;
};

ReynoldsCoefficients reynolds_coefficients(const BearingGeometry& g);

/** Normalized long-bearing configuration: porous rectangle (0,pi) x (0,a)
 * with film height h(x) = 1 + eps*cos(2x) on the top side. k1 and k3 are
 * optional multipliers on the film stiffness and the forcing; the default 1
 * matches the normalized equations.
 */
struct LongBearingConfig {
  double a;          // matrix thickness
  double eps;        // eccentricity ratio, 0 <= eps < 1
  double k1 = 1.0;   // multiplier on the h^3 stiffness term
  double k3 = 1.0;   // multiplier on the h' forcing
};

void validate(const LongBearingConfig& cfg);

// h(theta) = c (1 + eps cos theta); 2*pi periodic, bounded below by c(1-eps).
double film_height_journal(double theta, const BearingGeometry& g);
// dh/dtheta = -c eps sin(theta)
double film_slope_journal(double theta, const BearingGeometry& g);

// h(x) = 1 + eps cos(2x) on [0, pi]
double film_height_long(double x, const LongBearingConfig& cfg);
// dh/dx = -2 eps sin(2x)
double film_slope_long(double x, const LongBearingConfig& cfg);

}  // namespace porolub

#endif
