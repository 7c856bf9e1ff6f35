#ifndef POROLUB_ROOTFIND_HPP
#define POROLUB_ROOTFIND_HPP

#include <functional>

namespace porolub {

/** Brent's method on [a, b]. Requires f(a) and f(b) of opposite sign;
 * throws std::invalid_argument otherwise. Returns the abscissa once the
 * bracket is below tol. */
double brent(const std::function<double(double)>& f, double a, double b,
             double tol, int max_iterations = 200);

}  // namespace porolub

#endif
