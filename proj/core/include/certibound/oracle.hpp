#ifndef CERTIBOUND_ORACLE_HPP
#define CERTIBOUND_ORACLE_HPP

#include <functional>

#include "certibound/box.hpp"

namespace certibound {

// Independent floating-point references used by the self-check suite; these
// never feed certified enclosures, they only cross-examine them.
namespace oracle {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

double adaptive_simpson_2d(const std::function<double(double, double)>& f, double ax,
                           double bx, double ay, double by, double tol);

// second-order central tensor finite difference of order (i, j), long double
long double central_fd(const std::function<long double(long double, long double)>& f,
                       double x, double y, int i, int j, double h);

}  // namespace oracle

// |d^2_{y1} K|, |d^2_{y2} K| over a box, from the Green-function derivative
// lemma (used as the standard trapz_l1 supplier for kernel integrands)
std::pair<Interval, Interval> kernel_d2_bounds(int kernel_green_order, double prefactor,
                                               const Box2& box);

}  // namespace certibound

#endif
