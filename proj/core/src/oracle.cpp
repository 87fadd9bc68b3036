#include "certibound/oracle.hpp"

#include <cmath>

#include "certibound/kernels.hpp"

namespace certibound {

namespace oracle {

namespace {

double simpson_rule(const std::function<double(double)>& f, double a, double m, double b,
                    double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson_rule(f, a, lm, m, fa, flm, fm);
  double right = simpson_rule(f, m, rm, b, fm, frm, fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = simpson_rule(f, a, m, b, fa, fm, fb);
  return adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double adaptive_simpson_2d(const std::function<double(double, double)>& f, double ax,
                           double bx, double ay, double by, double tol) {
  auto inner = [&](double x) {
    return adaptive_simpson([&](double y) { return f(x, y); }, ay, by, tol / (bx - ax));
  };
  return adaptive_simpson(inner, ax, bx, tol);
}

long double central_fd(const std::function<long double(long double, long double)>& f,
                       double x, double y, int i, int j, double h) {
  if (i > 0) {
    auto g = [&](long double u, long double v) {
      return (f(u + static_cast<long double>(h) / 2, v) -
              f(u - static_cast<long double>(h) / 2, v)) /
             static_cast<long double>(h);
    };
    return central_fd(g, x, y, i - 1, j, h);
  }
  if (j > 0) {
    auto g = [&](long double u, long double v) {
      return (f(u, v + static_cast<long double>(h) / 2) -
              f(u, v - static_cast<long double>(h) / 2)) /
             static_cast<long double>(h);
    };
    return central_fd(g, x, y, i, j - 1, h);
  }
  return f(x, y);
}

}  // namespace oracle

std::pair<Interval, Interval> kernel_d2_bounds(int kernel_green_order, double prefactor,
                                               const Box2& box) {
  Interval r = box.radius();
  Interval b1 = Interval(prefactor) * green_log_deriv_bound(kernel_green_order + 2, 0, r);
  return {b1, b1};
}

}  // namespace certibound
