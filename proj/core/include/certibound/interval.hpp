#ifndef CERTIBOUND_INTERVAL_HPP
#define CERTIBOUND_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "certibound/errors.hpp"

namespace certibound {

// Closed interval [lo, hi] with outward-rounded endpoints.  Directed rounding
// is implemented by next-float nudging after round-to-nearest operations; for
// +,-,*,/ and sqrt the residual of the rounded result is recovered exactly
// (two-sum / fma), so an endpoint is only widened when the operation was
// inexact in that direction.  No global FP state is touched.
//
// The empty set is a tagged state, never lo > hi.
class Interval {
 public:
  Interval() : lo_(0.0), hi_(0.0), empty_(false) {}
  Interval(double point) : lo_(point), hi_(point), empty_(false) {
    if (std::isnan(point)) throw DomainError("Interval from NaN");
  }
  Interval(double lo, double hi) : lo_(lo), hi_(hi), empty_(false) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
      throw DomainError("malformed interval endpoints");
  }

  static Interval empty() {
    Interval r;
    r.empty_ = true;
    r.lo_ = std::numeric_limits<double>::quiet_NaN();
    r.hi_ = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  static Interval entire() {
    return Interval(-std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity());
  }

  bool is_empty() const { return empty_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  bool is_point() const { return !empty_ && lo_ == hi_; }
  bool is_bounded() const { return !empty_ && std::isfinite(lo_) && std::isfinite(hi_); }
  double width() const { return empty_ ? 0.0 : hi_ - lo_; }
  double mid() const;
  double mag() const { return empty_ ? 0.0 : std::max(std::fabs(lo_), std::fabs(hi_)); }
  // mignitude: distance of the interval from 0
  double mig() const {
    if (empty_ || contains(0.0)) return 0.0;
    return std::min(std::fabs(lo_), std::fabs(hi_));
  }

  bool contains(double x) const { return !empty_ && lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const {
    if (o.empty_) return true;
    return !empty_ && lo_ <= o.lo_ && o.hi_ <= hi_;
  }
  bool subset_of(const Interval& o) const { return o.contains(*this); }
  bool intersects(const Interval& o) const {
    return !empty_ && !o.empty_ && lo_ <= o.hi_ && o.lo_ <= hi_;
  }
  bool same_bits(const Interval& o) const;

  std::string str() const;

 private:
  double lo_, hi_;
  bool empty_;
};

// -- directed-rounding scalar helpers ----------------------------------------

double next_down(double x);
double next_up(double x);

double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double x);
double sqrt_up(double x);

// -- set operations -----------------------------------------------------------

Interval hull(const Interval& a, const Interval& b);
Interval intersect(const Interval& a, const Interval& b);

// -- arithmetic ---------------------------------------------------------------

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }

enum class BinOp { Add, Sub, Mul, Div };

// the generic dispatcher named in the public API
Interval iv_binary(BinOp op, const Interval& a, const Interval& b);

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval cbrt(const Interval& a);
Interval abs(const Interval& a);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);
Interval recip(const Interval& a);

// t^n for integer n; domain errors follow the power rules below.
Interval pow_int(const Interval& a, long n);

// t^alpha over t in a.  For alpha < 0 or fractional alpha the base must not
// reach below 0 (fractional) or touch 0 (negative); a.lo == 0 is accepted for
// alpha >= 0.
Interval iv_power(const Interval& a, double alpha);

// -- transcendentals (round-to-nearest libm, widened two ulp) -----------------

Interval exp(const Interval& a);
Interval log(const Interval& a);
Interval atan(const Interval& a);
// atan2(y, x) restricted to y >= 0, x >= 0, (x,y) != (0,0): monotone in both.
Interval atan2_nonneg(const Interval& y, const Interval& x);
Interval sin(const Interval& a);
Interval cos(const Interval& a);

// -- constants (width <= 4 ulp) ----------------------------------------------

Interval pi_iv();
Interval half_pi_iv();
Interval quarter_pi_iv();
Interval log2_iv();
Interval sqrt2_iv();
Interval e_iv();

// clamp a to [0, +inf); used when the sign is known analytically
Interval nonneg_part(const Interval& a);

}  // namespace certibound

#endif
