#include "certibound/interval.hpp"

#include <cfloat>
#include <cstdio>

namespace certibound {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool subnormal_or_zero(double x) {
  return x == 0.0 || std::fabs(x) < std::numeric_limits<double>::min();
}
}  // namespace

double next_down(double x) {
  if (x == -kInf) return x;
  return std::nextafter(x, -kInf);
}

double next_up(double x) {
  if (x == kInf) return x;
  return std::nextafter(x, kInf);
}

// two-sum: err = (a+b) - fl(a+b), exact for finite inputs.  The sign of err
// decides whether fl(a+b) already bounds the true sum from the wanted side.
double add_down(double a, double b) {
  double s = a + b;
  if (std::isnan(s)) return -kInf;  // inf - inf: no finite information
  if (!std::isfinite(s)) return s > 0 ? DBL_MAX : -kInf;
  double bp = s - a;
  double err = (a - (s - bp)) + (b - bp);
  return err >= 0 ? s : next_down(s);
}

double add_up(double a, double b) {
  double s = a + b;
  if (std::isnan(s)) return kInf;
  if (!std::isfinite(s)) return s > 0 ? kInf : -DBL_MAX;
  double bp = s - a;
  double err = (a - (s - bp)) + (b - bp);
  return err <= 0 ? s : next_up(s);
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

// two-product via fma; exact unless the product underflows.
double mul_down(double a, double b) {
  double p = a * b;
  if (std::isnan(p)) {  // 0 * inf: the zero factor makes the product 0
    return 0.0;
  }
  if (!std::isfinite(p)) return p > 0 ? DBL_MAX : -kInf;
  if (subnormal_or_zero(p)) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return next_down(p);
  }
  double err = std::fma(a, b, -p);
  return err >= 0 ? p : next_down(p);
}

double mul_up(double a, double b) {
  double p = a * b;
  if (std::isnan(p)) return 0.0;
  if (!std::isfinite(p)) return p > 0 ? kInf : -DBL_MAX;
  if (subnormal_or_zero(p)) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return next_up(p);
  }
  double err = std::fma(a, b, -p);
  return err <= 0 ? p : next_up(p);
}

// residual r = fl(q*b - a); for b > 0, q too large iff r > 0.
double div_down(double a, double b) {
  double q = a / b;
  if (std::isnan(q)) throw DomainError("division produced NaN");
  if (!std::isfinite(q)) return q > 0 ? DBL_MAX : -kInf;
  if (subnormal_or_zero(q)) {
    if (a == 0.0) return 0.0;
    return next_down(q);
  }
  double r = std::fma(q, b, -a);
  bool q_high = (b > 0) ? (r > 0) : (r < 0);
  return q_high ? next_down(q) : q;
}

double div_up(double a, double b) {
  double q = a / b;
  if (std::isnan(q)) throw DomainError("division produced NaN");
  if (!std::isfinite(q)) return q > 0 ? kInf : -DBL_MAX;
  if (subnormal_or_zero(q)) {
    if (a == 0.0) return 0.0;
    return next_up(q);
  }
  double r = std::fma(q, b, -a);
  bool q_low = (b > 0) ? (r < 0) : (r > 0);
  return q_low ? next_up(q) : q;
}

double sqrt_down(double x) {
  if (x < 0) throw DomainError("sqrt of negative");
  double s = std::sqrt(x);
  if (!std::isfinite(s)) return s;
  if (subnormal_or_zero(s)) return 0.0;
  double r = std::fma(s, s, -x);
  return r > 0 ? next_down(s) : s;
}

double sqrt_up(double x) {
  if (x < 0) throw DomainError("sqrt of negative");
  double s = std::sqrt(x);
  if (!std::isfinite(s)) return s;
  if (subnormal_or_zero(s)) return next_up(s);
  double r = std::fma(s, s, -x);
  return r < 0 ? next_up(s) : s;
}

double Interval::mid() const {
  if (empty_) throw DomainError("mid of empty interval");
  if (lo_ == -kInf && hi_ == kInf) return 0.0;
  if (lo_ == -kInf) return -DBL_MAX;
  if (hi_ == kInf) return DBL_MAX;
  double m = 0.5 * (lo_ + hi_);
  if (!std::isfinite(m)) m = 0.5 * lo_ + 0.5 * hi_;
  return std::clamp(m, lo_, hi_);
}

bool Interval::same_bits(const Interval& o) const {
  if (empty_ != o.empty_) return false;
  if (empty_) return true;
  return lo_ == o.lo_ && hi_ == o.hi_ &&
         std::signbit(lo_) == std::signbit(o.lo_) &&
         std::signbit(hi_) == std::signbit(o.hi_);
}

std::string Interval::str() const {
  if (empty_) return "[empty]";
  char buf[80];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", lo_, hi_);
  return buf;
}

Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  double lo = std::max(a.lo(), b.lo());
  double hi = std::min(a.hi(), b.hi());
  if (lo > hi) return Interval::empty();
  return Interval(lo, hi);
}

Interval operator+(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return Interval(add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi()));
}

Interval operator-(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return Interval(sub_down(a.lo(), b.hi()), sub_up(a.hi(), b.lo()));
}

Interval operator-(const Interval& a) {
  if (a.is_empty()) return a;
  return Interval(-a.hi(), -a.lo());
}

Interval operator*(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  double lo = std::min(std::min(mul_down(a.lo(), b.lo()), mul_down(a.lo(), b.hi())),
                       std::min(mul_down(a.hi(), b.lo()), mul_down(a.hi(), b.hi())));
  double hi = std::max(std::max(mul_up(a.lo(), b.lo()), mul_up(a.lo(), b.hi())),
                       std::max(mul_up(a.hi(), b.lo()), mul_up(a.hi(), b.hi())));
  return Interval(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  if (b.contains(0.0)) throw DivisionByZeroInterval();
  double lo = std::min(std::min(div_down(a.lo(), b.lo()), div_down(a.lo(), b.hi())),
                       std::min(div_down(a.hi(), b.lo()), div_down(a.hi(), b.hi())));
  double hi = std::max(std::max(div_up(a.lo(), b.lo()), div_up(a.lo(), b.hi())),
                       std::max(div_up(a.hi(), b.lo()), div_up(a.hi(), b.hi())));
  return Interval(lo, hi);
}

Interval iv_binary(BinOp op, const Interval& a, const Interval& b) {
  switch (op) {
    case BinOp::Add: return a + b;
    case BinOp::Sub: return a - b;
    case BinOp::Mul: return a * b;
    case BinOp::Div: return a / b;
  }
  throw Error("unreachable");
}

Interval sqr(const Interval& a) {
  if (a.is_empty()) return a;
  if (a.lo() >= 0) return Interval(mul_down(a.lo(), a.lo()), mul_up(a.hi(), a.hi()));
  if (a.hi() <= 0) return Interval(mul_down(a.hi(), a.hi()), mul_up(a.lo(), a.lo()));
  return Interval(0.0, std::max(mul_up(a.lo(), a.lo()), mul_up(a.hi(), a.hi())));
}

Interval sqrt(const Interval& a) {
  if (a.is_empty()) return a;
  if (a.lo() < 0) throw DomainError("sqrt of interval reaching below 0");
  return Interval(sqrt_down(a.lo()), sqrt_up(a.hi()));
}

Interval cbrt(const Interval& a) {
  if (a.is_empty()) return a;
  double lo = std::cbrt(a.lo());
  double hi = std::cbrt(a.hi());
  return Interval(next_down(next_down(lo)), next_up(next_up(hi)));
}

Interval abs(const Interval& a) {
  if (a.is_empty()) return a;
  if (a.lo() >= 0) return a;
  if (a.hi() <= 0) return -a;
  return Interval(0.0, std::max(-a.lo(), a.hi()));
}

Interval min(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return Interval(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Interval max(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return Interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval recip(const Interval& a) { return Interval(1.0) / a; }

namespace {
// |x|^n with per-factor directed rounding, x >= 0
double prod_down(double m, long n) {
  double r = 1.0;
  for (long i = 0; i < n; ++i) r = mul_down(r, m);
  return r;
}
double prod_up(double m, long n) {
  double r = 1.0;
  for (long i = 0; i < n; ++i) r = mul_up(r, m);
  return r;
}
}  // namespace

Interval pow_int(const Interval& a, long n) {
  if (a.is_empty()) return a;
  if (n == 0) return Interval(1.0);
  if (n < 0) {
    if (a.contains(0.0)) throw DomainError("negative power of interval containing 0");
    return recip(pow_int(a, -n));
  }
  bool odd = (n % 2 != 0);
  if (a.lo() >= 0) return Interval(prod_down(a.lo(), n), prod_up(a.hi(), n));
  if (a.hi() <= 0) {
    if (odd) return Interval(-prod_up(-a.lo(), n), -prod_down(-a.hi(), n));
    return Interval(prod_down(-a.hi(), n), prod_up(-a.lo(), n));
  }
  if (odd) return Interval(-prod_up(-a.lo(), n), prod_up(a.hi(), n));
  return Interval(0.0, std::max(prod_up(-a.lo(), n), prod_up(a.hi(), n)));
}

namespace {

// widened libm call for a monotone function
double fn_down(double (*f)(double), double x) {
  double v = f(x);
  if (!std::isfinite(v)) return v == kInf ? DBL_MAX : v;
  return next_down(next_down(v));
}
double fn_up(double (*f)(double), double x) {
  double v = f(x);
  if (!std::isfinite(v)) return v == -kInf ? -DBL_MAX : v;
  return next_up(next_up(v));
}

double pow_down(double x, double e) {
  double v = std::pow(x, e);
  if (!std::isfinite(v)) return v == kInf ? DBL_MAX : v;
  double w = next_down(next_down(v));
  return (v > 0 && w < 0) ? 0.0 : w;  // x^e >= 0 for x >= 0
}
double pow_up(double x, double e) {
  double v = std::pow(x, e);
  if (!std::isfinite(v)) return v;
  return next_up(next_up(v));
}

}  // namespace

Interval iv_power(const Interval& a, double alpha) {
  if (a.is_empty()) return a;
  double ip;
  bool integral = std::modf(alpha, &ip) == 0.0 && std::fabs(alpha) < 1e15;
  if (integral) return pow_int(a, static_cast<long>(ip));
  if (alpha == 0.5) return sqrt(a);
  if (a.lo() < 0)
    throw DomainError("fractional power of interval reaching below 0");
  if (alpha < 0 && a.lo() == 0.0)
    throw DomainError("negative power of interval touching 0");
  // monotone in the base: increasing for alpha > 0, decreasing for alpha < 0
  double lo, hi;
  if (alpha > 0) {
    lo = a.lo() == 0 ? 0.0 : pow_down(a.lo(), alpha);
    hi = a.hi() == kInf ? kInf : pow_up(a.hi(), alpha);
    if (a.hi() == kInf) hi = kInf;
  } else {
    lo = a.hi() == kInf ? 0.0 : pow_down(a.hi(), alpha);
    hi = pow_up(a.lo(), alpha);
  }
  if (lo < 0) lo = 0.0;
  return Interval(lo, hi);
}

Interval exp(const Interval& a) {
  if (a.is_empty()) return a;
  double lo = a.lo() == -kInf ? 0.0 : fn_down(std::exp, a.lo());
  if (lo < 0) lo = 0.0;
  double hi = a.hi() == kInf ? kInf : fn_up(std::exp, a.hi());
  if (a.hi() != kInf && hi <= 0) hi = std::numeric_limits<double>::denorm_min();
  return Interval(lo, hi);
}

Interval log(const Interval& a) {
  if (a.is_empty()) return a;
  if (a.lo() < 0) throw DomainError("log of interval reaching below 0");
  double lo = a.lo() == 0 ? -kInf : fn_down(std::log, a.lo());
  double hi = a.hi() == kInf ? kInf : fn_up(std::log, a.hi());
  return Interval(lo, hi);
}

Interval atan(const Interval& a) {
  if (a.is_empty()) return a;
  double lo = a.lo() == -kInf ? next_down(next_down(-M_PI_2)) : fn_down(std::atan, a.lo());
  double hi = a.hi() == kInf ? next_up(next_up(M_PI_2)) : fn_up(std::atan, a.hi());
  return Interval(lo, hi);
}

Interval atan2_nonneg(const Interval& y, const Interval& x) {
  if (y.is_empty() || x.is_empty()) return Interval::empty();
  if (y.lo() < 0 || x.lo() < 0)
    throw DomainError("atan2_nonneg needs nonnegative arguments");
  if (y.hi() == 0 && x.hi() == 0)
    throw DomainError("atan2_nonneg at the origin");
  // increasing in y, decreasing in x on the closed first quadrant;
  // widened one extra ulp beyond the single-argument policy
  double lo_v = std::atan2(y.lo(), x.hi());
  double hi_v = std::atan2(y.hi(), x.lo());
  double lo = std::max(0.0, next_down(next_down(next_down(lo_v))));
  double hi = std::min(next_up(next_up(M_PI_2)), next_up(next_up(next_up(hi_v))));
  return Interval(lo, hi);
}

namespace {

// Range over [lo, hi] for sin (phase = pi/2: critical points at pi/2 + k pi)
// or cos (phase = 0: critical points at k pi).  When a critical point might
// lie inside (up to a conservative slack) the corresponding extremum +-1 is
// included, so placement error of k*pi never loses an extremum.
Interval trig_range(double (*f)(double), double phase, double lo, double hi) {
  if (hi - lo >= 2 * M_PI || std::max(std::fabs(lo), std::fabs(hi)) > 1e6)
    return Interval(-1.0, 1.0);
  double vlo = f(lo), vhi = f(hi);
  double mn = std::min(vlo, vhi), mx = std::max(vlo, vhi);
  double k0 = std::floor((lo - phase) / M_PI) - 1;
  for (double k = k0; k <= k0 + 4; k += 1.0) {
    double c = k * M_PI + phase;
    double slack = 8e-16 * (1.0 + std::fabs(c));
    if (c >= lo - slack && c <= hi + slack) {
      bool is_max = (static_cast<long long>(k) % 2 == 0);
      if (phase == 0.0) is_max = (static_cast<long long>(k) % 2 == 0);
      if (is_max)
        mx = 1.0;
      else
        mn = -1.0;
    }
  }
  double flo = std::max(-1.0, next_down(next_down(mn)));
  double fhi = std::min(1.0, next_up(next_up(mx)));
  return Interval(flo, fhi);
}

}  // namespace

Interval sin(const Interval& a) {
  if (a.is_empty()) return a;
  if (!a.is_bounded()) return Interval(-1.0, 1.0);
  return trig_range(std::sin, M_PI_2, a.lo(), a.hi());
}

Interval cos(const Interval& a) {
  if (a.is_empty()) return a;
  if (!a.is_bounded()) return Interval(-1.0, 1.0);
  return trig_range(std::cos, 0.0, a.lo(), a.hi());
}

namespace {
Interval widened_const(double v) { return Interval(next_down(v), next_up(v)); }
}  // namespace

Interval pi_iv() { return widened_const(M_PI); }
Interval half_pi_iv() { return widened_const(M_PI_2); }
Interval quarter_pi_iv() { return widened_const(M_PI_4); }
Interval log2_iv() { return widened_const(M_LN2); }
Interval sqrt2_iv() { return widened_const(M_SQRT2); }
Interval e_iv() { return widened_const(M_E); }

Interval nonneg_part(const Interval& a) {
  if (a.is_empty()) return a;
  if (a.hi() < 0) return Interval::empty();
  return Interval(std::max(0.0, a.lo()), a.hi());
}

}  // namespace certibound

#include "certibound/deriv_table.hpp"

namespace certibound {

Interval leibniz_bound(const DerivTable& f, const DerivTable& g, int i, int j) {
  Interval s(0.0);
  for (int k = 0; k <= i; ++k) {
    for (int l = 0; l <= j; ++l) {
      Interval c(static_cast<double>(binom(i, k) * binom(j, l)));
      s = s + c * abs(f.at(k, l)) * abs(g.at(i - k, j - l));
    }
  }
  return Interval(0.0, s.hi());
}

}  // namespace certibound
