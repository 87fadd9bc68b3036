#include "certibound/sharp_constants.hpp"

#include <cmath>

#include "certibound/taylor_jet.hpp"

namespace certibound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// clamp an enclosure of a quantity known to be nonnegative
Interval clamp0(const Interval& v) {
  if (v.is_empty() || v.hi() < 0) return Interval(0.0);
  return Interval(std::max(0.0, v.lo()), v.hi());
}

// ---- cumulative composite Simpson for a fixed smooth integrand ----------------

struct CumulativeSimpson {
  std::vector<double> nodes;
  std::vector<Interval> prefix;  // enclosure of int_0^{nodes[i]}
  Fn1D f;
  DerivFn1D d4;

  CumulativeSimpson(Fn1D f_, DerivFn1D d4_, std::vector<double> nodes_)
      : nodes(std::move(nodes_)), f(std::move(f_)), d4(std::move(d4_)) {
    prefix.resize(nodes.size());
    prefix[0] = Interval(0.0);
    for (size_t i = 1; i < nodes.size(); ++i) {
      Mesh1D one({nodes[i - 1], nodes[i]});
      QuadResult r = simpson1d(f, d4, one);
      prefix[i] = prefix[i - 1] + r.main + Interval(-r.err.hi(), r.err.hi());
    }
  }

  // enclosure of int_0^t for t within the node range
  Interval upto(double t) const {
    if (t <= nodes.front()) return Interval(0.0);
    size_t i = 1;
    while (i < nodes.size() && nodes[i] <= t) ++i;
    Interval base = prefix[i - 1];
    if (t == nodes[i - 1]) return base;
    Mesh1D partial({nodes[i - 1], t});
    QuadResult r = simpson1d(f, d4, partial);
    return base + r.main + Interval(-r.err.hi(), r.err.hi());
  }
};

std::vector<double> graded_nodes(double a, double mid, double b, size_t n_uniform,
                                 size_t n_geom) {
  std::vector<double> v;
  for (size_t i = 0; i <= n_uniform; ++i)
    v.push_back(a + (mid - a) * static_cast<double>(i) / n_uniform);
  double q = std::pow(b / mid, 1.0 / static_cast<double>(n_geom));
  double x = mid;
  for (size_t i = 1; i < n_geom; ++i) {
    x *= q;
    v.push_back(x);
  }
  v.push_back(b);
  return v;
}

// d4 supplier from a jet formula
template <typename F>
DerivFn1D jet_d4(F formula) {
  return [formula](const Interval& c) {
    Jet<4> x = Jet<4>::variable(c);
    Jet<4> r = formula(x);
    return abs(r.deriv(4));
  };
}

const double kFsCut = 64.0;

const CumulativeSimpson& fs_table() {
  static CumulativeSimpson table(
      [](const Interval& s) { return sqr(s) / (Interval(1.0) + pow_int(s, 4)); },
      jet_d4([](const Jet<4>& s) {
        return sqr(s) / (Jet<4>::constant(Interval(1.0)) + pow_int(s, 4));
      }),
      graded_nodes(0.0, 2.0, kFsCut, 512, 512));
  return table;
}

// enclosure of int_{t0}^{t1} s^2/(1+s^4) ds for kFsCut <= t0, t1 may be inf:
// integrand = s^-2 / (1 + s^-4) in [s^-2 / (1+t0^-4), s^-2]
Interval fs_tail(double t0, double t1) {
  Interval inv0 = recip(Interval(t0));
  Interval inv1 = (t1 == kInf) ? Interval(0.0) : recip(Interval(t1));
  Interval base = inv0 - inv1;
  Interval damp = recip(Interval(1.0) + iv_power(Interval(t0), -4.0));
  return hull(base * damp, base);
}

Interval fs_point(double t) {
  if (t < 0) throw DomainError("fs needs t >= 0");
  if (t <= kFsCut) return fs_table().upto(t);
  return fs_table().upto(kFsCut) + fs_tail(kFsCut, t);
}

}  // namespace

Interval fs(const Interval& t) {
  if (t.is_empty()) return t;
  if (t.lo() < 0) throw DomainError("fs needs t >= 0");
  // increasing integrand of a nonnegative function
  Interval lo = fs_point(t.lo());
  Interval hi = (t.hi() == kInf) ? fs_point(kFsCut) + fs_tail(kFsCut, kInf) : fs_point(t.hi());
  return Interval(lo.lo(), hi.hi());
}

namespace {

const double kFhEps = 1e-4;

const CumulativeSimpson& fh_table() {
  // fully geometric nodes: the fractional power concentrates the fourth
  // derivative at the left end
  static CumulativeSimpson table(
      [](const Interval& s) {
        return s * sqrt(s) / (Interval(1.0) + sqr(s));
      },
      jet_d4([](const Jet<4>& s) {
        return s * sqrt(s) / (Jet<4>::constant(Interval(1.0)) + sqr(s));
      }),
      [] {
        std::vector<double> v;
        double q = std::pow(4096.0 / kFhEps, 1.0 / 2048.0);
        double x = kFhEps;
        for (int i = 0; i < 2048; ++i) {
          v.push_back(x);
          x *= q;
        }
        v.push_back(4096.0);
        return v;
      }());
  return table;
}

Interval fh_point(double a) {
  if (a < 0) throw DomainError("fh needs a >= 0");
  if (a == 0) return Interval(0.0);
  // [0, eps]: int s^{3/2}/(1+s^2) in (2/5) e^{5/2} [1/(1+e^2), 1]
  double e = std::min(a, kFhEps);
  Interval head = Interval(0.4) * iv_power(Interval(e), 2.5) *
                  hull(recip(Interval(1.0) + sqr(Interval(e))), Interval(1.0));
  if (a <= kFhEps) return head;
  if (a > 4096.0) throw DomainError("fh implemented for a <= 4096");
  return head + fh_table().upto(a);
}

}  // namespace

Interval fh(const Interval& a) {
  if (a.is_empty()) return a;
  if (a.lo() < 0) throw DomainError("fh needs a >= 0");
  Interval lo = fh_point(a.lo());
  Interval hi = fh_point(a.hi());
  return Interval(lo.lo(), hi.hi());
}

Interval fs_scaled(double p, double a, double b) {
  if (p <= 0 || a < 0 || b < a) throw DomainError("fs_scaled needs p > 0, 0 <= a <= b");
  Interval sp = sqrt(Interval(p));
  Interval fa = fs(sqrt(Interval(a) / Interval(p)));
  Interval fb = fs(sqrt(Interval(b) / Interval(p)));
  return Interval(2.0) * sp * (fb - fa);
}

// ---- F_{K2,h} -------------------------------------------------------------------

namespace {

// F(x, y) = int_{[0,x] x [0,y]} |K2| y2^{1/2}: diagonal square + off-diagonal
Interval fk2h_corner(double x, double y) {
  if (x < 0 || y < 0) throw DomainError("fk2h needs nonnegative limits");
  if (x == 0 || y == 0) return Interval(0.0);
  double m = std::min(x, y);
  Interval diag = sqrt(Interval(m)) * (Interval(1.0) - fs(Interval(1.0)));
  Interval off(0.0);
  if (x > y) {
    // [y, x] x [0, y]: | y^{1/2} f_s(1) - x^{1/2} f_s(sqrt(y/x)) |
    off = abs(sqrt(Interval(y)) * fs(Interval(1.0)) -
              sqrt(Interval(x)) * fs(sqrt(Interval(y) / Interval(x))));
  } else if (y > x) {
    off = sqrt(Interval(x)) * abs(fs(sqrt(Interval(y) / Interval(x))) - fs(Interval(1.0)));
  }
  return nonneg_part(diag + off);
}

}  // namespace

Interval fk2h(double a, double b, double c, double d) {
  if (a < 0 || b < a || c < 0 || d < c) throw DomainError("fk2h needs 0 <= a <= b, 0 <= c <= d");
  // inclusion-exclusion of the cumulative corner integrals
  Interval v = fk2h_corner(b, d) - fk2h_corner(a, d) - fk2h_corner(b, c) + fk2h_corner(a, c);
  return clamp0(v);
}

Interval fdiag(double a, double b) {
  if (!(0 < a && a <= b)) throw DomainError("fdiag needs 0 < a <= b");
  Interval ia(a), ib(b);
  Interval v = Interval(0.5) * log(ib / ia) -
               (quarter_pi_iv() - atan2_nonneg(ia, ib));
  return nonneg_part(v);
}

// ---- C_{K2} ----------------------------------------------------------------------

namespace {

// integrand of C_{K2,up} on the upper triangle: |K2| (y2 - y1^2/y2)^{1/2}
Interval ck2_up_integrand(const Interval& y1, const Interval& y2) {
  Interval r2 = sqr(y1) + sqr(y2);
  Interval k2 = (sqr(y2) - sqr(y1)) / (Interval(2.0) * sqr(r2));
  Interval w = sqrt(nonneg_part(y2 - sqr(y1) / y2));
  return nonneg_part(k2 * w);
}

// A0 = integral over the triangle slab {1/2 <= y2 <= 1, 0 <= y1 <= y2}
Interval ck2_up_slab() {
  const int ny = 640, nx = 1280;
  Interval total(0.0);
  for (int j = 0; j < ny; ++j) {
    double c = 0.5 + 0.5 * j / ny, d = 0.5 + 0.5 * (j + 1) / ny;
    for (int i = 0; i < nx; ++i) {
      double lo = 1.0 * i / nx, hi = 1.0 * (i + 1) / nx;
      if (lo >= d) break;  // fully outside the triangle
      Interval y1(lo, std::min(hi, d)), y2(c, d);
      Interval cell_area = (Interval(y1.hi()) - Interval(y1.lo())) *
                           (Interval(d) - Interval(c));
      Interval f = ck2_up_integrand(y1, y2);
      if (hi <= c) {
        total = total + cell_area * f;  // fully inside
      } else {
        // straddles the diagonal: keep the one-sided part [0, sup]
        total = total + cell_area * Interval(0.0, f.hi());
      }
    }
  }
  return total;
}

CK2Constants compute_ck2() {
  CK2Constants r;
  r.low = Interval(0.5) * (log2_iv() - Interval(2.0) * fs(Interval(1.0)));
  // dyadic self-similarity: the integrand is (-3/2)-homogeneous, so the slab
  // integrals over 2^-k-scaled copies form a geometric series with ratio
  // 2^{-1/2}; the remaining eps-cell is bounded by eps^{1/2}/2
  const int kLevels = 60;
  Interval a0 = ck2_up_slab();
  Interval series(0.0);
  Interval ratio = recip(sqrt2_iv());
  Interval pw(1.0);
  for (int k = 0; k < kLevels; ++k) {
    series = series + pw;
    pw = pw * ratio;
  }
  Interval eps_cell(0.0, (Interval(0.5) * iv_power(pow_int(Interval(0.5), kLevels),
                                                   0.5)).hi());
  r.up = nonneg_part(a0 * series + eps_cell);
  r.total = r.up + r.low;
  return r;
}

}  // namespace

const CK2Constants& ck2_constants() {
  static CK2Constants c = compute_ck2();
  return c;
}

// ---- sign thresholds --------------------------------------------------------------

SignThresholds sign_thresholds(const Interval& v) {
  if (v.is_empty() || v.lo() < 0) throw DomainError("thresholds take nonnegative arguments");
  SignThresholds out;
  Interval v2 = sqr(v);
  Interval root = sqrt(v2 + Interval(1.0));
  // h_c^- = sqrt(y2^2 + 1 - 2 y2 sqrt(y2^2+1)): real iff y2^2 <= 1/3
  Interval rad_minus = v2 + Interval(1.0) - Interval(2.0) * v * root;
  if (rad_minus.hi() < 0) {
    out.h_c_minus = Interval::empty();
  } else {
    out.h_c_minus = sqrt(nonneg_part(rad_minus));
  }
  out.h_c_plus = sqrt(v2 + Interval(1.0) + Interval(2.0) * v * root);
  // s_c via the cancellation-free form (y1-1)^2 (y1+1)^2 / (y1^2 + 1 + 2 sqrt(y1^4 - y1^2 + 1))
  Interval quart = pow_int(v, 4) - v2 + Interval(1.0);
  Interval s_c2 = sqr(v - Interval(1.0)) * sqr(v + Interval(1.0)) /
                  (v2 + Interval(1.0) + Interval(2.0) * sqrt(nonneg_part(quart)));
  out.s_c = sqrt(nonneg_part(s_c2));
  // f_ux = sqrt((1/2 - 2 s2^2 + sqrt(16 s2^4 + 4 s2^2 + 1)) / 6)
  Interval disc = sqrt(Interval(16.0) * pow_int(v, 4) + Interval(4.0) * v2 + Interval(1.0));
  out.f_ux = sqrt(nonneg_part((Interval(0.5) - Interval(2.0) * v2 + disc) / Interval(6.0)));
  return out;
}

// ---- transport maps ----------------------------------------------------------------

namespace {

// depressed-cubic positive root of Z^3 + p Z + q with the known-real-root
// discriminant (radicand clamped at 0, which the monotonicity lemmas justify)
Interval cardano_root(const Interval& p, const Interval& q) {
  Interval rad = nonneg_part(sqr(q) + Interval(4.0) / Interval(27.0) * pow_int(p, 3));
  if (rad.is_empty()) rad = Interval(0.0);
  Interval r1 = cbrt((-q + sqrt(rad)) / Interval(2.0));
  if (r1.contains(0.0)) throw DomainError("degenerate Cardano branch");
  return r1 - p / (Interval(3.0) * r1);
}

struct CubicCoeffs {
  // g(T) = T^3 + c2 T^2 + c1 T - c0
  Interval c2, c1, c0;
};

CubicCoeffs ux_cubic(const Interval& s1, const Interval& s2) {
  CubicCoeffs c;
  c.c2 = s1;
  c.c1 = sqr(s1) - Interval(0.5) + Interval(2.0) * sqr(s2);
  c.c0 = sqr(Interval(4.0) * sqr(s2) + Interval(1.0)) / (Interval(16.0) * s1);
  return c;
}

CubicCoeffs vx_cubic(const Interval& y1, const Interval& y2) {
  CubicCoeffs c;
  c.c2 = y2;
  c.c1 = sqr(y2) + Interval(2.0) + Interval(2.0) * sqr(y1);
  c.c0 = sqr(sqr(y1) - Interval(1.0)) / y2;
  return c;
}

Interval cubic_eval(const CubicCoeffs& c, const Interval& t) {
  return pow_int(t, 3) + c.c2 * sqr(t) + c.c1 * t - c.c0;
}

Interval cubic_deriv(const CubicCoeffs& c, const Interval& t) {
  return Interval(3.0) * sqr(t) + Interval(2.0) * c.c2 * t + c.c1;
}

// positive root via the depressed form, a large-argument alternative, and
// interval-Newton contraction
Interval cubic_positive_root(const CubicCoeffs& c, bool use_hat) {
  // Z = T + c2/3: Z^3 + p Z + q
  Interval third = Interval(1.0) / Interval(3.0);
  Interval p = c.c1 - sqr(c.c2) * third;
  Interval q = Interval(2.0) / Interval(27.0) * pow_int(c.c2, 3) - c.c2 * c.c1 * third - c.c0;
  Interval z = cardano_root(p, q);
  Interval t = z - c.c2 * third;
  t = intersect(t, Interval(0.0, kInf));
  if (t.is_empty()) throw DomainError("transport root lost positivity");

  if (use_hat && c.c1.lo() > 0) {
    // T <= That = c0/c1; T >= That - (That^3 + That^2 c2)/c1
    Interval hat = c.c0 / c.c1;
    Interval low = hat - (pow_int(hat, 3) + sqr(hat) * c.c2) / c.c1;
    Interval alt = Interval(std::max(low.lo(), 0.0), hat.hi());
    Interval meet = intersect(t, alt);
    if (!meet.is_empty()) t = meet;
  }

  // interval Newton, contracting while the derivative stays positive
  for (int it = 0; it < 6; ++it) {
    Interval d = cubic_deriv(c, t);
    if (d.lo() <= 0) break;
    Interval m(t.mid());
    Interval step = m - cubic_eval(c, m) / d;
    Interval nt = intersect(t, step);
    if (nt.is_empty() || nt.same_bits(t)) break;
    t = nt;
  }
  return t;
}

}  // namespace

TransportSolution transport_map(TransportBranch branch, const Interval& s1,
                                const Interval& s2) {
  TransportSolution sol;
  sol.branch = branch;
  switch (branch) {
    case TransportBranch::UxMap: {
      if (s1.lo() <= 0) throw BranchDomainError("ux map needs s1 > 0");
      CubicCoeffs c = ux_cubic(s1, s2);
      sol.T = cubic_positive_root(c, s1.lo() > 1.0);
      sol.residual = cubic_eval(c, sol.T);
      return sol;
    }
    case TransportBranch::VxMap: {
      if (s1.lo() <= 0 || s2.lo() <= 0) throw BranchDomainError("vx map needs y1, y2 > 0");
      CubicCoeffs c = vx_cubic(s1, s2);
      sol.T = cubic_positive_root(c, s1.lo() > 1.0);
      sol.residual = cubic_eval(c, sol.T);
      return sol;
    }
    case TransportBranch::VxCyD1: {
      // y2 < 3^{-1/2}, y1 < h_c^-(y2); T^2 = (y1^2 + 2 y2^2 + y1^2 y2^2 +
      // 3 y2^4 - 1)/(y1^2 - y2^2 - 1), both factors negative on D1
      SignThresholds th = sign_thresholds(s2);
      if (th.h_c_minus.is_empty() || !(s1.hi() < th.h_c_minus.lo()))
        throw BranchDomainError("outside the D1 region of the x-direction map");
      Interval num = sqr(s1) + Interval(2.0) * sqr(s2) + sqr(s1) * sqr(s2) +
                     Interval(3.0) * pow_int(s2, 4) - Interval(1.0);
      Interval den = sqr(s1) - sqr(s2) - Interval(1.0);
      if (den.hi() >= 0) throw BranchDomainError("degenerate denominator in D1");
      Interval t2 = num / den;
      sol.T = sqrt(nonneg_part(t2));
      sol.residual = sqr(sol.T) * den - num;
      return sol;
    }
    case TransportBranch::VxCyD2: {
      SignThresholds th = sign_thresholds(s2);
      if (!(s1.lo() > th.h_c_plus.hi()))
        throw BranchDomainError("outside the D2 region of the x-direction map");
      Interval num = sqr(s1) + Interval(2.0) * sqr(s2) + sqr(s1) * sqr(s2) +
                     Interval(3.0) * pow_int(s2, 4) - Interval(1.0);
      Interval den = sqr(s1) - sqr(s2) - Interval(1.0);
      if (den.lo() <= 0) throw BranchDomainError("degenerate denominator in D2");
      Interval t2 = num / den;
      sol.T = sqrt(nonneg_part(t2));
      sol.residual = sqr(sol.T) * den - num;
      return sol;
    }
  }
  throw Error("unreachable");
}

TransportSolution transport_map_box(TransportBranch branch, const Box2& s) {
  switch (branch) {
    case TransportBranch::UxMap: {
      // T decreasing in s1, increasing in s2
      TransportSolution lo = transport_map(branch, Interval(s.x.hi()), Interval(s.y.lo()));
      TransportSolution hi = transport_map(branch, Interval(s.x.lo()), Interval(s.y.hi()));
      TransportSolution sol;
      sol.branch = branch;
      sol.T = Interval(std::max(0.0, lo.T.lo()), hi.T.hi());
      sol.residual = hull(lo.residual, hi.residual);
      return sol;
    }
    case TransportBranch::VxMap: {
      // decreasing in y2; decreasing in y1 for y1 <= 1, increasing after
      if (s.x.lo() < 1.0 && s.x.hi() > 1.0) {
        Box2 left(Interval(s.x.lo(), 1.0), s.y), right(Interval(1.0, s.x.hi()), s.y);
        TransportSolution a = transport_map_box(branch, left);
        TransportSolution b = transport_map_box(branch, right);
        a.T = hull(a.T, b.T);
        a.residual = hull(a.residual, b.residual);
        return a;
      }
      bool incr_x = s.x.lo() >= 1.0;
      double x_for_lo = incr_x ? s.x.lo() : s.x.hi();
      double x_for_hi = incr_x ? s.x.hi() : s.x.lo();
      TransportSolution lo = transport_map(branch, Interval(x_for_lo), Interval(s.y.hi()));
      TransportSolution hi = transport_map(branch, Interval(x_for_hi), Interval(s.y.lo()));
      TransportSolution sol;
      sol.branch = branch;
      sol.T = Interval(std::max(0.0, lo.T.lo()), hi.T.hi());
      sol.residual = hull(lo.residual, hi.residual);
      return sol;
    }
    default: {
      // the explicit square-root branches evaluate directly on the box
      return transport_map(branch, s.x, s.y);
    }
  }
}

TransportGradient transport_gradient(TransportBranch branch, const Box2& s) {
  TransportSolution sol = transport_map_box(branch, s);
  Interval t = sol.T;
  TransportGradient g;
  switch (branch) {
    case TransportBranch::UxMap: {
      CubicCoeffs c = ux_cubic(s.x, s.y);
      Interval denom = cubic_deriv(c, t);
      if (denom.lo() <= 0) throw DomainError("implicit derivative needs g'(T) > 0");
      // dT/ds1 = -(T^2 + 2 s1 T + (4 s2^2+1)^2/(16 s1^2)) / g'(T)
      Interval num1 = sqr(t) + Interval(2.0) * s.x * t +
                      sqr(Interval(4.0) * sqr(s.y) + Interval(1.0)) /
                          (Interval(16.0) * sqr(s.x));
      g.dT_ds1 = -num1 / denom;
      // dT/ds2 = -s2 (4T - (4 s2^2 + 1)/s1) / g'(T)
      Interval num2 = s.y * (Interval(4.0) * t -
                             (Interval(4.0) * sqr(s.y) + Interval(1.0)) / s.x);
      g.dT_ds2 = -num2 / denom;
      return g;
    }
    case TransportBranch::VxMap: {
      CubicCoeffs c = vx_cubic(s.x, s.y);
      Interval denom = cubic_deriv(c, t);
      if (denom.lo() <= 0) throw DomainError("implicit derivative needs g'(T) > 0");
      // dT/dy2 = -(T^2 + 2 T y2 + (y1^2-1)^2/y2^2) / g'(T)
      Interval num2 = sqr(t) + Interval(2.0) * t * s.y +
                      sqr(sqr(s.x) - Interval(1.0)) / sqr(s.y);
      g.dT_ds2 = -num2 / denom;
      // dT/dy1 = -(4 T y1 - 4 y1 (y1^2 - 1)/y2) / g'(T)
      Interval num1 = Interval(4.0) * s.x * t -
                      Interval(4.0) * s.x * (sqr(s.x) - Interval(1.0)) / s.y;
      g.dT_ds1 = -num1 / denom;
      return g;
    }
    default:
      throw BranchDomainError("gradients are provided for the cubic branches");
  }
}

Interval transport_deviation_bound(TransportBranch branch, const Box2& s,
                                   const Interval& t_s1_bound) {
  if (branch != TransportBranch::UxMap)
    throw BranchDomainError("deviation bound is stated for the ux branch");
  if (s.x.lo() < 0.5) throw BranchDomainError("deviation bound needs s1 >= 1/2 >= f(s2)... ");
  // |T - s1| <= |s1 - 1/2| (max |T_{s1}| + 1), and trivially <= s1
  Interval route1 = (Interval(s.x.hi()) - Interval(0.5)) * (abs(t_s1_bound) + Interval(1.0));
  Interval route2(s.x.hi());
  return Interval(0.0, min(route1, route2).hi());
}

// ---- strip estimates ----------------------------------------------------------------

Interval strip_estimate(double a, double b, const StripNorms& norms, StripForm form) {
  if (!(a > 0 && b > 0)) throw DomainError("strip estimate needs positive a, b");
  double inner = (form == StripForm::YDirection) ? a : b;
  double outer = (form == StripForm::YDirection) ? b : a;
  if (inner > outer) throw DomainError("strip ordering violated");
  Interval ia(inner), ib(outer);
  Interval linf_coef = Interval(0.5) * atan2_nonneg(ia, ib);
  Interval hol_coef =
      sqrt(ia) * (fs(sqrt(ib / ia)) - fs(Interval(1.0)) + ck2_constants().up);
  Interval v = abs(norms.f_inf) * linf_coef + hol_coef * abs(norms.f_holder);
  return Interval(0.0, v.hi());
}

Interval ik2_inf(double a, double b) {
  if (!(0 < a && a < b)) throw DomainError("ik2_inf needs 0 < a < b");
  static Interval i_inf = [] {
    // int_1^inf (s^2-1)/(s^2+1)^2 (s - 1/s)^{1/2} ds, graded near the kink at 1
    const double r_cut = 4096.0;
    std::vector<double> nodes;
    nodes.push_back(1.0);
    double t = 1e-8;
    while (t < r_cut - 1.0) {
      nodes.push_back(1.0 + t);
      t *= 1.002;
    }
    nodes.push_back(r_cut);
    Interval body = riemann1d(
        [](const Interval& s) {
          Interval s2 = sqr(s);
          Interval f = (s2 - Interval(1.0)) / sqr(s2 + Interval(1.0));
          return f * sqrt(nonneg_part(s - recip(s)));
        },
        Mesh1D(std::move(nodes)));
    // tail: integrand = s^{-3/2} (1 - s^{-2})^{3/2} / (1 + s^{-2})^2
    Interval base = Interval(2.0) * iv_power(Interval(r_cut), -0.5);
    Interval damp = iv_power(Interval(1.0) - iv_power(Interval(r_cut), -2.0), 1.5) /
                    sqr(Interval(1.0) + iv_power(Interval(r_cut), -2.0));
    Interval tail = hull(base * damp, base);
    return body + tail;
  }();
  return nonneg_part((sqrt(Interval(b)) - sqrt(Interval(a))) * i_inf);
}

// ---- residue identity ----------------------------------------------------------------

Interval residue_identity(const Interval& a_param) {
  if (a_param.is_empty() || a_param.lo() < 0)
    throw DomainError("residue identity takes A >= 0");
  Interval root = sqrt(Interval(1.0) + sqr(a_param));
  return pi_iv() / sqrt(root + a_param);
}

Interval residue_quadrature(double a_param, double r_cut) {
  if (a_param <= 0) throw DomainError("quadrature route needs A > 0");
  const Interval ia(a_param);
  // Delta(y) = g_A(y-1) - g_A(y+1) >= 0 on y >= 0, with exact mass
  // atan((y-1)/A) - atan((y+1)/A) per cell; the sqrt factor is bounded by its
  // range on the cell (mean value theorem for nonnegative densities).
  auto mass_primitive = [&](double y) {
    return atan((Interval(y) - Interval(1.0)) / ia) -
           atan((Interval(y) + Interval(1.0)) / ia);
  };
  // nodes refined toward y = 1 at the scale of A
  std::vector<double> nodes;
  nodes.push_back(0.0);
  double t0 = std::min(a_param / 64.0, 0.25);
  std::vector<double> below;
  for (double t = t0; t < 1.0; t *= 1.07) below.push_back(1.0 - t);
  for (auto it = below.rbegin(); it != below.rend(); ++it)
    if (*it > 0.0) nodes.push_back(*it);
  nodes.push_back(1.0);
  for (double t = t0; t < r_cut - 1.0; t *= 1.07) nodes.push_back(1.0 + t);
  nodes.push_back(r_cut);

  Interval total(0.0);
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    double c = nodes[i], d = nodes[i + 1];
    Interval mass = nonneg_part(mass_primitive(d) - mass_primitive(c));
    if (mass.is_empty()) mass = Interval(0.0);
    Interval root = sqrt(Interval(c, d));
    total = total + root * mass;
  }
  // tail: Delta = 4 A y / (((y-1)^2 + A^2)((y+1)^2 + A^2)) <=
  // 4 A (R/(R-1))^4 y^{-3}, so int_R^inf Delta sqrt(y) <= (8/3) A (R/(R-1))^4 R^{-3/2}
  Interval rr(r_cut);
  Interval factor = pow_int(rr / (rr - Interval(1.0)), 4);
  Interval tail_hi = Interval(8.0) / Interval(3.0) * ia * factor * iv_power(rr, -1.5);
  total = total + Interval(0.0, tail_hi.hi());
  return total;
}

// ---- J integrals ------------------------------------------------------------------------

Interval primitive_xy_v_over_r2(const Interval& u, const Interval& v) {
  // (1/2)(u log(u^2+v^2) - 2u + 2 v atan(u/v)) on the closed first quadrant
  if (u.lo() < 0 || v.lo() < 0) throw DomainError("primitive restricted to the first quadrant");
  auto xlog = [](const Interval& x, const Interval& y) -> Interval {
    if (x.hi() == 0.0) return Interval(0.0);
    Interval r2 = sqr(x) + sqr(y);
    if (r2.lo() > 0) return x * log(r2);
    Interval ci(x.hi());
    Interval xlx = ci * abs(log(ci));
    if (x.hi() > 0.36) xlx = max(xlx, Interval(0.3679));
    Interval m = max(Interval(2.0) * xlx, ci * abs(log(sqr(ci) + sqr(y))));
    return Interval(-m.hi(), m.hi());
  };
  auto yatan = [](const Interval& x, const Interval& y) -> Interval {
    if (y.hi() == 0.0 || x.hi() == 0.0) return Interval(0.0);
    return y * atan2_nonneg(x, y);
  };
  return Interval(0.5) * xlog(u, v) - u + yatan(u, v);
}

Interval primitive_xy_v_over_r4(const Interval& u, const Interval& v) {
  // (1/2) atan(v/u) / v with the v -> 0 limit 1/(2u); needs (u,v) != 0
  if (u.lo() < 0 || v.lo() < 0) throw DomainError("primitive restricted to the first quadrant");
  if (v.lo() > 0) return Interval(0.5) * atan2_nonneg(v, u) / v;
  if (u.lo() <= 0) throw SingularDomain("primitive of v/r^4 at the origin");
  // v touching 0: atan(v/u)/v is decreasing in v with limit 1/u; on [0, vh]
  Interval vh(v.hi());
  Interval at_hi = (v.hi() == 0.0) ? recip(u) : atan2_nonneg(vh, u) / vh;
  Interval rng = hull(at_hi, recip(u));
  return Interval(0.5) * rng;
}

namespace {

Interval box_diff_r2(double l1, double u1, double l2, double u2) {
  auto p = [](double a, double b) {
    return primitive_xy_v_over_r2(Interval(a), Interval(b));
  };
  return p(u1, u2) - p(l1, u2) - p(u1, l2) + p(l1, l2);
}

// int over [0,L]^2 of s2/((s1+shift)^2 + s2^2)
Interval shifted_mass(double shift, double l) {
  return box_diff_r2(shift, shift + l, 0.0, l);
}

Interval j2_point(double b) {
  if (b <= 0) throw DomainError("J2 needs B > 0");
  double l = 1.0 / b;
  Interval first = box_diff_r2(0.0, l, 0.0, l);
  Interval second = shifted_mass(2.0, l);
  return Interval(0.5) * (first - second);
}

Interval j1_point(double b) {
  if (b <= 0) throw DomainError("J1 needs B > 0");
  Interval ib(b);
  Interval b2 = sqr(ib);
  // (1/2) log(4 (1+B^2)/(1+4B^2)) + (2 atan B - atan 2B) / (2B)
  Interval x = Interval(0.5) *
               log(Interval(4.0) * (Interval(1.0) + b2) / (Interval(1.0) + Interval(4.0) * b2));
  Interval y = (Interval(2.0) * atan(ib) - atan(Interval(2.0) * ib)) / (Interval(2.0) * ib);
  return x + y;
}

}  // namespace

JPair u_over_x1_j(const Interval& b) {
  if (b.is_empty() || b.lo() <= 0) throw DomainError("J integrals need B > 0");
  // both decreasing in B
  JPair r;
  r.j1 = hull(j1_point(b.hi()), j1_point(b.lo()));
  r.j2 = hull(j2_point(b.hi()), j2_point(b.lo()));
  return r;
}

Interval j21(const Interval& b) {
  if (b.is_empty() || b.lo() <= 0) throw DomainError("J21 needs B > 0");
  return u_over_x1_j(b).j2 + log(b);
}

Interval j2_weighted_smallx(double z_u, double h, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("alpha in (0,1) expected");
  double cap = h * std::min(std::exp(-1.0 / (1.0 - alpha)), 0.5);
  if (!(z_u > 0 && z_u <= cap))
    throw DomainError("monotone small-x bound needs z_u <= h min(e^{-1/(1-a)}, 1/2)");
  Interval j2 = u_over_x1_j(Interval(z_u) / Interval(h)).j2;
  return j2 * iv_power(Interval(z_u), 1.0 - alpha);
}

// ---- K_du -------------------------------------------------------------------------------

namespace {

Interval kdu_mass_v_over_r2(const Box2& q) {
  return box_diff_r2(q.x.lo(), q.x.hi(), q.y.lo(), q.y.hi());
}

Interval kdu_mass_shifted(const Box2& q, double shift) {
  auto p = [&](double a, double b) {
    return primitive_xy_v_over_r2(Interval(a + shift), Interval(b));
  };
  return p(q.x.hi(), q.y.hi()) - p(q.x.lo(), q.y.hi()) - p(q.x.hi(), q.y.lo()) +
         p(q.x.lo(), q.y.lo());
}

Interval kdu_mass_v_over_r4(const Box2& q) {
  auto p = [](double a, double b) {
    return primitive_xy_v_over_r4(Interval(a), Interval(b));
  };
  return p(q.x.hi(), q.y.hi()) - p(q.x.lo(), q.y.hi()) - p(q.x.hi(), q.y.lo()) +
         p(q.x.lo(), q.y.lo());
}

}  // namespace

Interval bound_kdu_integral(const Interval& x1, const Box2& q, KduEstimate which) {
  if (x1.is_empty() || x1.lo() < 0) throw DomainError("x1 must be a nonnegative interval");
  double a = q.x.lo(), b = q.x.hi();
  // s2 of one sign; reflect to s2 >= 0 (the kernel is odd in s2)
  Box2 qq = q;
  if (q.y.hi() <= 0) qq = Box2(q.x, -q.y);
  if (qq.y.lo() < 0) throw CaseMismatch("Q must have s2 of one sign");
  if (b + x1.hi() <= 0) return Interval(0.0);  // empty support

  double xl = x1.lo(), xu = x1.hi();
  double h = xu - xl;
  Interval d1 = nonneg_part(kdu_mass_v_over_r2(qq));

  if (which == KduEstimate::I) {
    if (a + xl >= 0) {
      if (xl > 0) {
        Interval main = (d1 - kdu_mass_shifted(qq, 2.0 * xl)) / (Interval(2.0) * Interval(xl));
        double dis = a + 2.0 * xl;  // >= xl > 0 given a + xl >= 0
        Interval denom = sqr(Interval(dis)) + sqr(Interval(qq.y.lo()));
        Interval rem = (Interval(2.0) * Interval(h) / denom) * d1;
        return Interval(0.0, (clamp0(main) + rem).hi());
      }
      // x1^l = 0: K_du <= 2 K1(s) + 2 h s2/|s|^4 on the support
      if (qq.radius().lo() <= 0)
        throw CaseMismatch("the x1 = 0 fallback needs Q away from the origin");
      Interval i1 = Interval(2.0) * nonneg_part(quad_signed_kernel(KernelId::K1, qq));
      Interval i2 = Interval(2.0) * Interval(h) * nonneg_part(kdu_mass_v_over_r4(qq));
      return Interval(0.0, (i1 + i2).hi());
    }
    // a + x1^l <= 0: 0 <= s1 + x1 <= b - a + h on the support
    double dis = std::max({xl, a + 2.0 * xl, 0.0});
    Interval denom = sqr(Interval(dis)) + sqr(Interval(qq.y.lo()));
    if (denom.lo() <= 0) throw CaseMismatch("estimate I needs distance from the pole");
    Interval v = Interval(2.0) * (Interval(b) - Interval(a) + Interval(h)) / denom * d1;
    return Interval(0.0, v.hi());
  }

  // Estimate II bounds x1 K_du and divides by x1^l
  if (xl <= 0) throw CaseMismatch("estimate II divides by x1^l > 0");
  Interval inv_xl = recip(Interval(xl));
  if (a + xu >= 0) {
    Interval main = Interval(0.5) * (d1 - kdu_mass_shifted(qq, 2.0 * xu));
    Interval simple = Interval(0.5) * d1;
    return Interval(0.0, (inv_xl * min(clamp0(main), simple)).hi());
  }
  double dis = std::max({xl, a + 2.0 * xl, 0.0});
  Interval denom = sqr(Interval(dis)) + sqr(Interval(qq.y.lo()));
  if (denom.lo() <= 0) throw CaseMismatch("estimate II needs distance from the pole");
  Interval v = Interval(2.0) * (Interval(b) - Interval(a)) * Interval(xu) / denom * d1;
  return Interval(0.0, (inv_xl * v).hi());
}

// ---- constants table ---------------------------------------------------------------------

std::vector<NamedConstant> constants_table() {
  std::vector<NamedConstant> t;
  t.push_back({"fs_inf", fs(Interval(kInf, kInf)), "fs(inf) = pi/(2 sqrt 2)"});
  t.push_back({"fs_1", fs(Interval(1.0)), "int_0^1 s^2/(1+s^4) ds"});
  t.push_back({"fh_1", fh(Interval(1.0)), "int_0^1 s^{3/2}/(1+s^2) ds"});
  t.push_back({"CK2_up", ck2_constants().up, "int_0^1 int_{y1}^1 |K2| |y1^2/y2 - y2|^{1/2}"});
  t.push_back({"CK2_low", ck2_constants().low, "(log 2 - 2 fs(1))/2"});
  t.push_back({"CK2", ck2_constants().total, "CK2_up + CK2_low"});
  t.push_back({"fdiag_1_2", fdiag(1.0, 2.0), "log(2)/2 - (pi/4 - atan(1/2))"});
  t.push_back({"pv_correction_y1", pv_split_correction(ClippedAxis::Y1), "-pi/8"});
  t.push_back({"pv_correction_y2", pv_split_correction(ClippedAxis::Y2), "+pi/8"});
  t.push_back({"J1_1", u_over_x1_j(Interval(1.0)).j1, "J1(1)"});
  t.push_back({"J2_1", u_over_x1_j(Interval(1.0)).j2, "J2(1)"});
  t.push_back({"residue_A1", residue_identity(Interval(1.0)), "pi sqrt(sqrt(2) - 1)"});
  t.push_back({"ik2_inf_1_4", ik2_inf(1.0, 4.0), "strip kernel 1D reduction on [1,4]"});
  return t;
}

}  // namespace certibound
