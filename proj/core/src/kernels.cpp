#include "certibound/kernels.hpp"

#include <cmath>
#include <vector>

namespace certibound {

namespace {

struct Monomial {
  double c;
  int i, j;
};

// kernel as (sum c y1^i y2^j) / |y|^(2m)
struct RationalKernel {
  std::vector<Monomial> num;
  int m;        // |y|^(2m)
  int par1;     // parity in y1: +1 even, -1 odd
  int par2;
};

RationalKernel kernel_form(KernelId id) {
  switch (id) {
    case KernelId::K1: return {{{1.0, 1, 1}}, 2, -1, -1};
    case KernelId::K2: return {{{0.5, 2, 0}, {-0.5, 0, 2}}, 2, 1, 1};
    case KernelId::Ku: return {{{0.5, 0, 1}}, 1, 1, -1};
    case KernelId::Kv: return {{{-0.5, 1, 0}}, 1, -1, 1};
    case KernelId::K00: return {{{24.0, 3, 1}, {-24.0, 1, 3}}, 4, -1, -1};
    case KernelId::Kux0: return {{{-4.0, 1, 1}}, 2, -1, -1};
    case KernelId::Kdu: throw UnsupportedKernel("Kdu is two-argument; use kernel_eval_kdu");
  }
  throw Error("unreachable");
}

Interval mono_eval_nonneg(double c, int i, int j, const Interval& y1, const Interval& y2) {
  // y1, y2 >= 0, c of fixed sign: the monomial is monotone in both coordinates
  return Interval(c) * pow_int(y1, i) * pow_int(y2, j);
}

// range of a rational kernel over a first-quadrant box bounded away from 0
Interval eval_first_quadrant(const RationalKernel& k, const Box2& y) {
  int i1 = 1000, j1 = 1000;
  for (const auto& t : k.num) {
    i1 = std::min(i1, t.i);
    j1 = std::min(j1, t.j);
  }
  Interval r = y.radius();
  if (r.lo() <= 0) throw SingularDomain("kernel box touches the singularity");

  // A = (y1/|y|)^i1 (y2/|y|)^j1: cos/sin factors from monotone endpoints
  auto cos_beta = [&]() {
    double lo = div_down(y.x.lo(), sqrt_up(add_up(mul_up(y.x.lo(), y.x.lo()),
                                                  mul_up(y.y.hi(), y.y.hi()))));
    double hi = div_up(y.x.hi(), sqrt_down(add_down(mul_down(y.x.hi(), y.x.hi()),
                                                    mul_down(y.y.lo(), y.y.lo()))));
    return Interval(std::max(0.0, lo), std::min(1.0, hi));
  };
  auto sin_beta = [&]() {
    double lo = div_down(y.y.lo(), sqrt_up(add_up(mul_up(y.y.lo(), y.y.lo()),
                                                  mul_up(y.x.hi(), y.x.hi()))));
    double hi = div_up(y.y.hi(), sqrt_down(add_down(mul_down(y.y.hi(), y.y.hi()),
                                                    mul_down(y.x.lo(), y.x.lo()))));
    return Interval(std::max(0.0, lo), std::min(1.0, hi));
  };
  Interval a_factor = pow_int(cos_beta(), i1) * pow_int(sin_beta(), j1);

  // P - Q with P, Q monotone increasing on the first quadrant
  Interval p_lo(0.0), p_hi(0.0), q_lo(0.0), q_hi(0.0);
  for (const auto& t : k.num) {
    Interval at_lo = mono_eval_nonneg(std::fabs(t.c), t.i - i1, t.j - j1,
                                      Interval(y.x.lo()), Interval(y.y.lo()));
    Interval at_hi = mono_eval_nonneg(std::fabs(t.c), t.i - i1, t.j - j1,
                                      Interval(y.x.hi()), Interval(y.y.hi()));
    if (t.c >= 0) {
      p_lo = p_lo + at_lo;
      p_hi = p_hi + at_hi;
    } else {
      q_lo = q_lo + at_lo;
      q_hi = q_hi + at_hi;
    }
  }
  Interval numer = Interval(sub_down(p_lo.lo(), q_hi.hi()), sub_up(p_hi.hi(), q_lo.lo()));
  Interval denom = pow_int(r, 2 * k.m - i1 - j1);
  return a_factor * (numer / denom);
}

Interval eval_recursive(const RationalKernel& k, const Box2& y);

Interval eval_split(const RationalKernel& k, const Box2& y) {
  // split a sign-straddling coordinate at 0 and take the hull
  if (y.x.contains(0.0) && y.x.lo() < 0) {
    Box2 a(Interval(y.x.lo(), 0.0), y.y), b(Interval(0.0, y.x.hi()), y.y);
    return hull(eval_recursive(k, a), eval_recursive(k, b));
  }
  if (y.y.contains(0.0) && y.y.lo() < 0) {
    Box2 a(y.x, Interval(y.y.lo(), 0.0)), b(y.x, Interval(0.0, y.y.hi()));
    return hull(eval_recursive(k, a), eval_recursive(k, b));
  }
  throw Error("unreachable");
}

Interval eval_recursive(const RationalKernel& k, const Box2& y) {
  if ((y.x.contains(0.0) && y.x.lo() < 0) || (y.y.contains(0.0) && y.y.lo() < 0))
    return eval_split(k, y);
  // reflect a nonpositive coordinate into the first quadrant
  double sign = 1.0;
  Box2 q = y;
  if (q.x.hi() <= 0) {
    q.x = -q.x;
    if (k.par1 < 0) sign = -sign;
  }
  if (q.y.hi() <= 0) {
    q.y = -q.y;
    if (k.par2 < 0) sign = -sign;
  }
  Interval v = eval_first_quadrant(k, q);
  return sign < 0 ? -v : v;
}

}  // namespace

int kernel_homogeneity(KernelId id) {
  switch (id) {
    case KernelId::K1: return 2;
    case KernelId::K2: return 2;
    case KernelId::Ku: return 1;
    case KernelId::Kv: return 1;
    case KernelId::K00: return 4;
    case KernelId::Kux0: return 2;
    case KernelId::Kdu: return 2;  // joint scaling of (x, s)
  }
  throw Error("unreachable");
}

Interval kernel_eval(KernelId id, const Box2& y) {
  if (id == KernelId::Kdu)
    throw UnsupportedKernel("Kdu needs the singular-point box; use kernel_eval_kdu");
  if (y.contains_origin()) throw SingularDomain("kernel box contains the origin");
  return eval_recursive(kernel_form(id), y);
}

Interval kernel_eval_kdu(const Box2& x, const Box2& s) {
  if (s.contains_origin()) throw SingularDomain("Kdu box contains s = 0");
  Interval s1 = s.x, s2 = s.y, x1 = x.x;
  Interval r2 = sqr(s1) + sqr(s2);
  Interval shifted = sqr(s1 + Interval(2.0) * x1) + sqr(s2);
  if (shifted.lo() <= 0) throw SingularDomain("Kdu box contains the reflected singularity");
  return Interval(2.0) * (s1 + x1) * s2 / (r2 * shifted);
}

// ---- antiderivatives ---------------------------------------------------------

namespace {

// x * log(x^2 + y^2) on the closed first quadrant, with the limit value 0 at
// x = 0 (including the origin corner)
Interval term_xlog(const Interval& x, const Interval& y) {
  if (x.hi() == 0.0) return Interval(0.0);
  Interval r2 = sqr(x) + sqr(y);
  if (r2.lo() > 0) return x * log(r2);
  // r can reach 0, so x reaches 0 too: |x log(x^2+y^2)| <= max(2 x |log x|,
  // x |log(x^2 + y_hi^2)|) on [0, c], both monotone beyond tiny x
  double c = x.hi();
  Interval ci(c);
  Interval xlx = ci * abs(log(ci));
  if (c > 0.36) xlx = max(xlx, Interval(0.3679));  // sup of t|log t| on (0,1] is 1/e
  Interval m1 = Interval(2.0) * xlx;
  Interval m2 = ci * abs(log(sqr(ci) + sqr(y)));
  double m = max(m1, m2).hi();
  return Interval(-m, m);
}

// y * atan(x/y) on the closed first quadrant, limit 0 on y = 0
Interval term_yatan(const Interval& x, const Interval& y) {
  if (y.hi() == 0.0) return Interval(0.0);
  if (x.hi() == 0.0) return Interval(0.0);  // atan(0/y) = 0
  Interval ang = atan2_nonneg(x, y);
  return y * ang;
}

void require_first_quadrant(const Box2& q) {
  if (q.x.lo() < 0 || q.y.lo() < 0)
    throw DomainError("kernel antiderivatives are evaluated on first-quadrant boxes");
}

}  // namespace

KernelAntiderivative::KernelAntiderivative(KernelId id, AntiderivMode mode)
    : id_(id), mode_(mode) {
  switch (id) {
    case KernelId::K1:
    case KernelId::K2:
    case KernelId::Ku:
    case KernelId::Kv:
      break;
    default:
      throw UnsupportedKernel("no closed-form antiderivative for this kernel");
  }
}

Interval KernelAntiderivative::value(const Interval& y1, const Interval& y2) const {
  Interval r2 = sqr(y1) + sqr(y2);
  const Interval half(0.5), quarter(0.25);
  switch (id_) {
    case KernelId::K1:
      switch (mode_) {
        case AntiderivMode::XY:
          if (r2.lo() <= 0) throw SingularDomain("log |y| at the origin");
          return Interval(-0.25) * log(r2);  // -log|y|/2
        case AntiderivMode::X: return -half * y2 / r2;
        case AntiderivMode::Y: return -half * y1 / r2;
      }
      break;
    case KernelId::K2:
      switch (mode_) {
        case AntiderivMode::XY: {
          if (y1.hi() == 0 && y1.lo() == 0 && y2.hi() == 0)
            throw SingularDomain("atan(y1/y2) at the origin");
          if (y1.lo() < 0 || y2.lo() < 0)
            throw DomainError("K2 primitive restricted to the closed first quadrant");
          return half * atan2_nonneg(y1, y2);
        }
        case AntiderivMode::X: return -half * y1 / r2;
        case AntiderivMode::Y: return half * y2 / r2;
      }
      break;
    case KernelId::Ku:
      // Ku = -d_{y2} G; primitive formulas from the G table with flipped sign
      switch (mode_) {
        case AntiderivMode::XY: {
          if (y1.lo() < 0 || y2.lo() < 0)
            throw DomainError("Ku primitive restricted to the closed first quadrant");
          // -1/4 (2 y1 - 2 y2 atan(y1/y2) - y1 log r2), sign flipped
          Interval g = quarter * (Interval(2.0) * y1 - Interval(2.0) * term_yatan(y1, y2) -
                                  term_xlog(y1, y2));
          return -g;
        }
        case AntiderivMode::X: {
          if (y1.lo() < 0 || y2.lo() < 0)
            throw DomainError("Ku primitive restricted to the closed first quadrant");
          return half * atan2_nonneg(y1, y2);
        }
        case AntiderivMode::Y: {
          if (r2.lo() <= 0) throw SingularDomain("log |y| at the origin");
          return quarter * log(r2);
        }
      }
      break;
    case KernelId::Kv:
      // Kv = d_{y1} G, so the double primitive is the feq formula itself
      switch (mode_) {
        case AntiderivMode::XY: {
          if (y1.lo() < 0 || y2.lo() < 0)
            throw DomainError("Kv primitive restricted to the closed first quadrant");
          return quarter * (Interval(2.0) * y2 - Interval(2.0) * term_yatan(y2, y1) -
                            term_xlog(y2, y1));
        }
        case AntiderivMode::X: {
          if (r2.lo() <= 0) throw SingularDomain("log |y| at the origin");
          return Interval(-0.25) * log(r2);
        }
        case AntiderivMode::Y: {
          if (y1.lo() < 0 || y2.lo() < 0)
            throw DomainError("Kv primitive restricted to the closed first quadrant");
          return -half * atan2_nonneg(y2, y1);
        }
      }
      break;
    default:
      break;
  }
  throw Error("unreachable");
}

Interval KernelAntiderivative::integrate(const Box2& q) const {
  require_first_quadrant(q);
  auto F = [this](double a, double b) { return value(Interval(a), Interval(b)); };
  switch (mode_) {
    case AntiderivMode::XY:
      return F(q.x.hi(), q.y.hi()) - F(q.x.lo(), q.y.hi()) - F(q.x.hi(), q.y.lo()) +
             F(q.x.lo(), q.y.lo());
    case AntiderivMode::X:
      // integral over y1 at interval y2
      return value(Interval(q.x.hi()), q.y) - value(Interval(q.x.lo()), q.y);
    case AntiderivMode::Y:
      return value(q.x, Interval(q.y.hi())) - value(q.x, Interval(q.y.lo()));
  }
  throw Error("unreachable");
}

KernelAntiderivative kernel_antiderivative(KernelId id, AntiderivMode mode) {
  return KernelAntiderivative(id, mode);
}

Interval pv_split_correction(ClippedAxis axis) {
  Interval c = pi_iv() / Interval(8.0);
  return axis == ClippedAxis::Y1 ? -c : c;
}

Interval green_log_deriv_bound(int i, int j, const Interval& r_box) {
  if (i + j < 1) throw DomainError("green_log_deriv_bound needs i+j >= 1");
  if (r_box.is_empty() || r_box.lo() <= 0) throw DomainError("r must stay positive");
  int n = i + j;
  Interval fact(1.0);
  for (int k = 2; k <= n - 1; ++k) fact = fact * Interval(static_cast<double>(k));
  Interval rpow = pow_int(Interval(r_box.lo()), n);
  return Interval(0.0, (fact / rpow).hi());
}

Interval green_deriv_bound(int i, int j, const Interval& r_box) {
  return Interval(0.5) * green_log_deriv_bound(i, j, r_box);
}

// ---- symmetrized bounds ------------------------------------------------------

namespace {

Interval norm_fxx(const DerivTable& t) { return max(abs(t.at(2, 0)), abs(t.at(0, 2))); }
Interval norm_fxy(const DerivTable& t) { return abs(t.at(1, 1)); }

Interval norm_d4(const DerivTable& t) {
  Interval m(0.0);
  for (int k = 0; k <= 4; ++k) m = max(m, abs(t.at(k, 4 - k)));
  return m;
}

}  // namespace

Interval symmetrized_bounds(const DerivTable& f_bounds, const Box2& x, SymKind which,
                            int axis) {
  if (x.x.lo() < 0 || x.y.lo() < 0)
    throw DomainError("Q_x is described by its nonnegative half-widths");
  Interval x1(x.x.hi()), x2(x.y.hi());  // bounds grow in x: evaluate at the top corner
  Interval xi = (axis == 1) ? x1 : x2;
  Interval xo = (axis == 1) ? x2 : x1;
  Interval r2 = sqr(x1) + sqr(x2);
  Interval v;
  switch (which) {
    case SymKind::G1: v = Interval(2.0) * r2 * norm_fxx(f_bounds); break;
    case SymKind::G2: v = Interval(4.0) * x1 * x2 * norm_fxy(f_bounds); break;
    case SymKind::G1_minus:
      v = (pow_int(x1, 4) + Interval(6.0) * sqr(x1) * sqr(x2) + pow_int(x2, 4)) /
          Interval(6.0) * norm_d4(f_bounds);
      break;
    case SymKind::G2_minus:
      v = Interval(2.0) / Interval(3.0) * x1 * x2 * r2 * norm_d4(f_bounds);
      break;
    case SymKind::D1_G1: v = Interval(4.0) * xi * norm_fxx(f_bounds); break;
    case SymKind::D1_G2: v = Interval(4.0) * xo * norm_fxy(f_bounds); break;
    case SymKind::D1_G1_minus:
      v = Interval(2.0) / Interval(3.0) * (Interval(3.0) * sqr(xo) * xi + pow_int(xi, 3)) *
          norm_d4(f_bounds);
      break;
    case SymKind::D1_G2_minus:
      v = Interval(2.0) / Interval(3.0) * (Interval(3.0) * sqr(xi) * xo + pow_int(xo, 3)) *
          norm_d4(f_bounds);
      break;
  }
  return Interval(0.0, v.hi());
}

SymBoundReport symmetrized_report(const DerivTable& f_bounds, const Box2& x) {
  SymBoundReport r;
  r.g1_bound = symmetrized_bounds(f_bounds, x, SymKind::G1);
  r.g2_bound = symmetrized_bounds(f_bounds, x, SymKind::G2);
  r.approx_residuals["F1"] = symmetrized_bounds(f_bounds, x, SymKind::G2_minus);
  r.approx_residuals["F2"] = symmetrized_bounds(f_bounds, x, SymKind::G1_minus);
  return r;
}

// ---- far-field decay ---------------------------------------------------------

Interval den_distance(const Box2& x, const Box2& y) {
  Interval d1 = nonneg_part(Interval(y.x.lo()) - Interval(x.x.hi()));
  Interval d2 = nonneg_part(Interval(y.y.lo()) - Interval(x.y.hi()));
  if (d1.is_empty()) d1 = Interval(0.0);
  if (d2.is_empty()) d2 = Interval(0.0);
  return sqr(d1) + sqr(d2);
}

namespace {

Interval m_gk(int m, const Interval& den) {
  // (m-1)! / (2 Den^{m/2})
  Interval fact(1.0);
  for (int k = 2; k <= m - 1; ++k) fact = fact * Interval(static_cast<double>(k));
  Interval root = sqrt(Interval(den.lo()));
  return fact / (Interval(2.0) * pow_int(root, m));
}

}  // namespace

Interval farfield_kernel_decay(int i, int j, int k, int l, FarApprox approx,
                               const Box2& x, const Box2& y) {
  if (x.x.lo() < 0 || x.y.lo() < 0)
    throw DomainError("x box in the first quadrant expected");
  Interval den = den_distance(x, y);
  if (den.lo() <= 0) throw DegenerateDen("Den(x, y) = 0");

  Interval x1(x.x.hi()), x2(x.y.hi());
  Interval r2 = sqr(x1) + sqr(x2);
  int i2 = i % 2, j2 = j % 2;
  int k2 = k + 2 * (i / 2), l2 = l + 2 * (j / 2);

  auto bound01 = [&](FarApprox ap) -> Interval {
    // max(i,j) <= 1 prefactors
    int d = (ap == FarApprox::F2) ? k + l + 6 : k + l + 4;
    Interval m = m_gk(d, den);
    Interval pre;
    if (ap == FarApprox::F2) {
      if (i == 0 && j == 0)
        pre = pow_int(x1, 5) * x2 / Interval(30.0) + pow_int(x1, 3) * pow_int(x2, 3) / Interval(9.0) +
              x1 * pow_int(x2, 5) / Interval(30.0);
      else if (i == 1 && j == 0)
        pre = pow_int(x1, 4) * x2 / Interval(6.0) + sqr(x1) * pow_int(x2, 3) / Interval(3.0) +
              pow_int(x2, 5) / Interval(30.0);
      else if (i == 0 && j == 1)
        pre = pow_int(x2, 4) * x1 / Interval(6.0) + sqr(x2) * pow_int(x1, 3) / Interval(3.0) +
              pow_int(x1, 5) / Interval(30.0);
      else  // (1,1)
        pre = (pow_int(x1, 4) + Interval(6.0) * sqr(x1) * sqr(x2) + pow_int(x2, 4)) / Interval(6.0);
    } else {  // F1
      if (i == 0 && j == 0)
        pre = Interval(2.0) * x1 * x2 * r2 / Interval(3.0);
      else if (i == 1 && j == 0)
        pre = Interval(2.0) / Interval(3.0) * x2 * (sqr(x2) + Interval(3.0) * sqr(x1));
      else if (i == 0 && j == 1)
        pre = Interval(2.0) / Interval(3.0) * x1 * (sqr(x1) + Interval(3.0) * sqr(x2));
      else
        pre = Interval(2.0) * r2;
    }
    return Interval(0.0, (pre * m).hi());
  };

  switch (approx) {
    case FarApprox::F0: {
      // the plain four-term symmetrization has the G2 structure at every order
      int d = k2 + l2 + 2;
      Interval pre = Interval(4.0) * pow_int(x1, 1 - i2) * pow_int(x2, 1 - j2);
      return Interval(0.0, (pre * m_gk(d, den)).hi());
    }
    case FarApprox::F1: {
      if (std::max(i, j) <= 1) return bound01(FarApprox::F1);
      int d = k2 + l2 + 2;
      Interval pre = Interval(4.0) * pow_int(x1, 1 - i2) * pow_int(x2, 1 - j2);
      return Interval(0.0, (pre * m_gk(d, den)).hi());
    }
    case FarApprox::F2: {
      if (std::max(i, j) <= 1) return bound01(FarApprox::F2);
      if (i + j <= 3) {
        int d = k + l + 6;
        Interval pre;
        if ((i == 2 && j == 0) || (i == 0 && j == 2))
          pre = Interval(2.0) * x1 * x2 * r2 / Interval(3.0);
        else if ((i == 3 && j == 0) || (i == 1 && j == 2))
          pre = Interval(2.0) / Interval(3.0) * (Interval(3.0) * sqr(x1) * x2 + pow_int(x2, 3));
        else  // (2,1), (0,3)
          pre = Interval(2.0) / Interval(3.0) * (pow_int(x1, 3) + Interval(3.0) * x1 * sqr(x2));
        return Interval(0.0, (pre * m_gk(d, den)).hi());
      }
      // 4 <= i+j <= 5: shift two x-derivatives onto y and use the F1 table
      if (i >= 2) return farfield_kernel_decay(i - 2, j, k + 2, l, FarApprox::F1, x, y);
      return farfield_kernel_decay(i, j - 2, k, l + 2, FarApprox::F1, x, y);
    }
  }
  throw Error("unreachable");
}

}  // namespace certibound
