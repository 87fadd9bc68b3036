#include "certibound/explicit_fn.hpp"

#include <cmath>
#include <map>

namespace certibound {

namespace {

constexpr int kMaxChiExp = 15;
constexpr int kMaxOther = 9;

// ---- chi_exp: Q_{k,i} as integer combinations of monomials in D_n = p^(n) ----

// a monomial is a sorted multiset of derivative orders with a coefficient
using Monomial = std::vector<int>;

struct QPoly {
  std::map<Monomial, long long> terms;
};

// Q_{k+1,i} = D1 Q_{k,i-1} + i D1 Q_{k,i} + Q'_{k,i}
std::vector<std::vector<QPoly>> build_q_tables() {
  std::vector<std::vector<QPoly>> q(kMaxChiExp + 1);
  for (int k = 0; k <= kMaxChiExp; ++k) q[k].resize(k + 2);
  q[0][0].terms[{}] = 1;  // Q_{0,0} = 1
  auto mul_d1 = [](const QPoly& p) {
    QPoly r;
    for (const auto& [mono, c] : p.terms) {
      Monomial m = mono;
      m.insert(std::lower_bound(m.begin(), m.end(), 1), 1);
      r.terms[m] += c;
    }
    return r;
  };
  auto derive = [](const QPoly& p) {
    QPoly r;
    for (const auto& [mono, c] : p.terms) {
      for (size_t j = 0; j < mono.size(); ++j) {
        Monomial m = mono;
        m[j] += 1;
        std::sort(m.begin(), m.end());
        r.terms[m] += c;
      }
    }
    return r;
  };
  auto add = [](QPoly& dst, const QPoly& src, long long scale) {
    for (const auto& [m, c] : src.terms) {
      dst.terms[m] += c * scale;
      if (dst.terms[m] == 0) dst.terms.erase(m);
    }
  };
  for (int k = 0; k < kMaxChiExp; ++k) {
    for (int i = 0; i <= k + 1; ++i) {
      QPoly next;
      if (i >= 1 && i - 1 <= k) add(next, mul_d1(q[k][i - 1]), 1);
      if (i <= k) add(next, mul_d1(q[k][i]), i);
      if (i <= k) add(next, derive(q[k][i]), 1);
      q[k + 1][i] = std::move(next);
    }
  }
  return q;
}

const std::vector<std::vector<QPoly>>& q_tables() {
  static auto t = build_q_tables();
  return t;
}

// |p^(n)| on distance z from {0,1}: n! (z^{-n-1} + [n odd] 2^{n+1})
Interval dp_bound(int n, double z_lo) {
  Interval fact(1.0);
  for (int m = 2; m <= n; ++m) fact = fact * Interval(static_cast<double>(m));
  Interval zpow = iv_power(Interval(z_lo), -(n + 1.0));
  Interval extra = (n % 2 == 1) ? Interval(std::pow(2.0, n + 1)) : Interval(0.0);
  return fact * (zpow + extra);
}

Interval p_of(const Interval& x) {
  return recip(x) + recip(x - Interval(1.0));
}

// G_i = e^{ip}/(1+e^p)^{i+1} <= min(1, e^{i p_u}, e^{-p_l})
Interval g_factor_upper(int i, const Interval& p) {
  Interval one(1.0);
  Interval a = exp(Interval(static_cast<double>(i)) * Interval(p.hi()));
  Interval b = exp(-Interval(p.lo()));
  Interval m = min(one, min(Interval(0.0, a.hi()), Interval(0.0, b.hi())));
  return Interval(0.0, m.hi());
}

// direct bound at distance z >= z_lo from both endpoints
Interval chi_exp_bound_at(int k, const Interval& x, double z_lo) {
  const auto& q = q_tables();
  Interval p = p_of(x);
  Interval total(0.0);
  Interval ifact(1.0);
  for (int i = 1; i <= k; ++i) {
    ifact = ifact * Interval(static_cast<double>(i));
    Interval qbound(0.0);
    for (const auto& [mono, c] : q[k][i].terms) {
      Interval m(std::fabs(static_cast<double>(c)));
      for (int n : mono) m = m * dp_bound(n, z_lo);
      qbound = qbound + m;
    }
    total = total + ifact * g_factor_upper(i, p) * qbound;
  }
  return Interval(0.0, total.hi());
}

// |d^k chi_e| over I subset (0,1)
Interval chi_exp_deriv_core(int k, const Interval& i_in) {
  double lo = i_in.lo(), hi = i_in.hi();
  double delta = 1.0 / (2.0 * k);
  const double z_floor = 1e-3;
  Interval best(0.0);
  // middle piece, away from both endpoints
  double ml = std::max(lo, delta), mh = std::min(hi, 1.0 - delta);
  if (ml <= mh) {
    double z_lo = std::min(ml, 1.0 - mh);
    best = max(best, chi_exp_bound_at(k, Interval(ml, mh), z_lo));
  }
  // right piece [1-delta, 1): e^{ip} Q^u decreasing, so the bound at the left
  // edge (or at a safe floor distance below it) dominates
  if (hi > 1.0 - delta) {
    double xl = std::max(lo, 1.0 - delta);
    double z = std::max(std::min(1.0 - xl, delta), 0.0);
    double z_eff = std::max(z, 0.0);
    if (z_eff < z_floor) z_eff = z_floor;
    double x_eff = 1.0 - z_eff;
    best = max(best, chi_exp_bound_at(k, Interval(x_eff), z_eff));
  }
  // left piece (0, delta]: |d^k chi_e(x)| = |d^k chi_e(1-x)| by the reflection
  // chi_e(1-x) = 1 - chi_e(x)
  if (lo < delta) {
    double xh = std::min(hi, delta);
    double z = std::max(xh, 0.0);
    double z_eff = std::max(std::min(z, delta), 0.0);
    if (z_eff < z_floor) z_eff = z_floor;
    best = max(best, chi_exp_bound_at(k, Interval(1.0 - z_eff), z_eff));
  }
  return best;
}

Interval chi_exp_value(const Interval& x) {
  auto at = [](double t) -> Interval {
    if (t <= 0.0) return Interval(0.0);
    if (t >= 1.0) return Interval(1.0);
    Interval p = p_of(Interval(t));
    return recip(Interval(1.0) + exp(p));
  };
  // increasing
  Interval lo = at(x.lo()), hi = at(x.hi());
  return Interval(std::max(0.0, lo.lo()), std::min(1.0, hi.hi()));
}

Interval chi_exp_bound(int k, const Interval& x) {
  if (k == 0) return chi_exp_value(x);
  if (k > kMaxChiExp) throw OrderTooHigh("chi_exp derivative bounds go up to order 15");
  Interval inside = intersect(x, Interval(0.0, 1.0));
  if (inside.is_empty()) return Interval(0.0);
  if (inside.is_point() && (inside.lo() == 0.0 || inside.lo() == 1.0)) return Interval(0.0);
  return chi_exp_deriv_core(k, inside);
}

// ---- rational family: f = N_k(x) / q(x)^{e_k} with polynomial recursions ----

struct RationalDerivs {
  // N_{k+1} = N_k' q - (c0 + c1 k) x^{g} N_k, denominators q^{e0 + k}
  std::vector<std::vector<Interval>> num;  // coefficients per order
};

std::vector<Interval> poly_derive(const std::vector<Interval>& p) {
  if (p.size() <= 1) return {Interval(0.0)};
  std::vector<Interval> d(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * Interval(static_cast<double>(i));
  return d;
}

std::vector<Interval> poly_mul(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> r(a.size() + b.size() - 1, Interval(0.0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

void poly_axpy(std::vector<Interval>& dst, const std::vector<Interval>& src, const Interval& c) {
  if (dst.size() < src.size()) dst.resize(src.size(), Interval(0.0));
  for (size_t i = 0; i < src.size(); ++i) dst[i] = dst[i] + c * src[i];
}

// P^+(x) + P^-(x) at a point, x >= 0
Interval poly_pm_sum(const std::vector<Interval>& p, double x) {
  Interval s(0.0);
  for (size_t i = 0; i < p.size(); ++i)
    s = s + abs(p[i]) * pow_int(Interval(x), static_cast<long>(i));
  return s;
}

// +- split evaluation of a polynomial with interval coefficients on x >= 0
std::pair<Interval, Interval> poly_pm_eval(const std::vector<Interval>& p, double x_lo,
                                           double x_hi) {
  Interval pos_lo(0.0), pos_hi(0.0), neg_lo(0.0), neg_hi(0.0);
  for (size_t i = 0; i < p.size(); ++i) {
    Interval cp = max(p[i], Interval(0.0));
    Interval cn = max(-p[i], Interval(0.0));
    Interval xlo = pow_int(Interval(x_lo), static_cast<long>(i));
    Interval xhi = pow_int(Interval(x_hi), static_cast<long>(i));
    pos_lo = pos_lo + cp * xlo;
    pos_hi = pos_hi + cp * xhi;
    neg_lo = neg_lo + cn * xlo;
    neg_hi = neg_hi + cn * xhi;
  }
  // returns enclosure of P^+ - P^- over [x_lo, x_hi]
  Interval lo = pos_lo - neg_hi;
  Interval hi = pos_hi - neg_lo;
  return {lo, hi};
}

// derivative numerators of f = x^7/(1+x^2)^{7/2}: p_{k+1} = p_k'(1+x^2) - (7+2k) x p_k
const std::vector<std::vector<Interval>>& chi_rati_nums() {
  static std::vector<std::vector<Interval>> t = [] {
    std::vector<std::vector<Interval>> v(kMaxOther + 1);
    v[0] = std::vector<Interval>(8, Interval(0.0));
    v[0][7] = Interval(1.0);
    std::vector<Interval> one_x2 = {Interval(1.0), Interval(0.0), Interval(1.0)};
    for (int k = 0; k < kMaxOther; ++k) {
      std::vector<Interval> next = poly_mul(poly_derive(v[k]), one_x2);
      std::vector<Interval> xp(v[k].size() + 1, Interval(0.0));
      for (size_t i = 0; i < v[k].size(); ++i) xp[i + 1] = v[k][i];
      poly_axpy(next, xp, Interval(-(7.0 + 2.0 * k)));
      v[k + 1] = std::move(next);
    }
    return v;
  }();
  return t;
}

Interval chi_rati_bound(int k, const Interval& x_in) {
  if (k > kMaxOther) throw OrderTooHigh("chi_rati derivative bounds go up to order 9");
  // zero part below 0
  Interval x = intersect(x_in, Interval(0.0, std::numeric_limits<double>::infinity()));
  bool has_left = x_in.lo() < 0.0;
  if (x.is_empty()) return k == 0 ? Interval(0.0) : Interval(0.0);
  if (k == 0) {
    // increasing from 0 toward 1
    auto val = [](double t) {
      Interval ti(t);
      return iv_power(ti, 7.0) / iv_power(Interval(1.0) + sqr(ti), 3.5);
    };
    Interval hi = val(x.hi());
    Interval lo = has_left || x.lo() == 0.0 ? Interval(0.0) : val(x.lo());
    return Interval(std::max(0.0, lo.lo()), std::min(1.0, hi.hi()));
  }
  const auto& nums = chi_rati_nums();
  double xl = x.lo(), xu = x.hi();
  auto [plo, phi] = poly_pm_eval(nums[k], xl, xu);
  Interval absnum = max(abs(plo), abs(phi));
  Interval denom = iv_power(Interval(1.0) + sqr(Interval(xl)), 3.5 + k);
  Interval direct = absnum / denom;
  if (xl >= 2.0) {
    // far field: p^+/(1+x^2)^{7/2+k} and p^-/(...) are separately decreasing,
    // so their left-edge sum dominates the quotient on [xl, xu]
    Interval at_edge = poly_pm_sum(nums[k], xl) / denom;
    direct = min(direct, at_edge);
  }
  return Interval(0.0, direct.hi());
}

// 1/(1 + x^a) derivative numerators: N_{k+1} = N'(1+x^a) - (k+1) a x^{a-1} N
std::vector<std::vector<Interval>> inv_pow_nums(int a) {
  std::vector<std::vector<Interval>> v(kMaxOther + 1);
  v[0] = {Interval(1.0)};
  std::vector<Interval> qa(a + 1, Interval(0.0));
  qa[0] = Interval(1.0);
  qa[a] = Interval(1.0);
  for (int k = 0; k < kMaxOther; ++k) {
    std::vector<Interval> next = poly_mul(poly_derive(v[k]), qa);
    std::vector<Interval> xm(v[k].size() + a, Interval(0.0));
    for (size_t i = 0; i < v[k].size(); ++i) xm[i + a - 1] = v[k][i];
    poly_axpy(next, xm, Interval(-(k + 1.0) * a));
    v[k + 1] = std::move(next);
  }
  return v;
}

Interval inv_pow_bound(int a, int k, const Interval& x_in) {
  if (k > kMaxOther) throw OrderTooHigh("1/(1+x^a) derivative bounds go up to order 9");
  // even function for even a; reflect negative parts
  Interval x = x_in;
  if (a % 2 == 0 && x.hi() <= 0) x = -x;
  if (a % 2 == 0 && x.contains(0.0)) x = Interval(0.0, std::max(-x.lo(), x.hi()));
  if (x.lo() < 0) throw DomainError("1/(1+x^a) bounds expect x >= 0 for odd powers");
  if (k == 0) {
    auto val = [&](double t) { return recip(Interval(1.0) + iv_power(Interval(t), a)); };
    // decreasing on x >= 0
    return Interval(std::max(0.0, val(x.hi()).lo()), std::min(1.0, val(x.lo()).hi()));
  }
  static std::map<int, std::vector<std::vector<Interval>>> cache;
  auto it = cache.find(a);
  if (it == cache.end()) it = cache.emplace(a, inv_pow_nums(a)).first;
  const auto& nums = it->second;
  double xl = x.lo(), xu = x.hi();
  auto [plo, phi] = poly_pm_eval(nums[k], xl, xu);
  Interval absnum = max(abs(plo), abs(phi));
  Interval denom = pow_int(Interval(1.0) + iv_power(Interval(xl), a), k + 1);
  Interval direct = absnum / denom;
  // far-field tail rule: |d^i F_a| <= C_{i,0} (1 + eps1/(x-1) + x^{-20}) x^{-a-i}
  if (xl >= 100.0) {
    Interval ci0(1.0);
    for (int j = 0; j < k; ++j) ci0 = ci0 * Interval(a + j);
    Interval eps1(0.0);
    for (int kk = 1; kk <= 20; ++kk) {
      Interval cik(1.0);
      for (int j = 0; j < k; ++j) cik = cik * Interval(a * (kk + 1.0) + j);
      Interval r = iv_power(Interval(xl), -(a - 1.0) * kk) * cik / ci0;
      eps1 = max(eps1, r);
    }
    Interval ca = Interval(1.0) + eps1 / (Interval(xl) - Interval(1.0)) +
                  iv_power(Interval(xl), -20.0);
    Interval tail = ci0 * ca * iv_power(Interval(xl), -(a + static_cast<double>(k)));
    direct = min(direct, tail);
  }
  return Interval(0.0, direct.hi());
}

// rho_p = arctan(1+y) - 1: d^k = N_k(y)/g^k, g = y^2 + 2y + 2
const std::vector<std::vector<Interval>>& rho_p_nums() {
  static std::vector<std::vector<Interval>> t = [] {
    std::vector<std::vector<Interval>> v(kMaxOther + 1);
    v[1] = {Interval(1.0)};  // d rho_p = 1/g
    std::vector<Interval> g = {Interval(2.0), Interval(2.0), Interval(1.0)};
    std::vector<Interval> gp = {Interval(2.0), Interval(2.0)};
    for (int k = 1; k < kMaxOther; ++k) {
      std::vector<Interval> next = poly_mul(poly_derive(v[k]), g);
      poly_axpy(next, poly_mul(v[k], gp), Interval(-static_cast<double>(k)));
      v[k + 1] = std::move(next);
    }
    return v;
  }();
  return t;
}

Interval rho_p_bound(int k, const Interval& y) {
  if (k > kMaxOther) throw OrderTooHigh("rho_p derivative bounds go up to order 9");
  if (y.lo() < 0) throw DomainError("rho_p bounds expect y >= 0");
  if (k == 0) {
    // increasing
    Interval lo = atan(Interval(1.0) + Interval(y.lo())) - Interval(1.0);
    Interval hi = atan(Interval(1.0) + Interval(y.hi())) - Interval(1.0);
    return Interval(lo.lo(), hi.hi());
  }
  const auto& nums = rho_p_nums();
  auto [plo, phi] = poly_pm_eval(nums[k], y.lo(), y.hi());
  Interval absnum = max(abs(plo), abs(phi));
  Interval g_lo = Interval(2.0) + Interval(2.0) * Interval(y.lo()) + sqr(Interval(y.lo()));
  return Interval(0.0, (absnum / pow_int(g_lo, k)).hi());
}

// scaled-argument dispatch: |d^k f((x - shift)/scale)| = scale^{-k} |f^(k)|(u)
Interval scaled_bound(const std::function<Interval(int, const Interval&)>& base, int k,
                      const Interval& x, double shift, double scale) {
  Interval u = (x - Interval(shift)) / Interval(scale);
  Interval inner = base(k, u);
  if (k == 0) return inner;
  Interval fac = iv_power(Interval(scale), -static_cast<double>(k));
  return Interval(0.0, (inner * fac).hi());
}

// kappa(x; a, b) = kappa1(x/a)(1 - chi_exp(x/b)) via Leibniz
Interval kappa_bound(double a, double b, int k, const Interval& x) {
  auto k1 = [&](int m, const Interval& t) { return inv_pow_bound(4, m, t); };
  auto ce = [&](int m, const Interval& t) { return chi_exp_bound(m, t); };
  if (k == 0) {
    Interval v1 = scaled_bound(k1, 0, x, 0.0, a);
    Interval v2 = Interval(1.0) - scaled_bound(ce, 0, x, 0.0, b);
    Interval v = v1 * v2;
    return Interval(std::max(0.0, v.lo()), v.hi());
  }
  Interval s(0.0);
  for (int m = 0; m <= k; ++m) {
    Interval da = abs(scaled_bound(k1, m, x, 0.0, a));
    Interval db;
    if (k - m == 0)
      db = abs(Interval(1.0) - scaled_bound(ce, 0, x, 0.0, b));
    else
      db = abs(scaled_bound(ce, k - m, x, 0.0, b));
    s = s + Interval(static_cast<double>(binom(k, m))) * da * db;
  }
  return Interval(0.0, s.hi());
}

Interval chi_radial_bound(int k, const Interval& r) {
  const double a1 = 10.0, a2 = 1e5;
  const double l1 = std::sqrt(50000.0);
  auto c1 = [&](int m, const Interval& t) {
    return scaled_bound([](int mm, const Interval& u) { return chi_rati_bound(mm, u); }, m, t,
                        a1, l1);
  };
  auto c2 = [&](int m, const Interval& t) {
    return scaled_bound([](int mm, const Interval& u) { return chi_exp_bound(mm, u); }, m, t,
                        a2, 9.0 * a2);
  };
  // chi = chi1 (1 - chi2) + chi2
  if (k == 0) {
    Interval v1 = c1(0, r), v2 = c2(0, r);
    Interval v = v1 * (Interval(1.0) - v2) + v2;
    return Interval(std::max(0.0, v.lo()), std::min(1.0, v.hi()));
  }
  Interval s = abs(c2(k, r));
  for (int m = 0; m <= k; ++m) {
    Interval da = abs(c1(m, r));
    Interval db = (k - m == 0) ? abs(Interval(1.0) - c2(0, r)) : abs(c2(k - m, r));
    s = s + Interval(static_cast<double>(binom(k, m))) * da * db;
  }
  return Interval(0.0, s.hi());
}

}  // namespace

Interval explicit_deriv_bound(const ExplicitFn& fn, int k, const Interval& i) {
  if (k < 0) throw IndexOutOfRange("derivative order");
  switch (fn.tag()) {
    case ExplicitFn::Tag::ChiExp: return chi_exp_bound(k, i);
    case ExplicitFn::Tag::ChiRati: return chi_rati_bound(k, i);
    case ExplicitFn::Tag::Kappa: return kappa_bound(fn.param_a(), fn.param_b(), k, i);
    case ExplicitFn::Tag::Kappa1: return inv_pow_bound(4, k, i);
    case ExplicitFn::Tag::Kappa2: return inv_pow_bound(2, k, i);
    case ExplicitFn::Tag::RhoP: return rho_p_bound(k, i);
    case ExplicitFn::Tag::ChiRadial: return chi_radial_bound(k, i);
    case ExplicitFn::Tag::InvOnePlusPow: {
      int a = static_cast<int>(fn.param_a());
      if (a < 2) throw DomainError("integer power a >= 2 expected");
      return inv_pow_bound(a, k, i);
    }
  }
  throw Error("unreachable");
}

DerivTable explicit_deriv_table(const ExplicitFn& fn, int k, const Interval& i) {
  DerivTable t(k, 0);
  for (int m = 0; m <= k; ++m) t.set(m, 0, explicit_deriv_bound(fn, m, i));
  return t;
}

Interval composite_cutoff_bounds(CompositeCutoff id, int i, int j, const Box2& box) {
  auto kp = [](double a, double b) { return ExplicitFn::kappa(a, b); };
  auto bound_1d = [](const ExplicitFn& f, int k, const Interval& t) {
    return explicit_deriv_bound(f, k, t);
  };
  switch (id) {
    case CompositeCutoff::ChiNF:
    case CompositeCutoff::ChiEpsBar:
    case CompositeCutoff::ChiHatEps: {
      ExplicitFn f = (id == CompositeCutoff::ChiNF) ? kp(2.0, 10.0)
                     : (id == CompositeCutoff::ChiEpsBar) ? kp(1.0 / 192.0, 1.5)
                                                          : ExplicitFn::kappa_star();
      Interval bx = bound_1d(f, i, box.x);
      Interval by = bound_1d(f, j, box.y);
      if (i == 0 && j == 0) return bx * by;
      return Interval(0.0, (abs(bx) * abs(by)).hi());
    }
    case CompositeCutoff::FChi2: {
      // x y chi_NF: Leibniz against the polynomial factor x y
      Interval s(0.0);
      for (int a = 0; a <= std::min(i, 1); ++a)
        for (int b = 0; b <= std::min(j, 1); ++b) {
          Interval poly;
          if (a == 0 && b == 0) poly = abs(box.x) * abs(box.y);
          else if (a == 1 && b == 0) poly = abs(box.y);
          else if (a == 0 && b == 1) poly = abs(box.x);
          else poly = Interval(1.0);
          Interval rest = composite_cutoff_bounds(CompositeCutoff::ChiNF, i - a, j - b, box);
          Interval coef(static_cast<double>(binom(i, a) * binom(j, b)));
          s = s + coef * poly * abs(rest);
        }
      if (i == 0 && j == 0) {
        Interval v = box.x * box.y * composite_cutoff_bounds(CompositeCutoff::ChiNF, 0, 0, box);
        return v;
      }
      return Interval(0.0, s.hi());
    }
    case CompositeCutoff::FChi3: {
      Interval s(0.0);
      for (int a = 0; a <= std::min(i, 2); ++a) {
        Interval poly;
        if (a == 0) poly = sqr(abs(box.x)) / Interval(2.0);
        else if (a == 1) poly = abs(box.x);
        else poly = Interval(1.0);
        Interval rest = composite_cutoff_bounds(CompositeCutoff::ChiNF, i - a, j, box);
        s = s + Interval(static_cast<double>(binom(i, a))) * poly * abs(rest);
      }
      if (i == 0 && j == 0)
        return sqr(box.x) / Interval(2.0) *
               composite_cutoff_bounds(CompositeCutoff::ChiNF, 0, 0, box);
      return Interval(0.0, s.hi());
    }
    case CompositeCutoff::ChiPhi: {
      if (j != 0) return Interval(0.0);
      auto k2 = [](int m, const Interval& t) { return inv_pow_bound(2, m, t); };
      auto ce = [](int m, const Interval& t) { return chi_exp_bound(m, t); };
      if (i == 0) {
        Interval v1 = scaled_bound(k2, 0, box.x, 0.0, 2.0);
        Interval v2 = Interval(1.0) - scaled_bound(ce, 0, box.x, 0.0, 128.0);
        return v1 * v2;
      }
      Interval s(0.0);
      for (int m = 0; m <= i; ++m) {
        Interval da = abs(scaled_bound(k2, m, box.x, 0.0, 2.0));
        Interval db = (i - m == 0) ? abs(Interval(1.0) - scaled_bound(ce, 0, box.x, 0.0, 128.0))
                                   : abs(scaled_bound(ce, i - m, box.x, 0.0, 128.0));
        s = s + Interval(static_cast<double>(binom(i, m))) * da * db;
      }
      return Interval(0.0, s.hi());
    }
  }
  throw Error("unreachable");
}

}  // namespace certibound
