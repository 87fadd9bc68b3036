#include "certibound/weights.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace certibound {

PowerSumWeight::PowerSumWeight(std::vector<Term> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) return;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].p < 0) throw DomainError("weight coefficients must be nonnegative");
    if (i > 0 && terms_[i - 1].a >= terms_[i].a)
      throw DomainError("weight exponents must be strictly increasing");
  }
}

Interval PowerSumWeight::value(const Interval& r) const {
  Interval s(0.0);
  for (const auto& t : terms_) s = s + Interval(t.p) * iv_power(r, t.a);
  return s;
}

Interval PowerSumWeight::value_at(const Box2& box) const { return value(box.radius()); }

namespace {

// one summand of d^i d^j r^a in the form c(a) x^k y^l r^{a+e}
struct RTerm {
  Interval c;
  int k, l, e;
};

std::vector<RTerm> radial_deriv_terms(double a, int i, int j) {
  std::vector<RTerm> cur{{Interval(1.0), 0, 0, 0}};
  auto step = [a](std::vector<RTerm>& terms, bool in_x) {
    std::map<std::tuple<int, int, int>, Interval> acc;
    for (const auto& t : terms) {
      int k = t.k, l = t.l, e = t.e;
      // d (x^k y^l r^{a+e}) = k x^{k-1} .. + (a+e) x^{k+1} .. r^{a+e-2}
      int pk = in_x ? k : l;
      if (pk > 0) {
        auto key = std::make_tuple(in_x ? k - 1 : k, in_x ? l : l - 1, e);
        Interval add = t.c * Interval(static_cast<double>(pk));
        auto it = acc.find(key);
        if (it == acc.end()) acc.emplace(key, add);
        else it->second = it->second + add;
      }
      {
        auto key = std::make_tuple(in_x ? k + 1 : k, in_x ? l : l + 1, e - 2);
        Interval add = t.c * (Interval(a) + Interval(static_cast<double>(e)));
        auto it = acc.find(key);
        if (it == acc.end()) acc.emplace(key, add);
        else it->second = it->second + add;
      }
    }
    terms.clear();
    for (auto& [key, c] : acc)
      terms.push_back({c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
  };
  for (int s = 0; s < i; ++s) step(cur, true);
  for (int s = 0; s < j; ++s) step(cur, false);
  return cur;
}

// enclosure of d^i d^j r^a over a box; first-quadrant boxes expected.
Interval radial_power_deriv(double a, int i, int j, const Box2& box) {
  if (box.x.lo() < 0 || box.y.lo() < 0)
    throw DomainError("weight derivative bounds expect first-quadrant boxes");
  Interval r = box.radius();
  auto terms = radial_deriv_terms(a, i, j);
  std::erase_if(terms, [](const RTerm& t) { return t.c.lo() == 0.0 && t.c.hi() == 0.0; });
  if (terms.empty()) return Interval(0.0);
  if (r.lo() <= 0.0) {
    if (a - i - j < 0)
      throw DomainError("box touches r = 0 with a negative-order derivative");
    // |x^k y^l r^{a+e}| <= r^{a-i-j}, monotone in r
    Interval m(0.0);
    for (const auto& t : terms) m = m + abs(t.c);
    Interval env = m * iv_power(Interval(r.hi()), a - i - j);
    return Interval(-env.hi(), env.hi());
  }
  Interval s(0.0);
  for (const auto& t : terms)
    s = s + t.c * pow_int(box.x, t.k) * pow_int(box.y, t.l) * iv_power(r, a + t.e);
  return s;
}

}  // namespace

Interval weight_deriv_bound(const PowerSumWeight& w, int i, int j, const Box2& box) {
  if (i < 0 || j < 0 || i + j > 8) throw IndexOutOfRange("derivative order out of range");
  Interval s(0.0);
  for (const auto& t : w.terms())
    s = s + Interval(t.p) * radial_power_deriv(t.a, i, j, box);
  return s;
}

Interval weight_log_deriv_ratio(const PowerSumWeight& w, const Interval& r) {
  // S(x) = a_1 + A(r)/B(r) with b_i = a_i - a_1 >= 0; A/B is nondecreasing
  double a1 = w.leading_exponent();
  auto ab_at = [&](double rp) {
    Interval A(0.0), B(0.0);
    for (const auto& t : w.terms()) {
      Interval rb = iv_power(Interval(rp), t.a - a1);
      A = A + Interval(t.p) * Interval(t.a - a1) * rb;
      B = B + Interval(t.p) * rb;
    }
    return A / B;
  };
  Interval lo = ab_at(r.lo()), hi = ab_at(r.hi());
  return Interval(a1) + Interval(lo.lo(), std::max(lo.lo(), hi.hi()));
}

Interval weight_log_deriv_ratio_scaled(const PowerSumWeight& w, const Interval& r,
                                       LambdaRegime regime, double lambda_star) {
  if (regime == LambdaRegime::Small) {
    // a_1 <= S(lambda x) <= a_1 + A/B(lambda_* r_u), uniform over lambda <= lambda_*
    Interval at_top = weight_log_deriv_ratio(w, Interval(lambda_star) * Interval(r.hi()));
    return Interval(w.leading_exponent(), at_top.hi());
  }
  // large lambda: exponents measured against a_n, ratio still nondecreasing
  double an = w.last_exponent();
  auto ab_at = [&](double rp) {
    Interval A(0.0), B(0.0);
    for (const auto& t : w.terms()) {
      Interval rb = iv_power(Interval(rp), t.a - an);
      A = A + Interval(t.p) * Interval(t.a - an) * rb;
      B = B + Interval(t.p) * rb;
    }
    return A / B;
  };
  Interval at_bot = ab_at(mul_down(lambda_star, r.lo()));
  return Interval((Interval(an) + at_bot).lo(), an);
}

namespace {

struct RTable {
  Interval value;        // rho over the box
  Interval r[4][4];      // R_ij = d^i d^j rho / rho where filled
};

RTable r_table(const PowerSumWeight& w, const Box2& box, int max_order) {
  RTable t;
  t.value = w.value_at(box);
  if (t.value.lo() <= 0) throw DomainError("weight not positive on the box");
  for (int i = 0; i <= max_order; ++i)
    for (int j = 0; i + j <= max_order; ++j) {
      if (i + j == 0) {
        t.r[0][0] = Interval(1.0);
        continue;
      }
      t.r[i][j] = weight_deriv_bound(w, i, j, box) / t.value;
    }
  // sharpen the first-order entries with the monotone ratio S
  Interval rr = box.radius();
  if (rr.lo() > 0) {
    Interval s = weight_log_deriv_ratio(w, rr);
    Interval r2 = sqr(rr);
    t.r[1][0] = intersect(t.r[1][0], box.x * s / r2);
    t.r[0][1] = intersect(t.r[0][1], box.y * s / r2);
    if (t.r[1][0].is_empty() || t.r[0][1].is_empty())
      throw Error("inconsistent R bounds");
  }
  return t;
}

Interval inverse_deriv_generic(const PowerSumWeight& w, int i, int j, const Box2& box) {
  RTable t = r_table(w, box, 3);
  Interval inv = recip(t.value);
  const Interval two(2.0), four(4.0), six(6.0);
  if (i == 0 && j == 0) return inv;
  if (i == 1 && j == 0) return -inv * t.r[1][0];
  if (i == 0 && j == 1) return -inv * t.r[0][1];
  if (i == 2 && j == 0) return inv * (-t.r[2][0] + two * sqr(t.r[1][0]));
  if (i == 0 && j == 2) return inv * (-t.r[0][2] + two * sqr(t.r[0][1]));
  if (i == 1 && j == 1) return inv * (-t.r[1][1] + two * t.r[1][0] * t.r[0][1]);
  if (i == 3 && j == 0)
    return inv * (-t.r[3][0] + six * t.r[2][0] * t.r[1][0] - six * pow_int(t.r[1][0], 3));
  if (i == 0 && j == 3)
    return inv * (-t.r[0][3] + six * t.r[0][2] * t.r[0][1] - six * pow_int(t.r[0][1], 3));
  if (i == 2 && j == 1)
    return inv * (-t.r[2][1] + two * t.r[2][0] * t.r[0][1] + four * t.r[1][0] * t.r[1][1] -
                  six * sqr(t.r[1][0]) * t.r[0][1]);
  if (i == 1 && j == 2)
    return inv * (-t.r[1][2] + two * t.r[0][2] * t.r[1][0] + four * t.r[0][1] * t.r[1][1] -
                  six * sqr(t.r[0][1]) * t.r[1][0]);
  throw IndexOutOfRange("inverse derivative bounds implemented for i+j <= 3");
}

// rho^{-1} = (x^2+y^2) * rho_tilde^{-1} when a_1 = -2; the polynomial factor
// is handled exactly (its derivative table is trivial)
Interval inverse_deriv_shifted(const PowerSumWeight& w, int i, int j, const Box2& box) {
  std::vector<PowerSumWeight::Term> shifted;
  for (const auto& t : w.terms()) shifted.push_back({t.p, t.a + 2.0});
  PowerSumWeight wt{shifted};

  auto s0 = [&](int k, int l) -> Interval {
    if (k == 0 && l == 0) return sqr(box.x) + sqr(box.y);
    if (k == 1 && l == 0) return Interval(2.0) * box.x;
    if (k == 0 && l == 1) return Interval(2.0) * box.y;
    if ((k == 2 && l == 0) || (k == 0 && l == 2)) return Interval(2.0);
    return Interval(0.0);
  };
  Interval s(0.0);
  for (int k = 0; k <= i; ++k)
    for (int l = 0; l <= j; ++l) {
      if (k + l > 2 || (k == 1 && l == 1)) continue;  // S0 has no other derivatives
      Interval c(static_cast<double>(binom(i, k) * binom(j, l)));
      s = s + c * s0(k, l) * inverse_deriv_generic(wt, i - k, j - l, box);
    }
  return s;
}

}  // namespace

Interval weight_inverse_deriv_bound(const PowerSumWeight& w, int i, int j, const Box2& box) {
  if (i + j > 3) throw IndexOutOfRange("inverse derivative bounds implemented for i+j <= 3");
  bool leading_minus_two = w.terms().size() && w.leading_exponent() == -2.0;
  if (!leading_minus_two) return inverse_deriv_generic(w, i, j, box);
  Interval improved = inverse_deriv_shifted(w, i, j, box);
  Interval generic;
  try {
    generic = inverse_deriv_generic(w, i, j, box);
  } catch (const DomainError&) {
    return improved;  // box touches r = 0: only the factored route applies
  }
  Interval both = intersect(improved, generic);
  if (both.is_empty()) throw Error("inconsistent inverse-derivative enclosures");
  return both;
}

Interval scaled_weight_bound(const PowerSumWeight& w, int i, int j, const Box2& box,
                             LambdaRegime regime, double lambda_star) {
  if (lambda_star <= 0) throw DomainError("lambda_star must be positive");
  double beta = (regime == LambdaRegime::Small) ? w.leading_exponent() : w.last_exponent();
  Interval s(0.0);
  for (const auto& t : w.terms()) {
    Interval lam_factor;
    if (t.a == beta) {
      lam_factor = Interval(1.0);
    } else {
      // a_m != beta: 0 <= lambda^{a_m - beta} <= lambda_*^{a_m - beta}
      lam_factor = Interval(0.0, iv_power(Interval(lambda_star), t.a - beta).hi());
    }
    Interval term = radial_power_deriv(t.a, i, j, box);
    s = s + Interval(t.p) * lam_factor * term;
  }
  return s;
}

// ---- mixed weight ------------------------------------------------------------

MixedWeight::MixedWeight(PowerSumWeight rho1, PowerSumWeight rho2, double x1_exponent)
    : rho1_(std::move(rho1)), rho2_(std::move(rho2)), x1_exponent_(x1_exponent) {
  if (x1_exponent_ >= 0) throw DomainError("the x1 factor is a negative power");
}

Interval MixedWeight::value_at(const Box2& box) const {
  Interval v = rho2_.value_at(box);
  if (!rho1_.terms().empty()) {
    if (box.x.lo() <= 0) throw DomainError("x1 must stay positive for the mixed weight value");
    v = v + rho1_.value_at(box) * iv_power(box.x, x1_exponent_);
  }
  return v;
}

Interval MixedWeight::radial_lower(const Interval& r) const {
  // x1 <= r, so x1^e >= r^e for e < 0
  Interval v = rho2_.value(r);
  if (!rho1_.terms().empty()) v = v + rho1_.value(r) * iv_power(r, x1_exponent_);
  return v;
}

Interval mixed_weight_bounds(const MixedWeight& w, int i, int j, const Box2& box) {
  Interval rho2_part = abs(weight_deriv_bound(w.rho2(), i, j, box));
  if (w.rho1().terms().empty()) return Interval(0.0, rho2_part.hi());
  if (box.x.lo() <= 0)
    throw DomainError("x1 must stay positive for mixed-weight derivative bounds");
  double e = w.x1_exponent();
  Interval s(0.0);
  for (int k = 0; k <= i; ++k) {
    // |d^k x^e| = |e (e-1) ... (e-k+1)| x^{e-k}
    Interval coef(1.0);
    for (int m = 0; m < k; ++m) coef = coef * Interval(e - m);
    Interval xpow = iv_power(box.x, e - k);
    s = s + Interval(static_cast<double>(binom(i, k))) *
                abs(weight_deriv_bound(w.rho1(), i - k, j, box)) * abs(coef) *
                Interval(0.0, xpow.hi());
  }
  return Interval(0.0, (s + rho2_part).hi());
}

Interval weight_ratio_bound(const PowerSumWeight& rho, const MixedWeight& w, const Box2& box) {
  Interval num = rho.value_at(box);
  Interval den = w.radial_lower(box.radius());
  if (den.lo() <= 0) throw DomainError("mixed weight lower bound not positive");
  return Interval(0.0, (num / Interval(den.lo())).hi());
}

Interval weight_ratio_asymptotic(const PowerSumWeight& rho, const MixedWeight& w,
                                 LambdaRegime regime) {
  // W >= q1 r^{b1} (r <= 1 regime) or W >= qn r^{bn} (r >= 1 regime), with the
  // b's read off the radial lower bound of W; each rho term is then bounded by
  // p_i r^{a_i - b} / q on the regime using exponent monotonicity.
  std::vector<PowerSumWeight::Term> wt;
  for (const auto& t : w.rho1().terms()) wt.push_back({t.p, t.a + w.x1_exponent()});
  for (const auto& t : w.rho2().terms()) wt.push_back({t.p, t.a});
  if (wt.empty()) throw DomainError("empty mixed weight");
  std::sort(wt.begin(), wt.end(), [](auto& a, auto& b) { return a.a < b.a; });
  double b = (regime == LambdaRegime::Small) ? wt.front().a : wt.back().a;
  double q = (regime == LambdaRegime::Small) ? wt.front().p : wt.back().p;
  Interval s(0.0);
  for (const auto& t : rho.terms()) {
    double gap = t.a - b;
    // r^{gap} on (0,1] (small regime) or [1,inf) (large regime)
    Interval rg;
    if (regime == LambdaRegime::Small)
      rg = gap >= 0 ? Interval(0.0, 1.0) : Interval::entire();
    else
      rg = gap <= 0 ? Interval(0.0, 1.0) : Interval::entire();
    if (!rg.is_bounded())
      throw ExponentOutOfRange("rho is not dominated by the mixed weight in this regime");
    s = s + Interval(t.p) * rg / Interval(q);
  }
  return Interval(0.0, s.hi());
}

// ---- presets -----------------------------------------------------------------

namespace weights {

PowerSumWeight psi1() {
  return PowerSumWeight({{1.0, -2.0}, {0.5, -1.0}, {0.2, -1.0 / 6.0}});
}

PowerSumWeight psi_u() { return PowerSumWeight({{0.2, -7.0 / 6.0}, {1.0, 2.5}}); }

PowerSumWeight psi2() {
  return PowerSumWeight({{0.46, -2.5}, {0.245, -1.0}, {0.3, -0.5}, {0.112, 1.0 / 6.0}});
}

PowerSumWeight rho10() { return PowerSumWeight({{1.0, -3.0}, {1.0, -7.0 / 6.0}}); }
PowerSumWeight rho3() { return PowerSumWeight({{1.0, -1.0}, {1.0, -1.0 / 6.0}}); }

MixedWeight phi1() {
  return MixedWeight(PowerSumWeight({{1.0, -2.4}, {0.6, -0.5}}),
                     PowerSumWeight({{0.3, -1.0 / 6.0}}));
}

MixedWeight phi_g1() {
  return MixedWeight(PowerSumWeight({{1.0, -2.4}, {0.6, -0.5}}),
                     PowerSumWeight({{0.3, -1.0 / 6.0}, {1.0, 1.0 / 16.0}}));
}

MixedWeight phi_elli() {
  return MixedWeight(PowerSumWeight({{1.0, -2.0}, {0.6, -0.5}}),
                     PowerSumWeight({{0.3, -1.0 / 6.0}}));
}

MixedWeight rho4() {
  return MixedWeight(PowerSumWeight({{1.0, -2.5}, {0.6, -0.5}}),
                     PowerSumWeight({{0.3, -1.0 / 6.0}}));
}

namespace {
MixedWeight evo_weight(const double (&p)[5]) {
  return MixedWeight(PowerSumWeight({{p[0], -2.5}, {p[1], -1.5}, {p[2], -1.0 / 6.0}}),
                     PowerSumWeight({{p[3], -0.25}, {p[4], 1.0 / 7.0}}));
}
}  // namespace

MixedWeight phi_evo2() {
  const double mu0 = 0.917;
  const double p[5] = {0.42 * mu0, 0.135 * mu0, 0.216 * mu0, 0.182 * mu0, 0.0349 * mu0};
  return evo_weight(p);
}

MixedWeight phi_evo3() {
  const double mu0 = 0.917;
  const double base[5] = {0.42 * mu0, 0.135 * mu0, 0.216 * mu0, 0.182 * mu0, 0.0349 * mu0};
  const double p[5] = {2.5 * base[0], 2.9 * base[1], 3.115 * base[2], 1.82 * base[3],
                       2.72 * base[4]};
  return evo_weight(p);
}

PowerSumWeight g1_unimplemented() {
  throw Error("g1 belongs to the energy coupling and is intentionally not implemented; "
              "its parameters are (0.12, 0.01, 0.25)");
}

}  // namespace weights

}  // namespace certibound
