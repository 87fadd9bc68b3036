#ifndef CERTIBOUND_WEIGHTS_HPP
#define CERTIBOUND_WEIGHTS_HPP

#include <string>
#include <vector>

#include "certibound/box.hpp"
#include "certibound/deriv_table.hpp"

namespace certibound {

// rho(x, y) = sum_i p_i r^{a_i}, p_i >= 0, a_i strictly increasing
class PowerSumWeight {
 public:
  struct Term {
    double p;
    double a;
  };

  PowerSumWeight() = default;
  explicit PowerSumWeight(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  double leading_exponent() const { return terms_.front().a; }
  double last_exponent() const { return terms_.back().a; }

  Interval value(const Interval& r) const;           // two-sided, r > 0 (or a_i >= 0)
  Interval value_at(const Box2& box) const;

 private:
  std::vector<Term> terms_;
};

enum class LambdaRegime { Small, Large };  // lambda <= lambda_*, lambda >= lambda_*

// enclosure of d^i d^j rho over the box (first-quadrant, r away from 0 when
// negative exponents are present), by the C^{+-} coefficient-splitting rule
Interval weight_deriv_bound(const PowerSumWeight& w, int i, int j, const Box2& box);

// enclosure of d^i d^j (1/rho), i+j <= 3, via the R_ij = d rho / rho route;
// the r^{-2}-leading improvement is applied automatically when a_1 = -2
Interval weight_inverse_deriv_bound(const PowerSumWeight& w, int i, int j, const Box2& box);

// bounds for S(x) = sum p_i a_i r^{a_i} / sum p_i r^{a_i} (monotone ratio)
Interval weight_log_deriv_ratio(const PowerSumWeight& w, const Interval& r);
Interval weight_log_deriv_ratio_scaled(const PowerSumWeight& w, const Interval& r,
                                       LambdaRegime regime, double lambda_star);

// enclosure of lambda^{-beta} d^i d^j (w(lambda .)) over the box, uniform over
// the stated lambda regime; beta = a_1 (small) or a_n (large)
Interval scaled_weight_bound(const PowerSumWeight& w, int i, int j, const Box2& box,
                             LambdaRegime regime, double lambda_star);

// W(x) = rho1(r) x1^{x1_exponent} + rho2(r), x1_exponent < 0 (default -1/2)
class MixedWeight {
 public:
  MixedWeight() = default;
  MixedWeight(PowerSumWeight rho1, PowerSumWeight rho2, double x1_exponent = -0.5);

  const PowerSumWeight& rho1() const { return rho1_; }
  const PowerSumWeight& rho2() const { return rho2_; }
  double x1_exponent() const { return x1_exponent_; }
  bool pure_radial() const { return rho1_.terms().empty(); }

  Interval value_at(const Box2& box) const;

  // radial lower bound W(x) >= rho1(r) r^{x1_exponent} + rho2(r) (x1 <= r)
  Interval radial_lower(const Interval& r) const;

 private:
  PowerSumWeight rho1_, rho2_;
  double x1_exponent_ = -0.5;
};

// |d^i d^j W| upper bound (x1 away from 0 when rho1 is present)
Interval mixed_weight_bounds(const MixedWeight& w, int i, int j, const Box2& box);

// upper bound for rho / W over the box
Interval weight_ratio_bound(const PowerSumWeight& rho, const MixedWeight& w, const Box2& box);
// upper bound for rho/W * r^{b-a} coefficient over an asymptotic regime,
// using W >= p_1 r^{b_1} and W >= p_n r^{b_n}
Interval weight_ratio_asymptotic(const PowerSumWeight& rho, const MixedWeight& w,
                                 LambdaRegime regime);

// ---- named weights from the computation -------------------------------------

namespace weights {
PowerSumWeight psi1();     // |x|^-2 + 0.5 |x|^-1 + 0.2 |x|^-1/6
PowerSumWeight psi_u();    // |x|^5/2 + 0.2 |x|^-7/6
PowerSumWeight psi2();     // 0.46 |x|^-5/2 + 0.245 |x|^-1 + 0.3 |x|^-1/2 + 0.112 |x|^1/6
PowerSumWeight rho10();    // |x|^-3 + |x|^-7/6
PowerSumWeight rho3();     // |x|^-1 + |x|^-1/6
MixedWeight phi1();        // x^-1/2 (|x|^-2.4 + 0.6 |x|^-1/2) + 0.3 |x|^-1/6
MixedWeight phi_g1();      // phi1 + |x|^1/16
MixedWeight phi_elli();    // x^-1/2 (|x|^-2 + 0.6 |x|^-1/2) + 0.3 |x|^-1/6
MixedWeight rho4();        // x^-1/2 (|x|^-2.5 + 0.6 |x|^-1/2) + 0.3 |x|^-1/6
MixedWeight phi_evo2();    // wg:lin_evo second weight
MixedWeight phi_evo3();    // wg:lin_evo third weight

// energy-coupling scalars (used as free inputs by callers)
inline constexpr double tau1 = 5.0;
inline constexpr double mu4 = 0.065;
inline constexpr double tau2 = 0.23;

// The anisotropic Holder weight g1 enters only the energy coupling, which is
// outside this library; requesting it reports that explicitly.
PowerSumWeight g1_unimplemented();
}  // namespace weights

}  // namespace certibound

#endif
