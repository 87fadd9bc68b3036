#ifndef CERTIBOUND_EXPLICIT_FN_HPP
#define CERTIBOUND_EXPLICIT_FN_HPP

#include "certibound/box.hpp"
#include "certibound/deriv_table.hpp"

namespace certibound {

// The explicit radial / cutoff profiles with certified derivative bounds via
// their structure recursions:
//   chi_exp(x)  = 1/(1 + exp(1/x + 1/(x-1)))   (0 below 0, 1 above 1)
//   chi_rati(x) = x^7 / (1+x^2)^{7/2}          (x clamped at 0 from below)
//   kappa1(x)   = 1/(1 + x^4),   kappa2(x) = 1/(1 + x^2)
//   rho_p(y)    = arctan(1 + y) - 1
//   kappa(x; a, b)   = kappa1(x/a) (1 - chi_exp(x/b))
//   chi_radial(r)    = chi1 (1 - chi2) + chi2, chi1 = chi_rati((r-10)/sqrt(50000)),
//                      chi2 = chi_exp((r - 1e5)/(9e5))
//   inv_one_plus_pow(x; a) = 1/(1 + x^a), integer a >= 2
class ExplicitFn {
 public:
  enum class Tag { ChiExp, ChiRati, Kappa, Kappa1, Kappa2, RhoP, ChiRadial, InvOnePlusPow };

  static ExplicitFn chi_exp() { return {Tag::ChiExp, 0, 0}; }
  static ExplicitFn chi_rati() { return {Tag::ChiRati, 0, 0}; }
  static ExplicitFn kappa(double a, double b) { return {Tag::Kappa, a, b}; }
  static ExplicitFn kappa_star() { return kappa(1.0 / 3.0, 1.5); }
  static ExplicitFn kappa1() { return {Tag::Kappa1, 0, 0}; }
  static ExplicitFn kappa2() { return {Tag::Kappa2, 0, 0}; }
  static ExplicitFn rho_p() { return {Tag::RhoP, 0, 0}; }
  static ExplicitFn chi_radial() { return {Tag::ChiRadial, 0, 0}; }
  static ExplicitFn inv_one_plus_pow(int a) {
    return {Tag::InvOnePlusPow, static_cast<double>(a), 0};
  }

  Tag tag() const { return tag_; }
  double param_a() const { return a_; }
  double param_b() const { return b_; }

 private:
  ExplicitFn(Tag t, double a, double b) : tag_(t), a_(a), b_(b) {}
  Tag tag_;
  double a_, b_;
};

// k = 0: enclosure of the value range over I; k >= 1: [0, bound on |d^k fn|].
// chi_exp supports k <= 15, the others k <= 9.
Interval explicit_deriv_bound(const ExplicitFn& fn, int k, const Interval& i);

// full table of |d^m| bounds for m <= k
DerivTable explicit_deriv_table(const ExplicitFn& fn, int k, const Interval& i);

// ---- named 2D composites ------------------------------------------------------

enum class CompositeCutoff {
  ChiNF,     // kappa(x;2,10) kappa(y;2,10)
  ChiEpsBar, // kappa(x;1/192,3/2) kappa(y;1/192,3/2)
  ChiHatEps, // kappa_*(x) kappa_*(y)
  FChi2,     // x y chi_NF(x,y)
  FChi3,     // x^2/2 chi_NF(x,y)
  ChiPhi,    // kappa2(x/2)(1 - chi_exp(x/128)), 1D in x
};

// |d^i d^j| bound over the box (value range for i = j = 0)
Interval composite_cutoff_bounds(CompositeCutoff id, int i, int j, const Box2& box);

}  // namespace certibound

#endif
