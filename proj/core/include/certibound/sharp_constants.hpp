#ifndef CERTIBOUND_SHARP_CONSTANTS_HPP
#define CERTIBOUND_SHARP_CONSTANTS_HPP

#include <string>
#include <vector>

#include "certibound/quadrature.hpp"

namespace certibound {

// ---- half-power special integrals ---------------------------------------------

// f_s(t) = int_0^t s^2/(1+s^4) ds; t may be +inf (f_s(inf) = pi/(2 sqrt 2))
Interval fs(const Interval& t);
// f_h(a) = int_0^a s^{3/2}/(1+s^2) ds
Interval fh(const Interval& a);
// int_a^b p s^{1/2}/(p^2+s^2) ds = 2 sqrt(p) (f_s(sqrt(b/p)) - f_s(sqrt(a/p)))
Interval fs_scaled(double p, double a, double b);

// F_{K2,h}(a,b,c,d) = int_{[a,b]x[c,d]} |K2(y)| y2^{1/2} dy, a,b,c,d >= 0
Interval fk2h(double a, double b, double c, double d);

// F_diag(a,b) = int_{[a,b]^2} |K2| = log(b/a)/2 - (pi/4 - atan(a/b))
Interval fdiag(double a, double b);

struct CK2Constants {
  Interval up, low, total;
};
// C_{K2,up}, C_{K2,low} = (log 2 - 2 f_s(1))/2, and their sum; cached
const CK2Constants& ck2_constants();

// ---- sign thresholds ------------------------------------------------------------

struct SignThresholds {
  Interval h_c_minus;  // empty when y2^2 > 1/3 (not real there)
  Interval h_c_plus;
  Interval s_c;
  Interval f_ux;
};
// evaluated at the given coordinate (y2 for h_c, y1 for s_c, s2 for f_ux)
SignThresholds sign_thresholds(const Interval& v);

// ---- transport maps -------------------------------------------------------------

enum class TransportBranch { UxMap, VxMap, VxCyD1, VxCyD2 };

struct TransportSolution {
  Interval T;
  Interval residual;  // encloses 0
  TransportBranch branch;
};

TransportSolution transport_map(TransportBranch branch, const Interval& s1,
                                const Interval& s2);
// monotone endpoint evaluation over a box
TransportSolution transport_map_box(TransportBranch branch, const Box2& s);

struct TransportGradient {
  Interval dT_ds1, dT_ds2;
};
// implicit-differentiation enclosures of grad T over the box
TransportGradient transport_gradient(TransportBranch branch, const Box2& s);

// |T(s) - s_1| <= c(Q) |s_1 - 1/2| with c from the supplied dT/ds1 bound over
// [1/2, s1^u] x s2-range, intersected with the trivial route |T - s1| <= s1^u
Interval transport_deviation_bound(TransportBranch branch, const Box2& s,
                                   const Interval& t_s1_bound);

// ---- strip estimates ------------------------------------------------------------

struct StripNorms {
  Interval f_inf;     // |f|_Linf on the strip square
  Interval f_holder;  // [f]_{C^{1/2}} in the transverse direction
};

// |I_{a,b}| <= |f|_inf arctan(a/b)/2 + a^{1/2}(f_s(sqrt(b/a)) - f_s(1) +
// C_{K2,up}) [f]; the swapped x-form exchanges the roles of a and b
enum class StripForm { YDirection, XDirection };
Interval strip_estimate(double a, double b, const StripNorms& norms,
                        StripForm form = StripForm::YDirection);

// I_{K2,inf}(a,b) = (b^{1/2} - a^{1/2}) int_1^inf (s^2-1)/(s^2+1)^2 |s - 1/s|^{1/2} ds
Interval ik2_inf(double a, double b);

// ---- residue identity -----------------------------------------------------------

// pi sqrt(sqrt(1+A^2) - A), computed in the cancellation-safe form
// pi (sqrt(1+A^2) + A)^{-1/2}
Interval residue_identity(const Interval& a_param);

// rigorous quadrature of int_0^inf (g_A(y-1) - g_A(y+1)) sqrt(y) dy
// (finite box + analytic tail); requires A > 0
Interval residue_quadrature(double a_param, double r_cut = 1e4);

// ---- u/x1 integrals --------------------------------------------------------------

struct JPair {
  Interval j1, j2;
};
JPair u_over_x1_j(const Interval& b);
Interval j21(const Interval& b);  // regular part J_2(B) + log B

// J_2(x/h) x^{1-alpha} <= J_2(z_u/h) z_u^{1-alpha} for x <= z_u <=
// min(h e^{-1/(1-alpha)}, h/2)
Interval j2_weighted_smallx(double z_u, double h, double alpha);

// ---- K_du integral bounds ---------------------------------------------------------

enum class KduEstimate { I, II };
// upper bound for int_Q K_du(x, s) 1_{x1+s1>=0} ds, x1 in a positive interval,
// Q with s2 of one sign
Interval bound_kdu_integral(const Interval& x1, const Box2& q, KduEstimate which);

// ---- named constants for the CLI table --------------------------------------------

struct NamedConstant {
  std::string name;
  Interval value;
  std::string ref;  // the identity or formula the value realizes
};
std::vector<NamedConstant> constants_table();

// double antiderivative helpers (first quadrant):
// primitive_xy_v_over_r2:  d_u d_v P = v/(u^2+v^2)
// primitive_xy_v_over_r4:  d_u d_v P = v/(u^2+v^2)^2  (away from the origin)
Interval primitive_xy_v_over_r2(const Interval& u, const Interval& v);
Interval primitive_xy_v_over_r4(const Interval& u, const Interval& v);

}  // namespace certibound

#endif
