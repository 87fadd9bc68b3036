#ifndef CERTIBOUND_KERNELS_HPP
#define CERTIBOUND_KERNELS_HPP

#include <map>
#include <string>

#include "certibound/box.hpp"
#include "certibound/deriv_table.hpp"

namespace certibound {

// Velocity kernels, derivatives of G(y) = -log|y|/2 (the 1/pi prefactor is
// dropped throughout; callers apply it where their constants require it):
//   K1   = y1 y2 / |y|^4
//   K2   = (y1^2 - y2^2) / (2 |y|^4)
//   Ku   = y2 / (2 |y|^2)
//   Kv   = -y1 / (2 |y|^2)
//   K00  = 24 y1 y2 (y1^2 - y2^2) / |y|^8
//   Kux0 = -4 y1 y2 / |y|^4
//   Kdu  = 2 (s1 + x1) s2 / (|s|^2 ((s1 + 2 x1)^2 + s2^2))   (two-argument)
enum class KernelId { K1, K2, Ku, Kv, K00, Kux0, Kdu };

// homogeneity degree d: K(lambda y) = lambda^-d K(y) (both arguments scaled
// for Kdu)
int kernel_homogeneity(KernelId id);

// Range enclosure of the kernel over a box excluding the singularity.  Uses
// the positive/negative-coefficient split of the rational numerator rather
// than naive interval evaluation.
Interval kernel_eval(KernelId id, const Box2& y);
Interval kernel_eval_kdu(const Box2& x, const Box2& s);

// ---- closed-form antiderivatives --------------------------------------------

enum class AntiderivMode { XY, X, Y };  // double, d y1 only, d y2 only

class KernelAntiderivative {
 public:
  KernelAntiderivative(KernelId id, AntiderivMode mode);

  // primitive value at a point box (limits taken on the axes)
  Interval value(const Interval& y1, const Interval& y2) const;

  // signed integral of the kernel over Q via box-differences of the primitive
  // (XY mode), or over the named axis with the other coordinate an interval
  Interval integrate(const Box2& q) const;

  KernelId id() const { return id_; }
  AntiderivMode mode() const { return mode_; }

 private:
  KernelId id_;
  AntiderivMode mode_;
};

KernelAntiderivative kernel_antiderivative(KernelId id, AntiderivMode mode);

// PV correction of Lemma pv: the epsilon-clipped limit differs from the
// principal value by -pi/8 * f(0) (|y1| >= eps clipping) or +pi/8 * f(0)
// (|y2| >= eps clipping).
enum class ClippedAxis { Y1, Y2 };
Interval pv_split_correction(ClippedAxis axis);

// ---- derivative bounds of the Green function --------------------------------

// |d^i d^j log r| <= (i+j-1)! r^[-i-j]  (r_box.lo > 0); the G = -log(r)/2
// version carries the extra 1/2.
Interval green_log_deriv_bound(int i, int j, const Interval& r_box);
Interval green_deriv_bound(int i, int j, const Interval& r_box);

// ---- symmetrized-kernel estimates -------------------------------------------

enum class SymKind {
  G1,        // |G1(1,x)| <= 2 |x|^2 ||f_xx||
  G2,        // |G2(1,x)| <= 4 x1 x2 ||f_xy||
  G1_minus,  // |G1 - G1hat| <= (x1^4 + 6 x1^2 x2^2 + x2^4)/6 ||d^4 f||
  G2_minus,  // |G2 - G2hat| <= 2 x1 x2 |x|^2 / 3 ||d^4 f||
  D1_G1,     // |d_{x_i} G1| <= 4 |x_i| ||f_xx||
  D1_G2,     // |d_{x_i} G2| <= 4 |x_{3-i}| ||f_xy||
  D1_G1_minus,
  D1_G2_minus,
};

// f harmonic on Q_x = [-x1,x1] x [-x2,x2]; derivative bounds up to order 4
// supplied as |d^k d^l f| entries; axis in {1,2} selects the derivative
// variants.  Returns [0, bound].
Interval symmetrized_bounds(const DerivTable& f_bounds, const Box2& x, SymKind which,
                            int axis = 1);

struct SymBoundReport {
  Interval g1_bound;
  Interval g2_bound;
  std::map<std::string, Interval> approx_residuals;  // "F0", "F1", "F2"
};

SymBoundReport symmetrized_report(const DerivTable& f_bounds, const Box2& x);

// ---- far-field decay of the symmetrized kernels ------------------------------

enum class FarApprox { F0, F1, F2 };

// squared distance from y to the reflected-singularity hull Q_x
Interval den_distance(const Box2& x, const Box2& y);

// upper bound for |d_x^(i,j) d_y^(k,l) F_approx(x, y)| assembled from
// M_{G,m} <= (m-1)! / (2 Den^{m/2})
Interval farfield_kernel_decay(int i, int j, int k, int l, FarApprox approx,
                               const Box2& x, const Box2& y);

}  // namespace certibound

#endif
