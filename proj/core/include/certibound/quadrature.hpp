#ifndef CERTIBOUND_QUADRATURE_HPP
#define CERTIBOUND_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "certibound/box.hpp"
#include "certibound/kernels.hpp"

namespace certibound {

// strictly increasing node list; an optional +inf sentinel marks a semi-
// infinite final cell (legal only for tail-bound operations)
class Mesh1D {
 public:
  Mesh1D() = default;
  explicit Mesh1D(std::vector<double> nodes);

  const std::vector<double>& nodes() const { return nodes_; }
  size_t cells() const { return nodes_.size() - 1; }
  Interval cell(size_t i) const { return Interval(nodes_[i], nodes_[i + 1]); }
  bool has_infinite_tail() const { return std::isinf(nodes_.back()); }

  static Mesh1D uniform(double a, double b, size_t n);
  // geometric refinement toward `a`
  static Mesh1D geometric(double a, double b, size_t n, double ratio);
  // the computation's near/far design: uniform h up to x_c, then multiplied
  // spacing out to D.  Defaults reproduce h = 13*2^-11, x_c = 13*2^-5 scaled
  // by `scale`.
  static Mesh1D paper_preset(double scale = 1.0, double domain = 13.0);
  // 64-node three-regime desk mesh: uniform, stretched, exponential
  static Mesh1D desk_mesh(size_t n = 64, double domain = 1.0);

 private:
  std::vector<double> nodes_;
};

struct QuadResult {
  Interval main;   // quadrature sum
  Interval err;    // certified remainder, err.lo >= 0
  Interval total;  // main + [0, err.hi]

  static QuadResult make(Interval main, Interval err_bound) {
    QuadResult r;
    r.main = main;
    r.err = Interval(0.0, err_bound.hi());
    r.total = main + Interval(0.0, err_bound.hi());
    return r;
  }
};

QuadResult quad_add(const QuadResult& a, const QuadResult& b);

// corner evaluator over a (typically thin) interval pair; must return an
// enclosure of f over the given sub-box
using CornerFn = std::function<Interval(const Interval&, const Interval&)>;
// second/fourth-derivative bound supplier over a box: returns |d^2_x f|,
// |d^2_y f| (or the fourth-order pair)
using DerivPairFn = std::function<std::pair<Interval, Interval>(const Box2&)>;

// Trapezoidal rule for the L1 integral: total.hi >= int_Q |f|,
// err = |Q|/12 (h1^2 ||f_xx|| + h2^2 ||f_yy||)
QuadResult trapz_l1(const CornerFn& f, const DerivPairFn& d2, const Box2& q);

// sum of trapz_l1 over every cell of the tensor mesh
QuadResult trapz_l1_mesh(const CornerFn& f, const DerivPairFn& d2, const Mesh1D& mx,
                         const Mesh1D& my, int workers = 1);

// sup_{x in P} int_Q |K(x,.)| via the corner-x integrals plus the bilinear
// x-interpolation error (h1^2/8 ||K_x1x1|| + h2^2/8 ||K_x2x2||) |Q|
using Corner2Fn =
    std::function<Interval(const Interval&, const Interval&, const Interval&, const Interval&)>;
using DerivPair2Fn = std::function<std::pair<Interval, Interval>(const Box2&, const Box2&)>;
Interval trapz_l1_xfamily(const Corner2Fn& k, const Box2& p, const Box2& q,
                          const DerivPair2Fn& d2_x, const DerivPairFn& d2_y);

// tensor Simpson with error (|Q|/2880)(h1^4 ||d^4_x f|| + h2^4 ||d^4_y f||)
QuadResult simpson2d(const CornerFn& f, const Box2& q, const DerivPairFn& d4);

// 1D composite Simpson over a mesh; d4 returns a bound for |f''''| on a cell
using Fn1D = std::function<Interval(const Interval&)>;
using DerivFn1D = std::function<Interval(const Interval&)>;
QuadResult simpson1d(const Fn1D& f, const DerivFn1D& d4, const Mesh1D& mesh);

// 1D interval Riemann enclosure (no derivative input; first-order)
Interval riemann1d(const Fn1D& f, const Mesh1D& mesh);

// signed integral of a kernel over a first-quadrant box via its closed-form
// antiderivative
Interval quad_signed_kernel(KernelId id, const Box2& q);

// ---- closed-form tail bounds --------------------------------------------------

enum class NearOriginKernel { K1Type, K00Type };  // y1 y2/|y|^4, K00 shape

// bound for the first-cell integral of |k| / phi with phi >= q r^a (cos b)^b
// over [0, r]^2: K1-type needs a < 0 (else divergent), K00-type a < -2
Interval near_origin_tail(NearOriginKernel kernel, double q, double a, double b, double r);

// J <= (1/q) R1^{2-p-a} (pi/2)^{1+b} / (p+a-2), for |k| <= |y|^-p,
// phi >= q r^a (cos b)^b, b in [-1, 0], p + a > 2
Interval farfield_tail(double p, double q, double a, double b, double r1);

// |int_{[0,D]^2} w K00| for w odd in y1 with grad^k w(0) = 0, k <= 2, from the
// third-derivative bounds M30 = ||d^3_x w||, M12 = ||d_x d^2_y w||
Interval k00_near_origin_bound(const Interval& m30, const Interval& m12, double d);

// the radial x angular contribution -(2/pi)(int_A^B chi r^{-a-1} dr +
// B^{-a}/a) int_0^{pi/2} g(b) sin(2b) db; profiles supplied with their
// fourth-derivative bounds for Simpson
Interval c_omega_radial(const Fn1D& chi, const DerivFn1D& chi_d4, double a_lo, double b_hi,
                        const Fn1D& g, const DerivFn1D& g_d4, double alpha,
                        size_t radial_cells = 256, size_t angular_cells = 64);

// deterministic parallel map-reduce over cells: results merged in index order
Interval parallel_sum(size_t n, const std::function<Interval(size_t)>& fn, int workers);

}  // namespace certibound

#endif
