#ifndef CERTIBOUND_INTERP_HPP
#define CERTIBOUND_INTERP_HPP

#include <array>
#include <optional>
#include <vector>

#include "certibound/box.hpp"
#include "certibound/deriv_table.hpp"

namespace certibound {

// certified sup bound: sup |f| <= main.hi + err.hi whenever the supplied
// derivative bounds are valid
struct CertifiedBound {
  Interval main;
  Interval err;  // err.lo >= 0
  std::string scheme;

  Interval total() const { return main + Interval(0.0, err.hi()); }
};

struct SampleGrid1D {
  std::vector<double> nodes;   // strictly increasing
  std::vector<double> values;
  std::vector<double> derivs;  // optional (Hermite)
};

struct SampleGrid2D {
  std::vector<double> xs, ys;
  std::vector<std::vector<double>> values;  // values[i][j] = f(xs[i], ys[j])
  std::vector<std::vector<double>> fx, fy;  // optional derivative samples
};

// ---- Newton-polynomial bounds ---------------------------------------------------

// 4 equispaced values spanning [a, b]; d4 bounds |d^4 f| there
CertifiedBound newton_bound_1d(const SampleGrid1D& g, const Interval& d4);

// 4x4 equispaced tensor grid; bounds on ||d^4_x f|| and ||d^4_y f||
CertifiedBound newton2d_bound(const SampleGrid2D& g, const Interval& d4x, const Interval& d4y);

// 3 equispaced nodes; d3 bounds |d^3 f|
CertifiedBound quad_interp_bound(const SampleGrid1D& g, const Interval& d3);

// ---- Lagrange bounds --------------------------------------------------------------

// node layouts are fixed: order 3 at (1/32, 1/2, 31/32) of the cell, order 4
// equispaced; the C-constants are recomputed, not quoted
struct LagrangeConstants {
  Interval c1_4;  // max sum |p_i| for the 4-point layout
  Interval c2_3;  // same for the 3-point layout
  Interval c3_3;  // max |(t-1/32)(t-1/2)(t-31/32)| on [0,1]
};
const LagrangeConstants& lagrange_constants();

CertifiedBound lagrange_bound(const SampleGrid2D& g, int order, const Interval& dkx,
                              const Interval& dky);
CertifiedBound lagrange_bound_1d(const SampleGrid1D& g, int order, const Interval& dk);

// ---- Hermite bounds ----------------------------------------------------------------

enum class HermiteScheme { H4, H5, H4Deriv, H5Deriv };

// values and first derivatives at x0, x1 (plus the value at x2 for the H5
// variants); derivative bound of the matching order (d^4 for H4, d^5 for H5)
CertifiedBound hermite_bound_1d(const SampleGrid1D& g, HermiteScheme scheme,
                                const Interval& d_bound);

enum class Hermite2DScheme { P5, P4, S4Deriv, S4TildeDeriv };

// tensor Hermite data on {x0,x1,x2} x {y0,y1,y2}: values everywhere, fx on
// {x0,x1} x all ys, fy on {x0,x1} x {y0,y1}; the deriv-only schemes bound
// d_x f over [x0,x1] x [y0,y1]
struct Hermite2DData {
  std::array<double, 3> xs, ys;
  double f[3][3];
  double fx[2][3];
  double fy[2][2];
};

// mixed-derivative bounds keyed (i, j) for the orders each scheme cites
CertifiedBound hermite_bound_2d(const Hermite2DData& g, Hermite2DScheme scheme,
                                const DerivTable& d_bounds);

// ---- explicit polynomial extrema -----------------------------------------------------

enum class PolyExtremum {
  QuadraticUnit,   // |(t)(t-1)| <= 1/4 on [0,1]
  PairBound,       // |3t^2-2t| + |3t^2-4t+1| <= 1 on [0,1]
  Cubic012,        // |t(t-1)(t-2)| <= 2/(3 sqrt 3) on [0,2]
  CubicT1Sq,       // t(1-t)^2 <= 4/27 on [0,1]
  Quartic0123,     // |t(t-1)(t-2)(t-3)| <= 1 on [0,3]
  Quintic,         // |t^2(t-1)^2(t-2)| <= 1/10 on [0,1]
};
Interval poly_extrema(PolyExtremum id);

// ---- weighted bounds near the origin ---------------------------------------------------

// E_x(f, k) on cell m of a uniform h-mesh from per-cell upper bounds
// f_1..f_m: (1/(k+1)) sum (i^{k+1} - (i-1)^{k+1})/m^{k+1} max(f_{m-i}, f_{m-i+1})
Interval averaged_power_bound(const std::vector<Interval>& cell_bounds, int k, int m);

enum class WeightedTarget {
  F_over_r3,
  F_over_r52_x12,
  F_over_r2,
  F_over_r32_x12,
  F_over_r,
  Fy_over_r2,
  Fx_over_r2,
  Fy_over_r,
  Fx_over_r,
};

struct VanishingFlags {
  bool odd_in_x = false;
  int grad_vanish_order = -1;  // grad^k F(0) = 0 for k <= this
  bool f_vanishes_on_axis = false;  // F(x, 0) == 0
};

// cellwise upper bounds for the derivative combinations on the uniform mesh
// of [0, D]: rows along y = 0 and full-square row maxima where needed
struct WeightedOriginInput {
  double h = 0.0;  // uniform cell width
  // |F_xxx(., 0)|, |F_xxy(., 0)|, |F_xx(., 0)| per x-cell on the axis
  std::vector<Interval> fxxx_axis, fxxy_axis, fxx_axis;
  // row maxima over x of |F_xyy|, |F_xy| per y-cell
  std::vector<Interval> fxyy_rows, fxy_rows;
  // column maxima over y of |F_xy|, |F_x| per x-cell
  std::vector<Interval> fxy_cols, fx_cols;
};

Interval weighted_origin_bound(const WeightedOriginInput& in, const VanishingFlags& flags,
                               WeightedTarget target);

}  // namespace certibound

#endif
