#ifndef CERTIBOUND_PIECEWISE_HPP
#define CERTIBOUND_PIECEWISE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "certibound/deriv_table.hpp"
#include "certibound/quadrature.hpp"

namespace certibound {

// |f| bound on I from endpoint values and a second-derivative bound:
// max(|f(lo)|, |f(hi)|) + h^2/8 ||f_xx||
Interval second_order_bound_1d(const Interval& f_lo, const Interval& f_hi,
                               const Interval& d2, const Interval& i);
// first-order variant: max endpoint + h/2 ||f_x||
Interval first_order_bound_1d(const Interval& f_lo, const Interval& f_hi,
                              const Interval& d1, const Interval& i);

// ---- piecewise polynomials ---------------------------------------------------

// polynomial on a cell in local monomial form sum c[k][l] x^k y^l (interval
// coefficients; 1D uses l = 0)
struct CellPoly {
  int degree = 0;
  std::vector<std::vector<Interval>> c;

  Interval eval(const Interval& x, const Interval& y) const;
  CellPoly deriv_x() const;
  CellPoly deriv_y() const;
};

// mesh-indexed table of |d^i d^j f| bounds up to a fixed order
class DerivBoundGrid {
 public:
  DerivBoundGrid() = default;
  DerivBoundGrid(Mesh1D mesh_x, Mesh1D mesh_y, int max_order);

  const Mesh1D& mesh_x() const { return mx_; }
  const Mesh1D& mesh_y() const { return my_; }
  int max_order() const { return order_; }

  Interval bound(size_t cx, size_t cy, int i, int j) const;
  void set_bound(size_t cx, size_t cy, int i, int j, Interval v);

 private:
  Mesh1D mx_, my_;
  int order_ = 0;
  std::vector<Interval> data_;
  size_t idx(size_t cx, size_t cy, int i, int j) const;
};

// descending induction A_k <= B_k + h^2/8 A_{k+2} for a piecewise polynomial
// supplied per cell
std::vector<std::vector<Interval>> propagate_poly_bounds_1d(
    const std::vector<CellPoly>& cells, const Mesh1D& mesh);

// ---- B-spline surfaces ----------------------------------------------------------

// 6th-order (degree-5) tensor B-spline with the odd-in-x modification, the
// 7th-order boundary extrapolation rows, and the normalization constants of
// the production representation
class BSplineSurface {
 public:
  BSplineSurface(Mesh1D knots_x, Mesh1D knots_y,
                 std::vector<std::vector<double>> coeffs, bool odd_in_x);

  const Mesh1D& knots_x() const { return kx_; }
  const Mesh1D& knots_y() const { return ky_; }
  size_t basis_count_x() const { return coeffs_.size(); }
  size_t basis_count_y() const { return coeffs_.empty() ? 0 : coeffs_[0].size(); }
  const std::vector<std::vector<double>>& coeffs() const { return coeffs_; }
  bool odd_in_x() const { return odd_; }

  // local polynomial on cell (cx, cy), extracted once and cached
  const CellPoly& cell_poly(size_t cx, size_t cy) const;

  Interval eval(const Interval& x, const Interval& y) const;
  Interval eval_deriv(const Interval& x, const Interval& y, int i, int j) const;

  // fit coefficients from samples f(x_p, y_q) at the knot grid (small dense
  // solve; construction only, not certification)
  static BSplineSurface fit(const Mesh1D& knots_x, const Mesh1D& knots_y,
                            const std::function<double(double, double)>& f, bool odd_in_x);

  // full A_{kl} table by the double induction, orders <= max_order
  DerivBoundGrid propagate_bounds(int max_order) const;

 private:
  Mesh1D kx_, ky_;
  std::vector<std::vector<double>> coeffs_;
  bool odd_;
  mutable std::vector<std::optional<CellPoly>> cell_cache_;
  size_t cells_x() const { return kx_.cells(); }
  size_t cells_y() const { return ky_.cells(); }
};

// 1D spline basis pieces used by the surface (exposed for tests)
namespace bspline_detail {
// value of the order-6 basis B_i (normalized) on cell `cell` as a local
// polynomial in x; knots extended beyond the mesh as needed
CellPoly basis_poly(const Mesh1D& knots, int i, size_t cell, bool odd_in_x);
Interval normalization(const Mesh1D& knots, int i);
}  // namespace bspline_detail

// weighted variant rho(y) p(x,y): Leibniz combination of the polynomial table
// with the weight derivative bounds
DerivBoundGrid propagate_poly_bounds_weighted(
    const BSplineSurface& p, int max_order,
    const std::function<Interval(const Interval&, int)>& rho_deriv_bound);

// ---- Holder / Lipschitz estimates from grids --------------------------------------

// sup |p(b)-p(a)|/|b-a| for a in cell k, b in cell l from per-cell derivative
// bounds
Interval lipschitz_average(const std::vector<Interval>& cell_bounds, const Mesh1D& mesh,
                           size_t k, size_t l);

enum class HolderDirection { X, Y };

struct HolderNorms {
  // optional norm inputs for the weighted routes, valid on the cell pair hull
  std::optional<Interval> f_inf;
  std::optional<Interval> f_over_sqrt_x1;   // ||f x1^{-1/2}||
  std::optional<Interval> fx_sqrt_x;        // ||f_x x^{1/2}||
  std::optional<Interval> fy_sqrt_r;        // ||f_y |x|^{1/2}||
};

struct HolderCellPair {
  // values at the 4 corners of each cell (x-cell and z-cell share the fixed
  // coordinate range)
  Interval x_cell, z_cell, shared;
  Interval fx_corners[4];  // f at (x_lo..hi) x (shared lo..hi)
  Interval fz_corners[4];
  Interval fxx_x, fxx_z;   // second-derivative bounds in the moving direction
  Interval fyy_x, fyy_z;   // and in the shared direction
  Interval lip_bound;      // derivative-average route bound (sup |f'|-average)
};

// min over the applicable routes of an upper bound for
// sup |f(x) - f(z)| / |x - z|^{1/2} over the cell pair
Interval holder_from_grid(const HolderCellPair& pair, const HolderNorms& norms,
                          HolderDirection dir);

}  // namespace certibound

#endif
