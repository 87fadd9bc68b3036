#include "certibound/piecewise.hpp"

#include <cmath>

namespace certibound {

Interval second_order_bound_1d(const Interval& f_lo, const Interval& f_hi,
                               const Interval& d2, const Interval& i) {
  Interval h = Interval(i.hi()) - Interval(i.lo());
  Interval v = max(abs(f_lo), abs(f_hi)) + sqr(h) / Interval(8.0) * abs(d2);
  return Interval(0.0, v.hi());
}

Interval first_order_bound_1d(const Interval& f_lo, const Interval& f_hi,
                              const Interval& d1, const Interval& i) {
  Interval h = Interval(i.hi()) - Interval(i.lo());
  Interval v = max(abs(f_lo), abs(f_hi)) + h / Interval(2.0) * abs(d1);
  return Interval(0.0, v.hi());
}

// ---- cell polynomials ------------------------------------------------------------

Interval CellPoly::eval(const Interval& x, const Interval& y) const {
  // Horner in y inside Horner in x, on local coordinates
  Interval r(0.0);
  for (size_t k = c.size(); k-- > 0;) {
    Interval row(0.0);
    for (size_t l = c[k].size(); l-- > 0;) row = row * y + c[k][l];
    r = r * x + row;
  }
  return r;
}

CellPoly CellPoly::deriv_x() const {
  CellPoly d;
  d.degree = degree;
  if (c.size() <= 1) {
    d.c = {{Interval(0.0)}};
    return d;
  }
  d.c.resize(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) {
    d.c[k - 1] = c[k];
    for (auto& v : d.c[k - 1]) v = v * Interval(static_cast<double>(k));
  }
  return d;
}

CellPoly CellPoly::deriv_y() const {
  CellPoly d;
  d.degree = degree;
  d.c.resize(c.size());
  for (size_t k = 0; k < c.size(); ++k) {
    if (c[k].size() <= 1) {
      d.c[k] = {Interval(0.0)};
      continue;
    }
    d.c[k].resize(c[k].size() - 1);
    for (size_t l = 1; l < c[k].size(); ++l)
      d.c[k][l - 1] = c[k][l] * Interval(static_cast<double>(l));
  }
  return d;
}

// ---- DerivBoundGrid ---------------------------------------------------------------

DerivBoundGrid::DerivBoundGrid(Mesh1D mesh_x, Mesh1D mesh_y, int max_order)
    : mx_(std::move(mesh_x)), my_(std::move(mesh_y)), order_(max_order) {
  data_.assign(mx_.cells() * my_.cells() * (order_ + 1) * (order_ + 1), Interval(0.0));
}

size_t DerivBoundGrid::idx(size_t cx, size_t cy, int i, int j) const {
  if (cx >= mx_.cells() || cy >= my_.cells() || i < 0 || j < 0 || i > order_ || j > order_)
    throw IndexOutOfRange("DerivBoundGrid index");
  return ((cx * my_.cells() + cy) * (order_ + 1) + i) * (order_ + 1) + j;
}

Interval DerivBoundGrid::bound(size_t cx, size_t cy, int i, int j) const {
  return data_[idx(cx, cy, i, j)];
}

void DerivBoundGrid::set_bound(size_t cx, size_t cy, int i, int j, Interval v) {
  data_[idx(cx, cy, i, j)] = v;
}

std::vector<std::vector<Interval>> propagate_poly_bounds_1d(
    const std::vector<CellPoly>& cells, const Mesh1D& mesh) {
  if (cells.size() != mesh.cells()) throw DomainError("one polynomial per cell expected");
  std::vector<std::vector<Interval>> out(cells.size());
  for (size_t ci = 0; ci < cells.size(); ++ci) {
    int d = static_cast<int>(cells[ci].c.size()) - 1;
    Interval cell = mesh.cell(ci);
    Interval width = Interval(cell.hi()) - Interval(cell.lo());
    std::vector<Interval> a(d + 3, Interval(0.0));
    std::vector<CellPoly> derivs(d + 1);
    derivs[0] = cells[ci];
    for (int k = 1; k <= d; ++k) derivs[k] = derivs[k - 1].deriv_x();
    for (int k = d; k >= 0; --k) {
      Interval flo = derivs[k].eval(Interval(0.0), Interval(0.0));
      Interval fhi = derivs[k].eval(Interval(width.lo(), width.hi()), Interval(0.0));
      // endpoint evaluation in local coordinates: right endpoint is the width
      Interval b = max(abs(flo), abs(fhi));
      a[k] = Interval(0.0, (b + sqr(width) / Interval(8.0) * a[k + 2]).hi());
    }
    a.resize(d + 1);
    out[ci] = std::move(a);
  }
  return out;
}

// ---- B-spline basis ----------------------------------------------------------------

namespace bspline_detail {

namespace {

double knot_at(const Mesh1D& knots, int idx) {
  const auto& n = knots.nodes();
  int sz = static_cast<int>(n.size());
  if (idx >= 0 && idx < sz) return n[idx];
  if (idx < 0) return -n[-idx];  // mirror through y_0 = 0
  double h = n[sz - 1] - n[sz - 2];
  return n[sz - 1] + h * (idx - (sz - 1));
}

// add c * (s -+ x)^5 expanded in local coordinates x = a + t
void add_shifted_power(std::vector<Interval>& coef, const Interval& c, double s, double a,
                       bool plus_x) {
  // (s - a - t)^5 or (s + a + t)^5
  Interval base = plus_x ? Interval(s) + Interval(a) : Interval(s) - Interval(a);
  double sign = plus_x ? 1.0 : -1.0;
  // sum_m binom(5,m) base^{5-m} (sign t)^m
  for (int m = 0; m <= 5; ++m) {
    Interval term = Interval(static_cast<double>(binom(5, m))) * pow_int(base, 5 - m) * c;
    if (sign < 0 && (m % 2 == 1)) term = -term;
    coef[m] = coef[m] + term;
  }
}

}  // namespace

Interval normalization(const Mesh1D& knots, int i) {
  int m = static_cast<int>(knots.nodes().size());
  // constant y_1 near the left edge, local half-span in the bulk, small
  // constant near the right edge (kept uniform where extrapolation happens)
  if (i <= 9) return Interval(knot_at(knots, 1));
  if (i >= m - 9)
    return (Interval(knot_at(knots, m - 1)) - Interval(knot_at(knots, m - 2))) /
           Interval(100.0);
  return (Interval(knot_at(knots, i + 1)) - Interval(knot_at(knots, i - 1))) / Interval(2.0);
}

CellPoly basis_poly(const Mesh1D& knots, int i, size_t cell, bool odd_in_x) {
  double a = knots.nodes()[cell];
  double b = knots.nodes()[cell + 1];
  std::vector<Interval> coef(6, Interval(0.0));
  // d_j = prod_{l != j} (s_j - s_l); term j active on the cell iff s_j >= b
  double s[7];
  for (int j = 0; j <= 6; ++j) s[j] = knot_at(knots, i + j - 3);
  for (int j = 0; j <= 6; ++j) {
    if (!(s[j] >= b)) continue;
    Interval dj(1.0);
    for (int l = 0; l <= 6; ++l) {
      if (l == j) continue;
      dj = dj * (Interval(s[j]) - Interval(s[l]));
    }
    add_shifted_power(coef, Interval(6.0) / dj, s[j], a, /*plus_x=*/false);
  }
  if (odd_in_x && i <= 2) {
    // subtract B_i(-x): terms (s_j + x)^5 active iff s_j >= -a
    for (int j = 0; j <= 6; ++j) {
      if (!(s[j] >= -a)) continue;
      Interval dj(1.0);
      for (int l = 0; l <= 6; ++l) {
        if (l == j) continue;
        dj = dj * (Interval(s[j]) - Interval(s[l]));
      }
      add_shifted_power(coef, -Interval(6.0) / dj, s[j], a, /*plus_x=*/true);
    }
  }
  Interval norm = normalization(knots, i);
  CellPoly p;
  p.degree = 5;
  p.c.resize(6);
  for (int k = 0; k <= 5; ++k) p.c[k] = {coef[k] * norm};
  return p;
}

}  // namespace bspline_detail

namespace {

// extrapolation rows (7th-order binomial): B2_j = B_j + C2[j] B_{-1} + C1[j] B_{-2}
constexpr double kC1Row[7] = {28, -112, 210, -224, 140, -48, 7};
constexpr double kC2Row[7] = {7, -21, 35, -35, 21, -7, 1};

// 1D basis value as a local polynomial, with the left-edge extrapolation in y
CellPoly y_basis_poly(const Mesh1D& knots, int j, size_t cell) {
  CellPoly p = bspline_detail::basis_poly(knots, j, cell, false);
  if (j <= 6) {
    for (int ghost = 1; ghost <= 2; ++ghost) {
      CellPoly g = bspline_detail::basis_poly(knots, -ghost, cell, false);
      double w = (ghost == 1) ? kC2Row[j] : kC1Row[j];
      for (int k = 0; k <= 5; ++k) p.c[k][0] = p.c[k][0] + Interval(w) * g.c[k][0];
    }
  }
  return p;
}

double y_basis_value(const Mesh1D& knots, int j, double y) {
  // pointwise (double) evaluation for the fit solve
  const auto& nodes = knots.nodes();
  size_t cell = 0;
  if (y >= nodes.back())
    cell = knots.cells() - 1;
  else
    while (cell + 1 < nodes.size() - 1 && nodes[cell + 1] <= y) ++cell;
  CellPoly p = y_basis_poly(knots, j, cell);
  double t = y - nodes[cell];
  double r = 0;
  for (size_t k = p.c.size(); k-- > 0;) r = r * t + p.c[k][0].mid();
  return r;
}

double x_basis_value(const Mesh1D& knots, int i, double x, bool odd) {
  const auto& nodes = knots.nodes();
  size_t cell = 0;
  if (x >= nodes.back())
    cell = knots.cells() - 1;
  else
    while (cell + 1 < nodes.size() - 1 && nodes[cell + 1] <= x) ++cell;
  CellPoly p = bspline_detail::basis_poly(knots, i, cell, odd);
  double t = x - nodes[cell];
  double r = 0;
  for (size_t k = p.c.size(); k-- > 0;) r = r * t + p.c[k][0].mid();
  return r;
}

// dense LU solve (construction only)
std::vector<double> lu_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  size_t n = a.size();
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    if (a[col][col] == 0) throw DomainError("singular fit system");
    for (size_t r = col + 1; r < n; ++r) {
      double f = a[r][col] / a[col][col];
      if (f == 0) continue;
      for (size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (size_t i = n; i-- > 0;) {
    double s = b[i];
    for (size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

BSplineSurface::BSplineSurface(Mesh1D knots_x, Mesh1D knots_y,
                               std::vector<std::vector<double>> coeffs, bool odd_in_x)
    : kx_(std::move(knots_x)), ky_(std::move(knots_y)), coeffs_(std::move(coeffs)),
      odd_(odd_in_x) {
  if (coeffs_.empty() || coeffs_[0].empty()) throw DomainError("empty coefficient matrix");
  cell_cache_.assign(cells_x() * cells_y(), std::nullopt);
}

const CellPoly& BSplineSurface::cell_poly(size_t cx, size_t cy) const {
  if (cx >= cells_x() || cy >= cells_y()) throw IndexOutOfRange("cell index");
  auto& slot = cell_cache_[cx * cells_y() + cy];
  if (slot) return *slot;
  CellPoly p;
  p.degree = 5;
  p.c.assign(6, std::vector<Interval>(6, Interval(0.0)));
  size_t mx = basis_count_x(), my = basis_count_y();
  for (size_t i = 0; i < mx; ++i) {
    // x-basis i is supported on cells [i-3, i+2]; the odd modification of
    // i <= 2 additionally reaches the first few cells
    long ci = static_cast<long>(cx);
    bool in_range = (ci >= static_cast<long>(i) - 3 && ci <= static_cast<long>(i) + 2);
    bool mirrored = odd_ && i <= 2 && ci <= 3;
    if (!in_range && !mirrored) continue;
    CellPoly bx = bspline_detail::basis_poly(kx_, static_cast<int>(i), cx, odd_);
    bool bx_zero = true;
    for (int k = 0; k <= 5; ++k)
      if (bx.c[k][0].mag() != 0.0) bx_zero = false;
    if (bx_zero) continue;
    for (size_t j = 0; j < my; ++j) {
      long cj = static_cast<long>(cy);
      bool jn = (cj >= static_cast<long>(j) - 3 && cj <= static_cast<long>(j) + 2);
      bool jg = (j <= 6 && cj <= 3);  // ghost support via the extrapolation rows
      if (!jn && !jg) continue;
      if (coeffs_[i][j] == 0.0) continue;
      CellPoly by = y_basis_poly(ky_, static_cast<int>(j), cy);
      Interval aij(coeffs_[i][j]);
      for (int k = 0; k <= 5; ++k)
        for (int l = 0; l <= 5; ++l)
          p.c[k][l] = p.c[k][l] + aij * bx.c[k][0] * by.c[l][0];
    }
  }
  slot = std::move(p);
  return *slot;
}

Interval BSplineSurface::eval(const Interval& x, const Interval& y) const {
  return eval_deriv(x, y, 0, 0);
}

Interval BSplineSurface::eval_deriv(const Interval& x, const Interval& y, int i,
                                    int j) const {
  const auto& nx = kx_.nodes();
  const auto& ny = ky_.nodes();
  if (x.lo() < nx.front() || x.hi() > nx.back() || y.lo() < ny.front() || y.hi() > ny.back())
    throw DomainError("evaluation outside the knot range");
  size_t cx = 0, cy = 0;
  while (cx + 1 < kx_.cells() && nx[cx + 1] <= x.lo()) ++cx;
  while (cy + 1 < ky_.cells() && ny[cy + 1] <= y.lo()) ++cy;
  if (x.hi() > nx[cx + 1] || y.hi() > ny[cy + 1])
    throw DomainError("evaluation box must stay inside one cell");
  CellPoly p = cell_poly(cx, cy);
  for (int k = 0; k < i; ++k) p = p.deriv_x();
  for (int k = 0; k < j; ++k) p = p.deriv_y();
  return p.eval(x - Interval(nx[cx]), y - Interval(ny[cy]));
}

BSplineSurface BSplineSurface::fit(const Mesh1D& knots_x, const Mesh1D& knots_y,
                                   const std::function<double(double, double)>& f,
                                   bool odd_in_x) {
  size_t n = knots_x.nodes().size();
  size_t m = knots_y.nodes().size();
  size_t mx = n + 1;  // x-basis 1..n+1 (B_{1,0} vanishes identically)
  size_t my = m + 2;  // y-basis 0..m+1 with the left edge absorbed

  // collocation abscissae
  std::vector<double> xs;
  for (size_t i = 1; i < n; ++i) xs.push_back(knots_x.nodes()[i]);
  xs.push_back(0.5 * (knots_x.nodes()[n - 2] + knots_x.nodes()[n - 1]));
  xs.push_back(0.25 * knots_x.nodes()[n - 2] + 0.75 * knots_x.nodes()[n - 1]);
  std::vector<double> ys(knots_y.nodes());
  ys.push_back(0.5 * (knots_y.nodes()[m - 2] + knots_y.nodes()[m - 1]));
  ys.push_back(0.25 * knots_y.nodes()[m - 2] + 0.75 * knots_y.nodes()[m - 1]);
  if (xs.size() != mx || ys.size() != my) throw DomainError("collocation mismatch");

  std::vector<std::vector<double>> bx(mx, std::vector<double>(mx));
  for (size_t p = 0; p < mx; ++p)
    for (size_t i = 0; i < mx; ++i)
      bx[p][i] = x_basis_value(knots_x, static_cast<int>(i + 1), xs[p], odd_in_x);
  std::vector<std::vector<double>> by(my, std::vector<double>(my));
  for (size_t q = 0; q < my; ++q)
    for (size_t j = 0; j < my; ++j)
      by[q][j] = y_basis_value(knots_y, static_cast<int>(j), ys[q]);

  // right-hand sides: solve X C = F, then (Y C2^T = C^T) per column
  std::vector<std::vector<double>> fval(mx, std::vector<double>(my));
  for (size_t p = 0; p < mx; ++p)
    for (size_t q = 0; q < my; ++q) fval[p][q] = f(xs[p], ys[q]);

  // first solve in x for every y-collocation column
  std::vector<std::vector<double>> cx(mx, std::vector<double>(my));
  for (size_t q = 0; q < my; ++q) {
    std::vector<double> rhs(mx);
    for (size_t p = 0; p < mx; ++p) rhs[p] = fval[p][q];
    std::vector<double> col = lu_solve(bx, rhs);
    for (size_t i = 0; i < mx; ++i) cx[i][q] = col[i];
  }
  // then in y for every basis row
  std::vector<std::vector<double>> coeff(mx + 1, std::vector<double>(my, 0.0));
  for (size_t i = 0; i < mx; ++i) {
    std::vector<double> sol = lu_solve(by, cx[i]);
    for (size_t j = 0; j < my; ++j) coeff[i + 1][j] = sol[j];  // shift: row 0 is B_{1,0} = 0
  }
  return BSplineSurface(knots_x, knots_y, std::move(coeff), odd_in_x);
}

DerivBoundGrid BSplineSurface::propagate_bounds(int max_order) const {
  DerivBoundGrid g(kx_, ky_, max_order);
  const auto& nx = kx_.nodes();
  const auto& ny = ky_.nodes();
  for (size_t cx = 0; cx < cells_x(); ++cx) {
    Interval h1 = Interval(nx[cx + 1]) - Interval(nx[cx]);
    for (size_t cy = 0; cy < cells_y(); ++cy) {
      Interval h2 = Interval(ny[cy + 1]) - Interval(ny[cy]);
      const CellPoly& p = cell_poly(cx, cy);
      // derivative polynomials up to degree 5 in each variable
      CellPoly dx[6][6];
      dx[0][0] = p;
      for (int k = 1; k <= 5; ++k) dx[k][0] = dx[k - 1][0].deriv_x();
      for (int k = 0; k <= 5; ++k)
        for (int l = 1; l <= 5; ++l) dx[k][l] = dx[k][l - 1].deriv_y();
      // corner maxima B_{kl}
      Interval corners_x[2] = {Interval(0.0), Interval(h1.lo(), h1.hi())};
      Interval corners_y[2] = {Interval(0.0), Interval(h2.lo(), h2.hi())};
      Interval a[8][8];
      for (int k = 7; k >= 0; --k)
        for (int l = 7; l >= 0; --l) {
          if (k > 5 || l > 5) {
            a[k][l] = Interval(0.0);
            continue;
          }
          Interval b(0.0);
          for (auto& cxv : corners_x)
            for (auto& cyv : corners_y) b = max(b, abs(dx[k][l].eval(cxv, cyv)));
          Interval v = b + (sqr(h1) * a[k + 2][l] + sqr(h2) * a[k][l + 2]) / Interval(8.0);
          a[k][l] = Interval(0.0, v.hi());
        }
      for (int k = 0; k <= max_order; ++k)
        for (int l = 0; l <= max_order; ++l)
          g.set_bound(cx, cy, k, l, k <= 5 && l <= 5 ? a[k][l] : Interval(0.0));
    }
  }
  return g;
}

DerivBoundGrid propagate_poly_bounds_weighted(
    const BSplineSurface& p, int max_order,
    const std::function<Interval(const Interval&, int)>& rho_deriv_bound) {
  DerivBoundGrid base = p.propagate_bounds(std::min(5, max_order + 2));
  DerivBoundGrid out(p.knots_x(), p.knots_y(), max_order);
  for (size_t cx = 0; cx < p.knots_x().cells(); ++cx)
    for (size_t cy = 0; cy < p.knots_y().cells(); ++cy) {
      Interval ycell = p.knots_y().cell(cy);
      for (int i = 0; i <= max_order; ++i)
        for (int j = 0; j <= max_order; ++j) {
          Interval s(0.0);
          for (int l = 0; l <= j; ++l) {
            Interval pb = (i <= base.max_order() && l <= base.max_order())
                              ? base.bound(cx, cy, i, l)
                              : Interval(0.0);
            s = s + Interval(static_cast<double>(binom(j, l))) * pb *
                        abs(rho_deriv_bound(ycell, j - l));
          }
          out.set_bound(cx, cy, i, j, Interval(0.0, s.hi()));
        }
    }
  return out;
}

// ---- Lipschitz / Holder -----------------------------------------------------------

Interval lipschitz_average(const std::vector<Interval>& cell_bounds, const Mesh1D& mesh,
                           size_t k, size_t l) {
  if (k > l) throw DomainError("expects cell k <= cell l");
  if (l >= mesh.cells() || cell_bounds.size() < mesh.cells())
    throw IndexOutOfRange("cell index outside the mesh");
  auto c = [&](size_t i) { return abs(cell_bounds[i]); };
  if (l - k <= 1) return Interval(0.0, max(c(k), c(l)).hi());
  const auto& y = mesh.nodes();
  Interval span = Interval(y[l]) - Interval(y[k + 1]);
  Interval acc(0.0);
  for (size_t m = k + 1; m <= l - 1; ++m)
    acc = acc + c(m) * (Interval(y[m + 1]) - Interval(y[m]));
  Interval mkl = acc / span;
  Interval left = max(c(k) - mkl, Interval(0.0)) *
                  ((Interval(y[k + 1]) - Interval(y[k])) / (Interval(y[l]) - Interval(y[k])));
  Interval right = max(c(l) - mkl, Interval(0.0)) *
                   ((Interval(y[l + 1]) - Interval(y[l])) /
                    (Interval(y[l + 1]) - Interval(y[k + 1])));
  Interval v = left + right + mkl;
  return Interval(0.0, v.hi());
}

Interval holder_from_grid(const HolderCellPair& pair, const HolderNorms& norms,
                          HolderDirection dir) {
  if (pair.z_cell.lo() < pair.x_cell.lo() || pair.z_cell.hi() < pair.x_cell.hi())
    throw SharedCoordinateMismatch("cells must be ordered along the direction");
  const double gap_min = std::max(0.0, pair.z_cell.lo() - pair.x_cell.hi());
  const double gap_max = pair.z_cell.hi() - pair.x_cell.lo();
  Interval best = Interval::entire();
  bool any = false;
  auto consider = [&](const Interval& v) {
    Interval b(0.0, v.hi());
    if (!any || b.hi() < best.hi()) best = b;
    any = true;
  };

  // (i) derivative-average route: L sqrt(gap_max)
  if (pair.lip_bound.hi() < std::numeric_limits<double>::infinity())
    consider(abs(pair.lip_bound) * sqrt(Interval(gap_max)));

  // (ii) weighted routes
  if (dir == HolderDirection::X) {
    Interval sx_lo = sqrt(Interval(pair.x_cell.lo()));
    Interval sz_hi = sqrt(Interval(pair.z_cell.hi()));
    Interval t_max = sqrt(Interval(gap_max)) / (sx_lo + sz_hi);
    if (norms.fx_sqrt_x) consider(Interval(2.0) * abs(*norms.fx_sqrt_x) * t_max);
    if (norms.f_over_sqrt_x1 && gap_min > 0) {
      Interval t_min = sqrt(Interval(gap_min)) /
                       (sqrt(Interval(pair.x_cell.hi())) + sqrt(Interval(pair.z_cell.lo())));
      if (t_min.lo() > 0) consider(abs(*norms.f_over_sqrt_x1) / t_min);
    }
  } else {
    // shared coordinate is x1; |x| >= x1 >= shared.lo
    if (norms.fy_sqrt_r && pair.shared.lo() > 0)
      consider(abs(*norms.fy_sqrt_r) * sqrt(Interval(gap_max)) /
               sqrt(Interval(pair.shared.lo())));
    if (norms.f_over_sqrt_x1 && gap_min > 0)
      consider(abs(*norms.f_over_sqrt_x1) * Interval(2.0) * sqrt(Interval(pair.shared.hi())) /
               sqrt(Interval(gap_min)));
  }
  if (norms.f_inf && gap_min > 0)
    consider(Interval(2.0) * abs(*norms.f_inf) / sqrt(Interval(gap_min)));

  // (iii) grid-corner route with the interpolation gaps
  {
    Interval m(0.0);
    const double xe[2] = {pair.x_cell.lo(), pair.x_cell.hi()};
    const double ze[2] = {pair.z_cell.lo(), pair.z_cell.hi()};
    bool degenerate_only = true;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        if (!(ze[b] > xe[a])) continue;
        degenerate_only = false;
        for (int gcorner = 0; gcorner < 2; ++gcorner) {
          Interval num = abs(pair.fx_corners[a * 2 + gcorner] -
                             pair.fz_corners[b * 2 + gcorner]);
          Interval den = sqrt(Interval(ze[b]) - Interval(xe[a]));
          m = max(m, num / den);
        }
      }
    Interval hx = Interval(pair.x_cell.hi()) - Interval(pair.x_cell.lo());
    Interval hz = Interval(pair.z_cell.hi()) - Interval(pair.z_cell.lo());
    Interval hy = Interval(pair.shared.hi()) - Interval(pair.shared.lo());
    Interval gaps = (sqr(hx) * abs(pair.fxx_x) + sqr(hz) * abs(pair.fxx_z) +
                     sqr(hy) * (abs(pair.fyy_x) + abs(pair.fyy_z))) /
                    Interval(8.0);
    if (!degenerate_only) {
      if (gaps.hi() == 0.0)
        consider(m);
      else if (gap_min > 0)
        consider(m + gaps / sqrt(Interval(gap_min)));
    }
  }

  if (!any) throw MissingOrder("no applicable Holder route for this cell pair");
  return best;
}

}  // namespace certibound
