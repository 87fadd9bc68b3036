#include "certibound/interp.hpp"

#include <cmath>

namespace certibound {

namespace {

void check_equispaced(const std::vector<double>& nodes, size_t expect) {
  if (nodes.size() != expect) throw NonEquispaced("wrong node count for the scheme");
  double h = nodes[1] - nodes[0];
  for (size_t i = 1; i + 1 < nodes.size(); ++i) {
    double hi = nodes[i + 1] - nodes[i];
    if (std::fabs(hi - h) > 1e-12 * std::max(1.0, std::fabs(nodes.back() - nodes.front())))
      throw NonEquispaced("nodes are not equispaced");
  }
  if (!(h > 0)) throw NonEquispaced("nodes must increase");
}

Interval inv_nine_sqrt3() { return recip(Interval(9.0) * sqrt(Interval(3.0))); }

}  // namespace

CertifiedBound newton_bound_1d(const SampleGrid1D& g, const Interval& d4) {
  check_equispaced(g.nodes, 4);
  if (g.values.size() != 4) throw NonEquispaced("four samples expected");
  Interval f[4];
  for (int i = 0; i < 4; ++i) f[i] = Interval(g.values[i]);
  Interval d20 = f[2] - Interval(2.0) * f[1] + f[0];
  Interval d21 = f[3] - Interval(2.0) * f[2] + f[1];
  Interval d3 = f[3] - Interval(3.0) * f[2] + Interval(3.0) * f[1] - f[0];
  const Interval c1 = Interval(1.0) / Interval(8.0);
  Interval left = max(max(abs(f[0]), abs(f[1])), abs(f[2])) + c1 * abs(d20);
  Interval right = max(max(abs(f[1]), abs(f[2])), abs(f[3])) + c1 * abs(d21);
  Interval main = max(left, right) + inv_nine_sqrt3() * abs(d3);
  Interval span = Interval(g.nodes[3]) - Interval(g.nodes[0]);
  Interval err = pow_int(span, 4) / Interval(81.0) / Interval(24.0) * abs(d4);
  return {main, Interval(0.0, err.hi()), "newton4"};
}

CertifiedBound quad_interp_bound(const SampleGrid1D& g, const Interval& d3) {
  check_equispaced(g.nodes, 3);
  if (g.values.size() != 3) throw NonEquispaced("three samples expected");
  Interval f0(g.values[0]), f1(g.values[1]), f2(g.values[2]);
  Interval d2 = f0 - Interval(2.0) * f1 + f2;
  Interval main = max(max(abs(f0), abs(f1)), abs(f2)) + abs(d2) / Interval(8.0);
  Interval h = Interval(g.nodes[1]) - Interval(g.nodes[0]);
  Interval err = pow_int(h, 3) * inv_nine_sqrt3() * abs(d3);
  return {main, Interval(0.0, err.hi()), "quad3"};
}

CertifiedBound newton2d_bound(const SampleGrid2D& g, const Interval& d4x, const Interval& d4y) {
  check_equispaced(g.xs, 4);
  check_equispaced(g.ys, 4);
  if (g.values.size() != 4 || g.values[0].size() != 4)
    throw NonEquispaced("4x4 sample grid expected");

  // 1D Newton bound of a y-sampled column with the matching d^4_y budget
  auto column = [&](const std::array<Interval, 4>& v, const Interval& d4col) {
    // reuse the scalar assembly on interval samples
    Interval d20 = v[2] - Interval(2.0) * v[1] + v[0];
    Interval d21 = v[3] - Interval(2.0) * v[2] + v[1];
    Interval d3 = v[3] - Interval(3.0) * v[2] + Interval(3.0) * v[1] - v[0];
    const Interval c1 = Interval(1.0) / Interval(8.0);
    Interval left = max(max(abs(v[0]), abs(v[1])), abs(v[2])) + c1 * abs(d20);
    Interval right = max(max(abs(v[1]), abs(v[2])), abs(v[3])) + c1 * abs(d21);
    Interval main = max(left, right) + inv_nine_sqrt3() * abs(d3);
    Interval span = Interval(g.ys[3]) - Interval(g.ys[0]);
    Interval err = pow_int(span, 4) / Interval(81.0) / Interval(24.0) * abs(d4col);
    return std::pair<Interval, Interval>(main, err);
  };

  auto row_iv = [&](int i) {
    std::array<Interval, 4> v;
    for (int j = 0; j < 4; ++j) v[j] = Interval(g.values[i][j]);
    return v;
  };
  std::array<Interval, 4> a0 = row_iv(0), a1 = row_iv(1), a2 = row_iv(2), a3 = row_iv(3);
  auto comb = [](const std::array<Interval, 4>& p, const std::array<Interval, 4>& q,
                 const std::array<Interval, 4>& r, double cp, double cq, double cr) {
    std::array<Interval, 4> out;
    for (int j = 0; j < 4; ++j)
      out[j] = Interval(cp) * p[j] + Interval(cq) * q[j] + Interval(cr) * r[j];
    return out;
  };
  // D_{2,0} f(y), D_{2,1} f(y), D_3 f(y) as sampled functions of y
  std::array<Interval, 4> b0 = comb(a2, a1, a0, 1.0, -2.0, 1.0);
  std::array<Interval, 4> b1 = comb(a3, a2, a1, 1.0, -2.0, 1.0);
  std::array<Interval, 4> d3f;
  for (int j = 0; j < 4; ++j) d3f[j] = b1[j] - b0[j];

  auto [ma0, ea0] = column(a0, d4y);
  auto [ma1, ea1] = column(a1, d4y);
  auto [ma2, ea2] = column(a2, d4y);
  auto [ma3, ea3] = column(a3, d4y);
  auto [mb0, eb0] = column(b0, Interval(4.0) * d4y);
  auto [mb1, eb1] = column(b1, Interval(4.0) * d4y);
  auto [mc, ec] = column(d3f, Interval(8.0) * d4y);

  const Interval c1 = Interval(1.0) / Interval(8.0);
  Interval left_m = max(max(ma0, ma1), ma2) + c1 * mb0;
  Interval right_m = max(max(ma1, ma2), ma3) + c1 * mb1;
  Interval main = max(left_m, right_m) + inv_nine_sqrt3() * mc;

  Interval left_e = max(max(ea0, ea1), ea2) + c1 * eb0;
  Interval right_e = max(max(ea1, ea2), ea3) + c1 * eb1;
  Interval span_x = Interval(g.xs[3]) - Interval(g.xs[0]);
  Interval err = max(left_e, right_e) + inv_nine_sqrt3() * ec +
                 pow_int(span_x, 4) / Interval(81.0) / Interval(24.0) * abs(d4x);
  return {main, Interval(0.0, err.hi()), "newton4x4"};
}

// ---- Lagrange --------------------------------------------------------------------

namespace {

// |p(t)| bound on a subinterval for a polynomial given as interval
// coefficients, via 4-point Newton assembly (exact for degree <= 3)
Interval cubic_sup_on(const std::vector<Interval>& coef, double a, double b) {
  auto eval = [&](double t) {
    Interval s(0.0);
    Interval ti(t);
    for (size_t k = coef.size(); k-- > 0;) s = s * ti + coef[k];
    return s;
  };
  double h = (b - a) / 3.0;
  Interval f0 = eval(a), f1 = eval(a + h), f2 = eval(a + 2 * h), f3 = eval(b);
  Interval d20 = f2 - Interval(2.0) * f1 + f0;
  Interval d21 = f3 - Interval(2.0) * f2 + f1;
  Interval d3 = f3 - Interval(3.0) * f2 + Interval(3.0) * f1 - f0;
  const Interval c1 = Interval(1.0) / Interval(8.0);
  Interval left = max(max(abs(f0), abs(f1)), abs(f2)) + c1 * abs(d20);
  Interval right = max(max(abs(f1), abs(f2)), abs(f3)) + c1 * abs(d21);
  return max(left, right) + inv_nine_sqrt3() * abs(d3);
}

// Lagrange cardinal polynomial coefficients for the node set, as intervals
std::vector<std::vector<Interval>> cardinal_polys(const std::vector<double>& nodes) {
  size_t k = nodes.size();
  std::vector<std::vector<Interval>> out(k);
  for (size_t i = 0; i < k; ++i) {
    std::vector<Interval> c{Interval(1.0)};
    Interval den(1.0);
    for (size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      // multiply by (t - nodes[j])
      std::vector<Interval> nc(c.size() + 1, Interval(0.0));
      for (size_t m = 0; m < c.size(); ++m) {
        nc[m + 1] = nc[m + 1] + c[m];
        nc[m] = nc[m] - c[m] * Interval(nodes[j]);
      }
      c = std::move(nc);
      den = den * (Interval(nodes[i]) - Interval(nodes[j]));
    }
    for (auto& cc : c) cc = cc / den;
    out[i] = std::move(c);
  }
  return out;
}

namespace {

// certified-lower evaluation of sum |p_i(t)| at a point
double abs_sum_lo(const std::vector<std::vector<Interval>>& polys, double t) {
  Interval at(0.0);
  for (const auto& p : polys) {
    Interval v(0.0);
    for (size_t k = p.size(); k-- > 0;) v = v * Interval(t) + p[k];
    at = at + abs(v);
  }
  return at.lo();
}

double abs_sum_mid(const std::vector<std::vector<Interval>>& polys, double t) {
  double s = 0.0;
  for (const auto& p : polys) {
    double v = 0.0;
    for (size_t k = p.size(); k-- > 0;) v = v * t + p[k].mid();
    s += std::fabs(v);
  }
  return s;
}

}  // namespace

// max_t sum_i |p_i(t)|: upper by piecewise Newton bounding, lower by sampling
// plus a local ternary polish so the enclosure pins the true maximum
Interval lebesgue_constant(const std::vector<double>& nodes, double t_lo, double t_hi,
                           int pieces) {
  auto polys = cardinal_polys(nodes);
  double best_hi = 0.0;
  double best_lo = 0.0;
  double best_arg = t_lo;
  for (int s = 0; s < pieces; ++s) {
    double a = t_lo + (t_hi - t_lo) * s / pieces;
    double b = t_lo + (t_hi - t_lo) * (s + 1) / pieces;
    Interval sum(0.0);
    for (const auto& p : polys) sum = sum + cubic_sup_on(p, a, b);
    best_hi = std::max(best_hi, sum.hi());
    double lo = abs_sum_lo(polys, a);
    if (lo > best_lo) {
      best_lo = lo;
      best_arg = a;
    }
  }
  double w = (t_hi - t_lo) / pieces;
  double a = std::max(t_lo, best_arg - w), b = std::min(t_hi, best_arg + w);
  for (int it = 0; it < 200; ++it) {
    double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (abs_sum_mid(polys, m1) < abs_sum_mid(polys, m2))
      a = m1;
    else
      b = m2;
  }
  best_lo = std::max(best_lo, abs_sum_lo(polys, 0.5 * (a + b)));
  return Interval(best_lo, best_hi);
}

LagrangeConstants compute_lagrange_constants() {
  LagrangeConstants c;
  c.c1_4 = lebesgue_constant({0.0, 1.0, 2.0, 3.0}, 0.0, 3.0, 1536);
  c.c2_3 = lebesgue_constant({1.0 / 32.0, 0.5, 31.0 / 32.0}, 0.0, 1.0, 1024);
  // C3: max |(t-1/32)(t-1/2)(t-31/32)| on [0,1]
  std::vector<Interval> p{Interval(1.0)};
  for (double root : {1.0 / 32.0, 0.5, 31.0 / 32.0}) {
    std::vector<Interval> nc(p.size() + 1, Interval(0.0));
    for (size_t m = 0; m < p.size(); ++m) {
      nc[m + 1] = nc[m + 1] + p[m];
      nc[m] = nc[m] - p[m] * Interval(root);
    }
    p = std::move(nc);
  }
  double hi = 0.0, lo = 0.0, arg = 0.0;
  const int pieces = 2048;
  for (int s = 0; s < pieces; ++s) {
    double a = 1.0 * s / pieces, b = 1.0 * (s + 1) / pieces;
    hi = std::max(hi, cubic_sup_on(p, a, b).hi());
    double v = abs_sum_lo({p}, a);
    if (v > lo) {
      lo = v;
      arg = a;
    }
  }
  double a = std::max(0.0, arg - 1.0 / pieces), b = std::min(1.0, arg + 1.0 / pieces);
  for (int it = 0; it < 200; ++it) {
    double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (abs_sum_mid({p}, m1) < abs_sum_mid({p}, m2))
      a = m1;
    else
      b = m2;
  }
  lo = std::max(lo, abs_sum_lo({p}, 0.5 * (a + b)));
  c.c3_3 = Interval(lo, hi);
  return c;
}

void check_lagrange_nodes(const std::vector<double>& nodes, int order) {
  if (static_cast<int>(nodes.size()) != order)
    throw NodePositionMismatch("node count must match the scheme order");
  double a = nodes.front(), h = nodes.back() - nodes.front();
  std::vector<double> want;
  if (order == 4)
    want = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
  else if (order == 3) {
    // positions measured on the full cell: nodes sit at 1/32, 1/2, 31/32
    double span = h / (30.0 / 32.0);
    double lo = a - span / 32.0;
    want = {1.0 / 32.0, 0.5, 31.0 / 32.0};
    for (int i = 0; i < 3; ++i) {
      double expect = lo + want[i] * span;
      if (std::fabs(nodes[i] - expect) > 1e-9 * std::max(1.0, span))
        throw NodePositionMismatch("3-point scheme expects the 1/32, 1/2, 31/32 layout");
    }
    return;
  } else {
    throw NodePositionMismatch("supported orders are 3 and 4");
  }
  for (int i = 0; i < order; ++i) {
    double expect = a + want[i] * h;
    if (std::fabs(nodes[i] - expect) > 1e-9 * std::max(1.0, std::fabs(h)))
      throw NodePositionMismatch("4-point scheme expects equispaced nodes");
  }
}

// the mean/variation assembly of the interpolant part, one summation order
Interval lagrange_main_once(const std::vector<std::vector<Interval>>& a, const Interval& c1) {
  size_t ni = a.size(), nj = a[0].size();
  std::vector<Interval> bar(nj);
  Interval vmax, vmin;
  Interval var_inner(0.0);
  for (size_t j = 0; j < nj; ++j) {
    Interval mx = a[0][j], mn = a[0][j];
    for (size_t i = 1; i < ni; ++i) {
      mx = max(mx, a[i][j]);
      mn = min(mn, a[i][j]);
    }
    bar[j] = (mx + mn) / Interval(2.0);
    Interval spread = mx - mn;
    var_inner = max(var_inner, spread);
  }
  Interval bmax = bar[0], bmin = bar[0];
  for (size_t j = 1; j < nj; ++j) {
    bmax = max(bmax, bar[j]);
    bmin = min(bmin, bar[j]);
  }
  return abs(bmax + bmin) / Interval(2.0) + c1 / Interval(2.0) * (bmax - bmin) +
         sqr(c1) / Interval(2.0) * var_inner;
}

}  // namespace

const LagrangeConstants& lagrange_constants() {
  static LagrangeConstants c = compute_lagrange_constants();
  return c;
}

CertifiedBound lagrange_bound(const SampleGrid2D& g, int order, const Interval& dkx,
                              const Interval& dky) {
  check_lagrange_nodes(g.xs, order);
  check_lagrange_nodes(g.ys, order);
  const auto& lc = lagrange_constants();
  Interval c1 = (order == 4) ? lc.c1_4 : lc.c2_3;

  size_t n = g.xs.size();
  std::vector<std::vector<Interval>> a(n, std::vector<Interval>(n));
  std::vector<std::vector<Interval>> at(n, std::vector<Interval>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      a[i][j] = Interval(g.values[i][j]);
      at[j][i] = a[i][j];
    }
  Interval main = min(lagrange_main_once(a, c1), lagrange_main_once(at, c1));

  Interval h1 = Interval(g.xs.back()) - Interval(g.xs.front());
  Interval h2 = Interval(g.ys.back()) - Interval(g.ys.front());
  Interval err;
  if (order == 3) {
    // node span is 30/32 of the cell; errors are stated on the full cell
    Interval cell1 = h1 / (Interval(30.0) / Interval(32.0));
    Interval cell2 = h2 / (Interval(30.0) / Interval(32.0));
    Interval e_xfirst = lc.c3_3 / Interval(6.0) *
                        (lc.c2_3 * abs(dky) * pow_int(cell2, 3) + abs(dkx) * pow_int(cell1, 3));
    Interval e_yfirst = lc.c3_3 / Interval(6.0) *
                        (lc.c2_3 * abs(dkx) * pow_int(cell1, 3) + abs(dky) * pow_int(cell2, 3));
    err = min(e_xfirst, e_yfirst);
  } else {
    Interval q1 = pow_int(h1 / Interval(3.0), 4);
    Interval q2 = pow_int(h2 / Interval(3.0), 4);
    Interval e_xfirst = (lc.c1_4 * abs(dky) * q2 + abs(dkx) * q1) / Interval(24.0);
    Interval e_yfirst = (lc.c1_4 * abs(dkx) * q1 + abs(dky) * q2) / Interval(24.0);
    err = min(e_xfirst, e_yfirst);
  }
  return {main, Interval(0.0, err.hi()), order == 4 ? "lagrange4" : "lagrange3"};
}

CertifiedBound lagrange_bound_1d(const SampleGrid1D& g, int order, const Interval& dk) {
  check_lagrange_nodes(g.nodes, order);
  const auto& lc = lagrange_constants();
  Interval c1 = (order == 4) ? lc.c1_4 : lc.c2_3;
  Interval mx(g.values[0]), mn(g.values[0]);
  for (double v : g.values) {
    mx = max(mx, Interval(v));
    mn = min(mn, Interval(v));
  }
  Interval main = abs(mx + mn) / Interval(2.0) + c1 / Interval(2.0) * (mx - mn);
  Interval h = Interval(g.nodes.back()) - Interval(g.nodes.front());
  Interval err;
  if (order == 3) {
    Interval cell = h / (Interval(30.0) / Interval(32.0));
    err = lc.c3_3 / Interval(6.0) * abs(dk) * pow_int(cell, 3);
  } else {
    err = pow_int(h / Interval(3.0), 4) / Interval(24.0) * abs(dk);
  }
  return {main, Interval(0.0, err.hi()), order == 4 ? "lagrange4-1d" : "lagrange3-1d"};
}

// ---- Hermite ----------------------------------------------------------------------

namespace {

Interval herm_m1(const Interval& l0, const Interval& l1, const Interval& m0,
                 const Interval& m1) {
  Interval dl = l1 - l0;
  return max(max(abs(m1 - m0), abs(m1 - dl)), abs(m0 - dl));
}

Interval herm4_sup(const Interval& l0, const Interval& l1, const Interval& m0,
                   const Interval& m1) {
  return max(abs(l0), abs(l1)) +
         Interval(4.0) / Interval(27.0) * herm_m1(l0, l1, m0, m1);
}

Interval herm4_at_x2(const Interval& l0, const Interval& l1, const Interval& m0,
                     const Interval& m1) {
  return l0 + Interval(2.0) * m0 + Interval(4.0) * (m1 - (l1 - l0));
}

// case-split bound for the derivative interpolant d_t G4
Interval herm_deriv_casemax(const Interval& l0, const Interval& l1, const Interval& m0,
                            const Interval& m1) {
  Interval dl = l1 - l0;
  const Interval third = Interval(1.0) / Interval(3.0);
  Interval case0 = max(abs(dl), abs(m0)) + third * abs(dl - m1);
  Interval case1 = max(abs(dl), abs(m1)) + third * abs(dl - m0);
  Interval case_mid = abs(dl) + Interval(0.5) * max(abs(dl - m0), abs(dl - m1));
  return max(max(case0, case1), case_mid);
}

Interval inv_12_sqrt3() { return recip(Interval(12.0) * sqrt(Interval(3.0))); }

}  // namespace

CertifiedBound hermite_bound_1d(const SampleGrid1D& g, HermiteScheme scheme,
                                const Interval& d_bound) {
  bool needs_x2 = (scheme == HermiteScheme::H5 || scheme == HermiteScheme::H5Deriv);
  check_equispaced(g.nodes, needs_x2 ? 3 : 2);
  if (g.derivs.size() < 2) throw MissingOrder("Hermite needs derivative samples at x0, x1");
  Interval h = Interval(g.nodes[1]) - Interval(g.nodes[0]);
  Interval l0(g.values[0]), l1(g.values[1]);
  Interval m0 = h * Interval(g.derivs[0]), m1 = h * Interval(g.derivs[1]);

  switch (scheme) {
    case HermiteScheme::H4: {
      Interval main = herm4_sup(l0, l1, m0, m1);
      Interval err = pow_int(h, 4) / Interval(384.0) * abs(d_bound);
      return {main, Interval(0.0, err.hi()), "hermite-h4"};
    }
    case HermiteScheme::H5: {
      Interval extra = Interval(g.values[2]) - herm4_at_x2(l0, l1, m0, m1);
      Interval main = herm4_sup(l0, l1, m0, m1) + abs(extra) / Interval(64.0);
      Interval err = pow_int(h, 5) / Interval(1200.0) * abs(d_bound);
      return {main, Interval(0.0, err.hi()), "hermite-h5"};
    }
    case HermiteScheme::H4Deriv: {
      Interval main = herm_deriv_casemax(l0, l1, m0, m1) / h;
      Interval err = Interval(2.0) * pow_int(h, 3) / Interval(81.0) * abs(d_bound);
      return {main, Interval(0.0, err.hi()), "hermite-h4-deriv"};
    }
    case HermiteScheme::H5Deriv: {
      Interval extra = Interval(g.values[2]) - herm4_at_x2(l0, l1, m0, m1);
      Interval main =
          (herm_deriv_casemax(l0, l1, m0, m1) + inv_12_sqrt3() * abs(extra)) / h;
      Interval err = pow_int(h, 4) / Interval(96.0) * abs(d_bound);
      return {main, Interval(0.0, err.hi()), "hermite-h5-deriv"};
    }
  }
  throw Error("unreachable");
}

CertifiedBound hermite_bound_2d(const Hermite2DData& g, Hermite2DScheme scheme,
                                const DerivTable& d) {
  double h1d = g.xs[1] - g.xs[0], h2d = g.ys[1] - g.ys[0];
  if (std::fabs((g.xs[2] - g.xs[1]) - h1d) > 1e-12 * std::max(1.0, std::fabs(h1d)) ||
      std::fabs((g.ys[2] - g.ys[1]) - h2d) > 1e-12 * std::max(1.0, std::fabs(h2d)))
    throw NonEquispaced("tensor Hermite grid must be equispaced");
  Interval h1 = Interval(g.xs[1]) - Interval(g.xs[0]);
  Interval h2 = Interval(g.ys[1]) - Interval(g.ys[0]);

  auto f = [&](int i, int j) { return Interval(g.f[i][j]); };
  auto mx = [&](int i, int j) { return h1 * Interval(g.fx[i][j]); };  // h1 d_x f
  auto my = [&](int i, int j) { return h2 * Interval(g.fy[i][j]); };  // h2 d_y f

  // M_i(y_j) = h1 fx(x_i, y_j) - (f(x1,y_j) - f(x0,y_j))
  auto m_of = [&](int i, int j) { return mx(i, j) - (f(1, j) - f(0, j)); };
  // f(x2, y_j) - H4(x2, y_j), the computable extrapolation defect
  auto defect = [&](int j) {
    return f(2, j) - herm4_at_x2(f(0, j), f(1, j), mx(0, j), mx(1, j));
  };

  const Interval c427 = Interval(4.0) / Interval(27.0);

  switch (scheme) {
    case Hermite2DScheme::P5: {
      // A_i^(5): 5th-order Hermite of f(x_i, .) in y, bounded on [y0, y1]
      Interval bound_a(0.0);
      for (int i = 0; i < 2; ++i) {
        Interval extra = f(i, 2) - herm4_at_x2(f(i, 0), f(i, 1), my(i, 0), my(i, 1));
        Interval bi = herm4_sup(f(i, 0), f(i, 1), my(i, 0), my(i, 1)) +
                      abs(extra) / Interval(64.0);
        bound_a = max(bound_a, bi);
      }
      // Q_i: quadratic interpolants of M_i in y, bounded on [y0, y1]
      auto q_bound = [&](const Interval& v0, const Interval& v1, const Interval& v2) {
        return max(max(abs(v0), abs(v1)), abs(v2)) +
               abs(v0 - Interval(2.0) * v1 + v2) / Interval(8.0);
      };
      Interval q0 = q_bound(m_of(0, 0), m_of(0, 1), m_of(0, 2));
      Interval q1 = q_bound(m_of(1, 0), m_of(1, 1), m_of(1, 2));
      Interval qd = q_bound(m_of(1, 0) - m_of(0, 0), m_of(1, 1) - m_of(0, 1),
                            m_of(1, 2) - m_of(0, 2));
      Interval main = bound_a + c427 * max(max(q0, q1), qd);
      Interval err = max(abs(defect(0)), abs(defect(1))) / Interval(64.0) +
                     h2 * pow_int(h1, 4) / Interval(768.0) * abs(d.at(4, 1)) +
                     sqr(h1) * pow_int(h2, 3) * recip(Interval(72.0) * sqrt(Interval(3.0))) *
                         abs(d.at(2, 3)) +
                     (pow_int(h1, 5) * abs(d.at(5, 0)) + pow_int(h2, 5) * abs(d.at(0, 5))) /
                         Interval(1200.0);
      return {main, Interval(0.0, err.hi()), "hermite2d-p5"};
    }
    case Hermite2DScheme::P4: {
      Interval bound_a(0.0);
      for (int i = 0; i < 2; ++i)
        bound_a = max(bound_a, herm4_sup(f(i, 0), f(i, 1), my(i, 0), my(i, 1)));
      // linear interpolants of M_i: endpoint maxima
      Interval l0 = max(abs(m_of(0, 0)), abs(m_of(0, 1)));
      Interval l1 = max(abs(m_of(1, 0)), abs(m_of(1, 1)));
      Interval ld = max(abs(m_of(1, 0) - m_of(0, 0)), abs(m_of(1, 1) - m_of(0, 1)));
      Interval main = bound_a + c427 * max(max(l0, l1), ld);
      Interval err = (pow_int(h1, 4) * abs(d.at(4, 0)) + pow_int(h2, 4) * abs(d.at(0, 4))) /
                         Interval(384.0) +
                     sqr(h1) * sqr(h2) / Interval(64.0) * abs(d.at(2, 2));
      return {main, Interval(0.0, err.hi()), "hermite2d-p4"};
    }
    case Hermite2DScheme::S4Deriv:
    case Hermite2DScheme::S4TildeDeriv: {
      // S_lin: the 1D derivative case-max at each y endpoint
      Interval slin(0.0);
      for (int j = 0; j < 2; ++j)
        slin = max(slin, herm_deriv_casemax(f(0, j), f(1, j), mx(0, j), mx(1, j)));
      // B_nlin from the y-Hermite of f(x1,.) - f(x0,.)
      Interval tl0 = f(1, 0) - f(0, 0), tl1 = f(1, 1) - f(0, 1);
      Interval tm0 = my(1, 0) - my(0, 0), tm1 = my(1, 1) - my(0, 1);
      Interval bnlin = c427 * herm_m1(tl0, tl1, tm0, tm1);
      if (scheme == Hermite2DScheme::S4TildeDeriv) {
        Interval main = (slin + bnlin) / h1;
        Interval err = pow_int(h2, 4) / Interval(384.0) * abs(d.at(1, 4)) +
                       h1 * sqr(h2) / Interval(16.0) * abs(d.at(2, 2)) +
                       Interval(2.0) * pow_int(h1, 3) / Interval(81.0) * abs(d.at(4, 0));
        return {main, Interval(0.0, err.hi()), "hermite2d-s4tilde-deriv"};
      }
      // full S4: quadratic Q_i nonlinear parts and the x2 defect
      Interval qn0 = abs(m_of(0, 0) - Interval(2.0) * m_of(0, 1) + m_of(0, 2)) / Interval(8.0);
      Interval qn1 = abs(m_of(1, 0) - Interval(2.0) * m_of(1, 1) + m_of(1, 2)) / Interval(8.0);
      Interval main = (slin + bnlin + max(qn0, qn1) +
                       inv_12_sqrt3() * max(abs(defect(0)), abs(defect(1)))) /
                      h1;
      Interval err = pow_int(h2, 4) / Interval(384.0) * abs(d.at(1, 4)) +
                     pow_int(h2, 3) * h1 * recip(Interval(18.0) * sqrt(Interval(3.0))) *
                         abs(d.at(2, 3)) +
                     h2 * pow_int(h1, 3) * recip(Interval(144.0) * sqrt(Interval(3.0))) *
                         abs(d.at(4, 1)) +
                     pow_int(h1, 4) / Interval(96.0) * abs(d.at(5, 0));
      return {main, Interval(0.0, err.hi()), "hermite2d-s4-deriv"};
    }
  }
  throw Error("unreachable");
}

// ---- polynomial extrema --------------------------------------------------------------

Interval poly_extrema(PolyExtremum id) {
  switch (id) {
    case PolyExtremum::QuadraticUnit: return Interval(0.25);
    case PolyExtremum::PairBound: return Interval(1.0);
    case PolyExtremum::Cubic012: return Interval(2.0) / (Interval(3.0) * sqrt(Interval(3.0)));
    case PolyExtremum::CubicT1Sq: return Interval(4.0) / Interval(27.0);
    case PolyExtremum::Quartic0123: return Interval(1.0);
    case PolyExtremum::Quintic: return Interval(1.0) / Interval(10.0);
  }
  throw Error("unreachable");
}

// ---- weighted near-origin bounds -------------------------------------------------------

Interval averaged_power_bound(const std::vector<Interval>& cell_bounds, int k, int m) {
  if (m < 1 || m > static_cast<int>(cell_bounds.size()))
    throw IndexOutOfRange("cell index outside the supplied bounds");
  auto fj = [&](int j) { return j <= 0 ? Interval(0.0) : cell_bounds[j - 1]; };
  Interval s(0.0);
  Interval mk = pow_int(Interval(static_cast<double>(m)), k + 1);
  for (int i = 1; i <= m; ++i) {
    Interval wi = (pow_int(Interval(static_cast<double>(i)), k + 1) -
                   pow_int(Interval(static_cast<double>(i - 1)), k + 1)) /
                  mk;
    s = s + wi * max(abs(fj(m - i)), abs(fj(m - i + 1)));
  }
  return Interval(0.0, (s / Interval(static_cast<double>(k + 1))).hi());
}

namespace {

Interval max_over_cells(const std::vector<Interval>& bounds, int k, const char* what) {
  if (bounds.empty()) throw MissingOrder(std::string("missing cell bounds: ") + what);
  Interval best(0.0);
  for (int m = 1; m <= static_cast<int>(bounds.size()); ++m)
    best = max(best, averaged_power_bound(bounds, k, m));
  return best;
}

// max over beta in [0, pi/2] of sum_i c_i cos^{p_i} sin^{q_i}
Interval beta_max(const std::vector<std::tuple<Interval, double, double>>& terms) {
  const int n = 48;
  Interval hp = half_pi_iv();
  Interval best(0.0);
  for (int s = 0; s < n; ++s) {
    Interval b = Interval(s, s + 1) * hp / Interval(static_cast<double>(n));
    Interval cb = intersect(cos(b), Interval(0.0, 1.0));
    Interval sb = intersect(sin(b), Interval(0.0, 1.0));
    Interval v(0.0);
    for (const auto& [c, pc, ps] : terms)
      v = v + c * iv_power(cb, pc) * iv_power(sb, ps);
    best = max(best, v);
  }
  return Interval(0.0, best.hi());
}

}  // namespace

Interval weighted_origin_bound(const WeightedOriginInput& in, const VanishingFlags& flags,
                               WeightedTarget target) {
  if (!flags.odd_in_x) throw InsufficientVanishing("targets assume F odd in x");
  auto need = [&](int order) {
    if (flags.grad_vanish_order < order)
      throw InsufficientVanishing("target needs grad^k F(0) = 0 up to k = " +
                                  std::to_string(order));
  };
  const Interval half(0.5);
  switch (target) {
    case WeightedTarget::F_over_r3:
    case WeightedTarget::F_over_r52_x12: {
      need(2);
      double b = (target == WeightedTarget::F_over_r3) ? 0.0 : 0.5;
      Interval cx = half * max_over_cells(in.fxxx_axis, 2, "F_xxx on the axis");
      Interval cy = max_over_cells(in.fxyy_rows, 1, "F_xyy row maxima");
      Interval cm = max_over_cells(in.fxxy_axis, 1, "F_xxy on the axis");
      return beta_max({{cx, 3.0 - b, 0.0}, {cy, 1.0 - b, 2.0}, {cm, 2.0 - b, 1.0}});
    }
    case WeightedTarget::F_over_r2:
    case WeightedTarget::F_over_r32_x12: {
      need(1);
      double b = (target == WeightedTarget::F_over_r2) ? 0.0 : 0.5;
      Interval cxy = max_over_cells(in.fxy_rows, 0, "F_xy row maxima");
      Interval cxx = max_over_cells(in.fxx_axis, 1, "F_xx on the axis");
      return beta_max({{cxy, 1.0 - b, 1.0}, {cxx, 2.0 - b, 0.0}});
    }
    case WeightedTarget::F_over_r: {
      Interval cx = max_over_cells(in.fx_cols, 0, "F_x column maxima");
      return beta_max({{cx, 1.0, 0.0}});
    }
    case WeightedTarget::Fy_over_r2: {
      need(2);
      Interval c1 = max_over_cells(in.fxyy_rows, 0, "F_xyy row maxima");
      Interval c2 = max_over_cells(in.fxxy_axis, 1, "F_xxy on the axis");
      return beta_max({{c1, 1.0, 1.0}, {c2, 2.0, 0.0}});
    }
    case WeightedTarget::Fx_over_r2: {
      need(2);
      Interval c1 = max_over_cells(in.fxyy_rows, 1, "F_xyy row maxima");
      Interval c2 = max_over_cells(in.fxxy_axis, 0, "F_xxy on the axis");
      Interval c3 = max_over_cells(in.fxxx_axis, 1, "F_xxx on the axis");
      return beta_max({{c1, 0.0, 2.0}, {c2, 1.0, 1.0}, {c3, 2.0, 0.0}});
    }
    case WeightedTarget::Fy_over_r: {
      Interval c = max_over_cells(in.fxy_cols, 0, "F_xy column maxima");
      return beta_max({{c, 1.0, 0.0}});
    }
    case WeightedTarget::Fx_over_r: {
      if (flags.f_vanishes_on_axis) {
        Interval c = max_over_cells(in.fxy_rows, 0, "F_xy row maxima");
        return beta_max({{c, 0.0, 1.0}});
      }
      need(1);
      Interval c1 = max_over_cells(in.fxy_rows, 0, "F_xy row maxima");
      Interval c2 = max_over_cells(in.fxx_axis, 0, "F_xx on the axis");
      return beta_max({{c1, 0.0, 1.0}, {c2, 1.0, 0.0}});
    }
  }
  throw Error("unreachable");
}

}  // namespace certibound
