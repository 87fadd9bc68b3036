#include "certibound/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace certibound {

Mesh1D::Mesh1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw DomainError("mesh needs at least two nodes");
  for (size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i - 1] < nodes_[i])) throw DomainError("mesh nodes must increase strictly");
    if (std::isinf(nodes_[i]) && i + 1 != nodes_.size())
      throw DomainError("+inf is only legal as the terminal node");
  }
}

Mesh1D Mesh1D::uniform(double a, double b, size_t n) {
  std::vector<double> v(n + 1);
  for (size_t i = 0; i <= n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / n;
  v[0] = a;
  v[n] = b;
  return Mesh1D(std::move(v));
}

Mesh1D Mesh1D::geometric(double a, double b, size_t n, double ratio) {
  if (ratio <= 0) throw DomainError("mesh ratio must be positive");
  std::vector<double> v(n + 1);
  double w = 1.0, total = 0.0;
  std::vector<double> steps(n);
  for (size_t i = 0; i < n; ++i) {
    steps[i] = w;
    total += w;
    w *= ratio;
  }
  v[0] = a;
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) {
    acc += steps[i];
    v[i + 1] = a + (b - a) * acc / total;
  }
  v[n] = b;
  return Mesh1D(std::move(v));
}

Mesh1D Mesh1D::paper_preset(double scale, double domain) {
  const double h = scale * 13.0 * std::pow(2.0, -11);
  const double xc = scale * 13.0 * std::pow(2.0, -5);
  std::vector<double> v;
  double x = 0.0;
  while (x < xc) {
    v.push_back(x);
    x += h;
  }
  // beyond x_c expand each step by a fixed factor out to the domain edge
  double step = h;
  while (x < domain) {
    v.push_back(x);
    step *= 1.25;
    x += step;
  }
  v.push_back(domain);
  return Mesh1D(std::move(v));
}

Mesh1D Mesh1D::desk_mesh(size_t n, double domain) {
  // three regimes mimicking the production design at 64 nodes: a uniform
  // near-field, a stretched middle with growth blending r0 -> r1, then an
  // exponential far field with rate r1
  if (n < 16) throw DomainError("desk mesh needs at least 16 nodes");
  const double r0 = 1.025, r1 = 1.15;
  size_t n1 = n / 2, n2 = n / 4, n3 = n - n1 - n2 - 1;
  std::vector<double> v;
  double h = 1.0;
  double x = 0.0;
  for (size_t i = 0; i < n1; ++i) {
    v.push_back(x);
    x += h;
  }
  // smooth rate blending across the middle regime
  for (size_t i = 0; i < n2; ++i) {
    double t = static_cast<double>(i) / n2;
    double rate = std::exp((1.0 - t) * std::log(r0) + t * std::log(r1));
    h *= rate;
    v.push_back(x);
    x += h;
  }
  for (size_t i = 0; i < n3; ++i) {
    h *= r1;
    v.push_back(x);
    x += h;
  }
  v.push_back(x);
  // rescale so the nodes span [0, domain]
  double span = v.back();
  for (auto& node : v) node *= domain / span;
  v.back() = domain;
  return Mesh1D(std::move(v));
}

QuadResult quad_add(const QuadResult& a, const QuadResult& b) {
  QuadResult r;
  r.main = a.main + b.main;
  r.err = Interval(0.0, add_up(a.err.hi(), b.err.hi()));
  r.total = r.main + Interval(0.0, r.err.hi());
  return r;
}

QuadResult trapz_l1(const CornerFn& f, const DerivPairFn& d2, const Box2& q) {
  if (!q.is_bounded()) throw DomainError("trapz_l1 needs a bounded box");
  Interval area = q.area();
  Interval c00 = f(Interval(q.x.lo()), Interval(q.y.lo()));
  Interval c01 = f(Interval(q.x.lo()), Interval(q.y.hi()));
  Interval c10 = f(Interval(q.x.hi()), Interval(q.y.lo()));
  Interval c11 = f(Interval(q.x.hi()), Interval(q.y.hi()));
  Interval corner_abs = abs(c00) + abs(c01) + abs(c10) + abs(c11);
  Interval main = area / Interval(4.0) * corner_abs;
  auto [fxx, fyy] = d2(q);
  Interval h1 = Interval(q.x.hi()) - Interval(q.x.lo());
  Interval h2 = Interval(q.y.hi()) - Interval(q.y.lo());
  Interval err = area / Interval(12.0) * (sqr(h1) * abs(fxx) + sqr(h2) * abs(fyy));
  QuadResult r = QuadResult::make(main, err);
  // two-sided bracket: |int f| >= |T(f)| - err (the pointwise interpolation
  // bound holds without the absolute value), and int |f| >= |int f|
  Interval signed_t = area / Interval(4.0) * (c00 + c01 + c10 + c11);
  Interval lower = abs(signed_t) - Interval(err.hi());
  double lo = std::max(0.0, lower.lo());
  r.total = Interval(std::min(lo, r.total.hi()), r.total.hi());
  return r;
}

Interval parallel_sum(size_t n, const std::function<Interval(size_t)>& fn, int workers) {
  std::vector<Interval> parts(n, Interval(0.0));
  if (workers <= 1 || n < 2) {
    for (size_t i = 0; i < n; ++i) parts[i] = fn(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    int w = std::min<int>(workers, static_cast<int>(n));
    for (int t = 0; t < w; ++t)
      pool.emplace_back([&]() {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= n) return;
          parts[i] = fn(i);
        }
      });
    for (auto& t : pool) t.join();
  }
  // merge strictly in index order so the result is schedule-independent
  Interval s(0.0);
  for (const auto& p : parts) s = s + p;
  return s;
}

QuadResult trapz_l1_mesh(const CornerFn& f, const DerivPairFn& d2, const Mesh1D& mx,
                         const Mesh1D& my, int workers) {
  size_t nx = mx.cells(), ny = my.cells();
  std::vector<QuadResult> cells(nx * ny);
  auto cell = [&](size_t idx) {
    size_t i = idx / ny, j = idx % ny;
    cells[idx] = trapz_l1(f, d2, Box2(mx.cell(i), my.cell(j)));
    return Interval(0.0);
  };
  parallel_sum(nx * ny, cell, workers);
  Interval main(0.0), err(0.0);
  double lower = 0.0;
  for (size_t i = 0; i < nx * ny; ++i) {
    main = main + cells[i].main;
    err = Interval(0.0, add_up(err.hi(), cells[i].err.hi()));
    lower = add_down(lower, cells[i].total.lo());
  }
  QuadResult out = QuadResult::make(main, err);
  out.total = Interval(std::min(lower, out.total.hi()), out.total.hi());
  return out;
}

Interval trapz_l1_xfamily(const Corner2Fn& k, const Box2& p, const Box2& q,
                          const DerivPair2Fn& d2_x, const DerivPairFn& d2_y) {
  // corner-x integrals
  Interval worst(0.0);
  const double xs[2] = {p.x.lo(), p.x.hi()};
  const double ys[2] = {p.y.lo(), p.y.hi()};
  for (double x1 : xs)
    for (double x2 : ys) {
      CornerFn fx = [&](const Interval& a, const Interval& b) {
        return k(Interval(x1), Interval(x2), a, b);
      };
      DerivPairFn dfx = [&](const Box2& cell) {
        return d2_y(cell);  // y-derivative bounds hold uniformly in x in P
      };
      QuadResult r = trapz_l1(fx, dfx, q);
      worst = max(worst, r.total);
    }
  auto [kx1x1, kx2x2] = d2_x(p, q);
  Interval h1 = Interval(p.x.hi()) - Interval(p.x.lo());
  Interval h2 = Interval(p.y.hi()) - Interval(p.y.lo());
  Interval err =
      (sqr(h1) * abs(kx1x1) + sqr(h2) * abs(kx2x2)) / Interval(8.0) * q.area();
  return Interval(0.0, (worst + err).hi());
}

namespace {

// The exact cell midpoint need not be a double; evaluating over a one-ulp
// hull around the rounded midpoint keeps the Simpson stencil sound.
Interval mid_hull(double lo, double hi) {
  double m = 0.5 * (lo + hi);
  return Interval(std::max(lo, next_down(m)), std::min(hi, next_up(m)));
}

const Interval kSixth = Interval(1.0) / Interval(6.0);
const Interval kFourSixth = Interval(4.0) / Interval(6.0);

}  // namespace

QuadResult simpson2d(const CornerFn& f, const Box2& q, const DerivPairFn& d4) {
  if (!q.is_bounded()) throw DomainError("simpson2d needs a bounded box");
  Interval mx = mid_hull(q.x.lo(), q.x.hi());
  Interval my = mid_hull(q.y.lo(), q.y.hi());
  const Interval nx[3] = {Interval(q.x.lo()), mx, Interval(q.x.hi())};
  const Interval ny[3] = {Interval(q.y.lo()), my, Interval(q.y.hi())};
  const Interval w[3] = {kSixth, kFourSixth, kSixth};
  Interval s(0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s = s + w[i] * w[j] * f(nx[i], ny[j]);
  Interval main = s * q.area();
  auto [d4x, d4y] = d4(q);
  Interval h1 = Interval(q.x.hi()) - Interval(q.x.lo());
  Interval h2 = Interval(q.y.hi()) - Interval(q.y.lo());
  Interval err = q.area() / Interval(2880.0) *
                 (pow_int(h1, 4) * abs(d4x) + pow_int(h2, 4) * abs(d4y));
  return QuadResult::make(main, err);
}

QuadResult simpson1d(const Fn1D& f, const DerivFn1D& d4, const Mesh1D& mesh) {
  Interval main(0.0), err(0.0);
  for (size_t i = 0; i < mesh.cells(); ++i) {
    Interval c = mesh.cell(i);
    if (!c.is_bounded()) throw DomainError("simpson1d cell must be bounded");
    Interval h = Interval(c.hi()) - Interval(c.lo());
    Interval s = h * (kSixth * f(Interval(c.lo())) +
                      kFourSixth * f(mid_hull(c.lo(), c.hi())) +
                      kSixth * f(Interval(c.hi())));
    main = main + s;
    Interval e = pow_int(h, 5) / Interval(2880.0) * abs(d4(c));
    err = Interval(0.0, add_up(err.hi(), e.hi()));
  }
  return QuadResult::make(main, err);
}

Interval riemann1d(const Fn1D& f, const Mesh1D& mesh) {
  Interval s(0.0);
  for (size_t i = 0; i < mesh.cells(); ++i) {
    Interval c = mesh.cell(i);
    Interval h = Interval(c.hi()) - Interval(c.lo());
    s = s + h * f(c);
  }
  return s;
}

Interval quad_signed_kernel(KernelId id, const Box2& q) {
  return kernel_antiderivative(id, AntiderivMode::XY).integrate(q);
}

// ---- closed-form tails ---------------------------------------------------------

Interval near_origin_tail(NearOriginKernel kernel, double q, double a, double b, double r) {
  if (q <= 0 || r <= 0) throw DomainError("near_origin_tail needs q, r > 0");
  if (b > 0) throw ExponentOutOfRange("angular power b must be <= 0");
  const Interval qi(q), ri(r);
  if (kernel == NearOriginKernel::K1Type) {
    if (a >= 0) return Interval(0.0, std::numeric_limits<double>::infinity());
    // q^{-1} (sqrt2 r)^{-a} / (-a) * 1 / (2 - b)
    Interval s = iv_power(sqrt2_iv() * ri, -a);
    return Interval(0.0, (s / (qi * Interval(-a) * Interval(2.0 - b))).hi());
  }
  if (a >= -2) return Interval(0.0, std::numeric_limits<double>::infinity());
  // (1/(4q)) (sqrt2 r)^{-a-2} / (-2-a)
  Interval s = iv_power(sqrt2_iv() * ri, -a - 2.0);
  return Interval(0.0, (s / (Interval(4.0) * qi * Interval(-2.0 - a))).hi());
}

Interval farfield_tail(double p, double q, double a, double b, double r1) {
  if (q <= 0 || r1 <= 0) throw DomainError("farfield_tail needs q, R1 > 0");
  if (b < -1 || b > 0) throw ExponentOutOfRange("angular power b must lie in [-1, 0]");
  if (p + a <= 2) throw ExponentOutOfRange("kernel decay p + a must exceed 2");
  Interval radial = iv_power(Interval(r1), 2.0 - p - a) / Interval(p + a - 2.0);
  Interval angular = iv_power(half_pi_iv(), 1.0 + b);
  return Interval(0.0, (radial * angular / Interval(q)).hi());
}

Interval k00_near_origin_bound(const Interval& m30, const Interval& m12, double d) {
  if (d <= 0) throw DomainError("domain size must be positive");
  const Interval di(d);
  const Interval one(1.0), two(2.0), half(0.5);
  // f = -log|y|; the boundary evaluations below are f_x, f_xx, (f_yy y^2 -
  // 2 f_y y + 2 f) at (1,1) and (1,0), by interval arithmetic
  auto fx = [](double y1, double y2) {
    Interval r2 = Interval(y1 * y1 + y2 * y2);
    return -Interval(y1) / r2;
  };
  auto fxx = [](double y1, double y2) {
    // d^2_x (-log|y|) = (y1^2 - y2^2)/|y|^4
    Interval r2 = Interval(y1 * y1 + y2 * y2);
    return (Interval(y1 * y1) - Interval(y2 * y2)) / sqr(r2);
  };
  // I <= M30 D pi / 4
  Interval term1 = abs(m30) * di * quarter_pi_iv();
  // II <= (M30/2) D |f_x(1,1) - f_x(1,0)| + (M12/2) D (log 2 - 1/2)
  Interval ii1 = di * abs(fx(1, 1) - fx(1, 0));
  Interval ii2 = di * (log2_iv() - half);
  Interval term2 = abs(m30) / two * ii1 + abs(m12) / two * ii2;
  // III <= (M30/6) D |f_xx(1,1) - f_xx(1,0)| + (M12/2) D |(f_yy y^2 - 2 f_y y
  // + 2 f)|_0^1| at x = 1
  Interval iii1 = di * abs(fxx(1, 1) - fxx(1, 0));
  auto boundary = [&half](double y) {
    Interval yi(y);
    Interval r2 = Interval(1.0) + sqr(yi);
    Interval f = -half * log(r2);
    Interval fy = -yi / r2;
    Interval fyy = -(Interval(1.0) - sqr(yi)) / sqr(r2);
    return fyy * sqr(yi) - Interval(2.0) * fy * yi + Interval(2.0) * f;
  };
  Interval iii2 = di * abs(boundary(1.0) - boundary(0.0));
  Interval term3 = abs(m30) / Interval(6.0) * iii1 + abs(m12) / two * iii2;
  Interval total = term1 + term2 + term3;
  return Interval(0.0, total.hi());
}

Interval c_omega_radial(const Fn1D& chi, const DerivFn1D& chi_d4, double a_lo, double b_hi,
                        const Fn1D& g, const DerivFn1D& g_d4, double alpha,
                        size_t radial_cells, size_t angular_cells) {
  if (alpha <= 0) throw DomainError("alpha must be positive");
  if (!(a_lo > 0 && b_hi > a_lo)) throw DomainError("need 0 < A < B");
  // radial: int_A^B chi(r) r^{-alpha-1} dr on a geometric mesh + exact tail
  Mesh1D rm = Mesh1D::geometric(a_lo, b_hi, radial_cells, std::pow(b_hi / a_lo, 1.0 / radial_cells));
  Fn1D radial_f = [&](const Interval& r) { return chi(r) * iv_power(r, -alpha - 1.0); };
  DerivFn1D radial_d4 = [&](const Interval& c) {
    // Leibniz: |d^4 (chi r^{-a-1})| <= sum binom(4,k) |d^k chi| |d^{4-k} r^{-a-1}|
    Interval s(0.0);
    for (int k = 0; k <= 4; ++k) {
      Interval dchi = (k == 0) ? abs(chi(c)) : abs(chi_d4(c));  // supplier bounds all orders <= 4
      Interval coef(1.0);
      for (int m = 0; m < 4 - k; ++m) coef = coef * Interval(alpha + 1.0 + m);
      Interval rp = iv_power(Interval(c.lo()), -alpha - 1.0 - (4 - k));
      s = s + Interval(static_cast<double>(binom(4, k))) * dchi * coef * rp;
    }
    return s;
  };
  QuadResult radial = simpson1d(radial_f, radial_d4, rm);
  Interval tail = iv_power(Interval(b_hi), -alpha) / Interval(alpha);
  Interval radial_total = radial.total + tail;

  // angular: int_0^{pi/2} g(b) sin(2 b) db
  Interval hp = half_pi_iv();
  Mesh1D am = Mesh1D::uniform(0.0, hp.lo(), angular_cells);
  Fn1D ang_f = [&](const Interval& b) { return g(b) * sin(Interval(2.0) * b); };
  DerivFn1D ang_d4 = [&](const Interval& c) {
    // |d^4 (g sin 2b)| <= sum binom(4,k) |d^k g| 2^{4-k}
    Interval s(0.0);
    for (int k = 0; k <= 4; ++k) {
      Interval dg = (k == 0) ? abs(g(c)) : abs(g_d4(c));
      s = s + Interval(static_cast<double>(binom(4, k))) * dg *
                  Interval(std::pow(2.0, 4 - k));
    }
    return s;
  };
  QuadResult ang = simpson1d(ang_f, ang_d4, am);
  // the last sliver [hp.lo, pi/2]: |g sin 2b| <= |g| there
  Interval sliver = (hp - Interval(hp.lo())) * abs(g(Interval(hp.lo(), hp.hi())));
  Interval angular_total = ang.total + Interval(-sliver.hi(), sliver.hi());

  return -(Interval(2.0) / pi_iv()) * radial_total * angular_total;
}

}  // namespace certibound
