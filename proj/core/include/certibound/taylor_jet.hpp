#ifndef CERTIBOUND_TAYLOR_JET_HPP
#define CERTIBOUND_TAYLOR_JET_HPP

#include <array>

#include "certibound/interval.hpp"

namespace certibound {

// Univariate derivative jet over intervals: d[k] encloses f^(k)(x)/k! for
// every x in the seeded interval.  Propagating jets through an integrand
// formula yields interval bounds on its derivatives over a cell, which is how
// the quadrature error terms get their ||f^(k)|| inputs.
template <int N>
struct Jet {
  std::array<Interval, N + 1> d;

  Jet() { d.fill(Interval(0.0)); }

  static Jet constant(const Interval& c) {
    Jet j;
    j.d[0] = c;
    return j;
  }
  static Jet variable(const Interval& x) {
    Jet j;
    j.d[0] = x;
    if constexpr (N >= 1) j.d[1] = Interval(1.0);
    return j;
  }

  // k! * d[k] = bound on f^(k)
  Interval deriv(int k) const {
    Interval f(1.0);
    for (int i = 2; i <= k; ++i) f = f * Interval(static_cast<double>(i));
    return d[k] * f;
  }
};

template <int N>
Jet<N> operator+(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (int k = 0; k <= N; ++k) r.d[k] = a.d[k] + b.d[k];
  return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (int k = 0; k <= N; ++k) r.d[k] = a.d[k] - b.d[k];
  return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a) {
  Jet<N> r;
  for (int k = 0; k <= N; ++k) r.d[k] = -a.d[k];
  return r;
}

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (int k = 0; k <= N; ++k) {
    Interval s(0.0);
    for (int i = 0; i <= k; ++i) s = s + a.d[i] * b.d[k - i];
    r.d[k] = s;
  }
  return r;
}

template <int N>
Jet<N> operator*(const Interval& c, const Jet<N>& a) {
  Jet<N> r;
  for (int k = 0; k <= N; ++k) r.d[k] = c * a.d[k];
  return r;
}

template <int N>
Jet<N> operator+(const Jet<N>& a, const Interval& c) {
  Jet<N> r = a;
  r.d[0] = r.d[0] + c;
  return r;
}

template <int N>
Jet<N> operator+(const Interval& c, const Jet<N>& a) {
  return a + c;
}

template <int N>
Jet<N> operator-(const Interval& c, const Jet<N>& a) {
  return Jet<N>::constant(c) - a;
}

template <int N>
Jet<N> operator-(const Jet<N>& a, const Interval& c) {
  Jet<N> r = a;
  r.d[0] = r.d[0] - c;
  return r;
}

// division via the Cauchy-product recursion; denominator must exclude 0
template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
  if (b.d[0].contains(0.0)) throw DivisionByZeroInterval("jet division by jet containing 0");
  Jet<N> r;
  r.d[0] = a.d[0] / b.d[0];
  for (int k = 1; k <= N; ++k) {
    Interval s = a.d[k];
    for (int i = 0; i < k; ++i) s = s - r.d[i] * b.d[k - i];
    r.d[k] = s / b.d[0];
  }
  return r;
}

template <int N>
Jet<N> sqr(const Jet<N>& a) {
  return a * a;
}

// sqrt: g = sqrt(f) from g0 = sqrt(f0), f_k = sum_{i} g_i g_{k-i}
template <int N>
Jet<N> sqrt(const Jet<N>& a) {
  Jet<N> r;
  r.d[0] = sqrt(a.d[0]);
  if (r.d[0].contains(0.0) && N >= 1) throw DomainError("jet sqrt at 0");
  for (int k = 1; k <= N; ++k) {
    Interval s = a.d[k];
    for (int i = 1; i < k; ++i) s = s - r.d[i] * r.d[k - i];
    r.d[k] = s / (Interval(2.0) * r.d[0]);
  }
  return r;
}

// atan(f): g' = f'/(1+f^2); recover coefficients through h = 1+f^2
template <int N>
Jet<N> atan(const Jet<N>& a) {
  Jet<N> h = Interval(1.0) + a * a;
  Jet<N> r;
  r.d[0] = atan(a.d[0]);
  // (k+1) r_{k+1} = [ f' / h ]_k  (coefficient convolution, done degree by degree)
  // df coefficients: (i+1) a_{i+1}
  std::array<Interval, N + 1> q;  // q = f'/h as truncated series
  if constexpr (N >= 1) {
    std::array<Interval, N + 1> df;
    for (int i = 0; i < N; ++i) df[i] = Interval(static_cast<double>(i + 1)) * a.d[i + 1];
    df[N] = Interval(0.0);
    if (h.d[0].contains(0.0)) throw DivisionByZeroInterval("jet atan");
    for (int k = 0; k <= N; ++k) {
      Interval s = df[k];
      for (int i = 0; i < k; ++i) s = s - q[i] * h.d[k - i];
      q[k] = s / h.d[0];
    }
    for (int k = 1; k <= N; ++k) r.d[k] = q[k - 1] / Interval(static_cast<double>(k));
  }
  return r;
}

template <int N>
Jet<N> exp(const Jet<N>& a) {
  Jet<N> r;
  r.d[0] = exp(a.d[0]);
  for (int k = 1; k <= N; ++k) {
    Interval s(0.0);
    for (int i = 1; i <= k; ++i)
      s = s + Interval(static_cast<double>(i)) * a.d[i] * r.d[k - i];
    r.d[k] = s / Interval(static_cast<double>(k));
  }
  return r;
}

template <int N>
Jet<N> log(const Jet<N>& a) {
  Jet<N> r;
  r.d[0] = log(a.d[0]);
  if (a.d[0].contains(0.0)) throw DomainError("jet log touching 0");
  std::array<Interval, N + 1> q;  // f'/f
  std::array<Interval, N + 1> df;
  for (int i = 0; i < N; ++i) df[i] = Interval(static_cast<double>(i + 1)) * a.d[i + 1];
  if (N >= 0) df[N] = Interval(0.0);
  for (int k = 0; k <= N; ++k) {
    Interval s = df[k];
    for (int i = 0; i < k; ++i) s = s - q[i] * a.d[k - i];
    q[k] = s / a.d[0];
  }
  for (int k = 1; k <= N; ++k) r.d[k] = q[k - 1] / Interval(static_cast<double>(k));
  return r;
}

template <int N>
Jet<N> pow_int(const Jet<N>& a, long n) {
  if (n < 0) return Jet<N>::constant(Interval(1.0)) / pow_int(a, -n);
  Jet<N> r = Jet<N>::constant(Interval(1.0));
  for (long i = 0; i < n; ++i) r = r * a;
  return r;
}

}  // namespace certibound

#endif
