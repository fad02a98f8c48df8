#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace zclust {

inline double next_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double next_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

/// Closed real interval [lo, hi].  Every arithmetic result is widened by one
/// ulp on each side, so enclosures stay valid under round-to-nearest.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double point) : lo(point), hi(point) {}
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(l <= h)) throw std::invalid_argument("Interval: lo > hi");
  }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool is_point_zero() const { return lo == 0.0 && hi == 0.0; }

  /// Largest magnitude of any point in the interval, rounded up.
  double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
  /// Smallest magnitude of any point in the interval.
  double mig() const {
    if (lo <= 0.0 && 0.0 <= hi) return 0.0;
    return std::min(std::fabs(lo), std::fabs(hi));
  }

  Interval operator-() const { return raw(-hi, -lo); }

  static Interval raw(double l, double h) {
    Interval r;
    r.lo = l;
    r.hi = h;
    return r;
  }
  static Interval widened(double l, double h) {
    return raw(next_down(l), next_up(h));
  }
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return Interval::widened(a.lo + b.lo, a.hi + b.hi);
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return Interval::widened(a.lo - b.hi, a.hi - b.lo);
}
inline Interval operator*(const Interval& a, const Interval& b) {
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return Interval::widened(std::min(std::min(p1, p2), std::min(p3, p4)),
                           std::max(std::max(p1, p2), std::max(p3, p4)));
}
inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains(0.0)) throw std::domain_error("Interval division by zero");
  const double p1 = a.lo / b.lo, p2 = a.lo / b.hi;
  const double p3 = a.hi / b.lo, p4 = a.hi / b.hi;
  return Interval::widened(std::min(std::min(p1, p2), std::min(p3, p4)),
                           std::max(std::max(p1, p2), std::max(p3, p4)));
}
inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

/// Tight enclosure of x^2 (sharper than x*x when the interval straddles 0).
inline Interval square(const Interval& a) {
  if (a.lo >= 0.0) return Interval::widened(a.lo * a.lo, a.hi * a.hi);
  if (a.hi <= 0.0) return Interval::widened(a.hi * a.hi, a.lo * a.lo);
  const double m = std::max(a.lo * a.lo, a.hi * a.hi);
  return Interval::raw(0.0, next_up(m));
}

inline Interval sqrt(const Interval& a) {
  const double l = a.lo <= 0.0 ? 0.0 : next_down(std::sqrt(a.lo));
  if (a.hi < 0.0) throw std::domain_error("Interval sqrt of negative interval");
  return Interval::raw(std::max(l, 0.0), next_up(std::sqrt(a.hi)));
}

inline Interval pow_nat(Interval a, unsigned k) {
  Interval acc(1.0);
  // binary exponentiation; square() keeps even powers tight
  while (k > 0) {
    if (k & 1u) acc = acc * a;
    k >>= 1u;
    if (k > 0) a = square(a);
  }
  return acc;
}

inline Interval intersect(const Interval& a, const Interval& b) {
  const double l = std::max(a.lo, b.lo);
  const double h = std::min(a.hi, b.hi);
  if (l > h) throw std::domain_error("Interval intersection is empty");
  return Interval::raw(l, h);
}

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval::raw(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

/// Rectangular complex interval.
struct CInterval {
  Interval re;
  Interval im;

  CInterval() = default;
  CInterval(const Interval& r, const Interval& i) : re(r), im(i) {}
  CInterval(double r, double i = 0.0) : re(r), im(i) {}
  CInterval(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}

  bool contains(const std::complex<double>& z) const {
    return re.contains(z.real()) && im.contains(z.imag());
  }
  bool is_point_zero() const { return re.is_point_zero() && im.is_point_zero(); }

  std::complex<double> mid() const { return {re.mid(), im.mid()}; }

  /// Upper bound on |z| over the rectangle.
  double mag() const {
    Interval m = square(re) + square(im);
    return zclust::sqrt(m).hi;
  }

  CInterval operator-() const { return {-re, -im}; }
};

inline CInterval operator+(const CInterval& a, const CInterval& b) {
  return {a.re + b.re, a.im + b.im};
}
inline CInterval operator-(const CInterval& a, const CInterval& b) {
  return {a.re - b.re, a.im - b.im};
}
inline CInterval operator*(const CInterval& a, const CInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CInterval& operator+=(CInterval& a, const CInterval& b) { return a = a + b; }
inline CInterval& operator-=(CInterval& a, const CInterval& b) { return a = a - b; }
inline CInterval& operator*=(CInterval& a, const CInterval& b) { return a = a * b; }

}  // namespace zclust
