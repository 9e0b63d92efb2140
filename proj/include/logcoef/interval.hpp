#pragma once

// Closed intervals of doubles with outward rounding.
//
// No rounding-mode control is used. Each operation computes the
// round-to-nearest result r together with its exact error (TwoSum for
// sums, fma for products) and moves whichever bound lies on the wrong side
// of the exact value by one ulp. Exactly representable results stay exact.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace logcoef {

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this magnitude fma error terms may be inexact (subnormal range).
inline constexpr double kTinyProduct = 0x1p-960;

struct Bracket {
  double down;
  double up;
};

inline Bracket bracket_sum(double a, double b) noexcept {
  const double s = a + b;
  if (!std::isfinite(s)) return {std::nextafter(s, -kInf), std::nextafter(s, kInf)};
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  if (err > 0.0) return {s, std::nextafter(s, kInf)};
  if (err < 0.0) return {std::nextafter(s, -kInf), s};
  return {s, s};
}

inline Bracket bracket_product(double a, double b) noexcept {
  const double r = a * b;
  if (!std::isfinite(r)) return {std::nextafter(r, -kInf), std::nextafter(r, kInf)};
  if (r == 0.0 && (a == 0.0 || b == 0.0)) return {0.0, 0.0};
  if (std::abs(r) < kTinyProduct) return {std::nextafter(r, -kInf), std::nextafter(r, kInf)};
  const double err = std::fma(a, b, -r);
  if (err > 0.0) return {r, std::nextafter(r, kInf)};
  if (err < 0.0) return {std::nextafter(r, -kInf), r};
  return {r, r};
}

}  // namespace detail

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double point) : lo(point), hi(point) {}  // NOLINT: implicit from exact constants
  constexpr Interval(double l, double h) : lo(l), hi(h) {}

  double width() const noexcept { return hi - lo; }
  double mid() const noexcept { return lo + 0.5 * (hi - lo); }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const noexcept { return lo <= other.lo && other.hi <= hi; }
  bool is_point() const noexcept { return lo == hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval operator+(const Interval& a, const Interval& b) noexcept {
  return {detail::bracket_sum(a.lo, b.lo).down, detail::bracket_sum(a.hi, b.hi).up};
}

inline Interval operator-(const Interval& a) noexcept { return {-a.hi, -a.lo}; }

inline Interval operator-(const Interval& a, const Interval& b) noexcept { return a + (-b); }

inline Interval operator*(const Interval& a, const Interval& b) noexcept {
  const detail::Bracket p[4] = {detail::bracket_product(a.lo, b.lo), detail::bracket_product(a.lo, b.hi),
                                detail::bracket_product(a.hi, b.lo), detail::bracket_product(a.hi, b.hi)};
  Interval out{p[0].down, p[0].up};
  for (int k = 1; k < 4; ++k) {
    out.lo = std::min(out.lo, p[k].down);
    out.hi = std::max(out.hi, p[k].up);
  }
  return out;
}

inline Interval& operator+=(Interval& a, const Interval& b) noexcept { return a = a + b; }
inline Interval& operator*=(Interval& a, const Interval& b) noexcept { return a = a * b; }

inline Interval hull(const Interval& a, const Interval& b) noexcept {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

/// Intersection; callers only intersect enclosures of the same set, so it is never empty.
inline Interval intersect(const Interval& a, const Interval& b) noexcept {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

/// Rigorous enclosure of x / d for an integer-valued divisor d > 0.
inline Interval divide_exact(const Interval& x, double d) noexcept {
  auto lower = [d](double v) {
    const double q = v / d;
    return std::fma(q, d, -v) > 0.0 ? std::nextafter(q, -detail::kInf) : q;
  };
  auto upper = [d](double v) {
    const double q = v / d;
    return std::fma(q, d, -v) < 0.0 ? std::nextafter(q, detail::kInf) : q;
  };
  return {lower(x.lo), upper(x.hi)};
}

inline std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << '[' << x.lo << ", " << x.hi << ']';
}

}  // namespace logcoef
