#pragma once

// Truncated complex power series.
//
// A TruncatedSeries of order N carries a_0..a_N and every operation
// truncates at N: no coefficient of index > N is ever read or produced.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace logcoef {

using complex = std::complex<double>;

/// Default truncation order used by the CLI and diagnostics.
inline constexpr std::size_t kDefaultOrder = 16;

class SeriesError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class TruncatedSeries {
public:
  TruncatedSeries() : coeffs_(1, complex{0.0, 0.0}) {}

  /// Zero series of order N.
  explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, complex{0.0, 0.0}) {}

  /// Coefficients a_0..a_N; the order is coeffs.size() - 1.
  explicit TruncatedSeries(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
      throw SeriesError("TruncatedSeries needs at least one coefficient");
    }
  }

  /// Leading coefficients, zero padded up to `order`.
  TruncatedSeries(std::initializer_list<complex> leading, std::size_t order)
      : coeffs_(order + 1, complex{0.0, 0.0}) {
    std::size_t n = 0;
    for (const complex& a : leading) {
      if (n > order) break;
      coeffs_[n++] = a;
    }
  }

  static TruncatedSeries constant(complex value, std::size_t order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = value;
    return s;
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }

  const complex& operator[](std::size_t n) const { return coeffs_[n]; }
  complex& operator[](std::size_t n) { return coeffs_[n]; }

  /// Coefficient n, or zero past the truncation order.
  complex coeff(std::size_t n) const noexcept {
    return n < coeffs_.size() ? coeffs_[n] : complex{0.0, 0.0};
  }

  std::span<const complex> coeffs() const noexcept { return coeffs_; }

  /// Drop every coefficient above M (M <= order).
  TruncatedSeries truncated(std::size_t order) const {
    if (order > this->order()) {
      throw SeriesError("cannot truncate to a higher order");
    }
    return TruncatedSeries(std::vector<complex>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  TruncatedSeries& operator+=(const TruncatedSeries& other) {
    require_same_order(other);
    for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += other.coeffs_[n];
    return *this;
  }

  TruncatedSeries& operator-=(const TruncatedSeries& other) {
    require_same_order(other);
    for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= other.coeffs_[n];
    return *this;
  }

  TruncatedSeries& operator*=(complex scale) {
    for (auto& a : coeffs_) a *= scale;
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(complex s, TruncatedSeries a) { return a *= s; }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  void require_same_order(const TruncatedSeries& other) const {
    if (other.order() != order()) {
      throw SeriesError("series order mismatch");
    }
  }

private:
  std::vector<complex> coeffs_;
};

/// Normalized series z + a_2 z^2 + ... (a_0 = 0, a_1 = 1 exactly).
class SchlichtSeries {
public:
  SchlichtSeries() : series_({complex{0.0}, complex{1.0}}, 1) {}

  explicit SchlichtSeries(TruncatedSeries series) : series_(std::move(series)) {
    if (series_.order() < 1 || series_[0] != complex{0.0} || series_[1] != complex{1.0}) {
      throw SeriesError("schlicht series must start 0 + 1*z");
    }
  }

  /// Builds z + a_2 z^2 + ... + a_N z^N from {a_2, ..., a_N}.
  static SchlichtSeries from_tail(std::span<const complex> tail) {
    std::vector<complex> c(tail.size() + 2);
    c[1] = 1.0;
    for (std::size_t k = 0; k < tail.size(); ++k) c[k + 2] = tail[k];
    return SchlichtSeries(TruncatedSeries(std::move(c)));
  }

  std::size_t order() const noexcept { return series_.order(); }
  complex operator[](std::size_t n) const { return series_[n]; }
  complex coeff(std::size_t n) const noexcept { return series_.coeff(n); }
  const TruncatedSeries& series() const noexcept { return series_; }

  SchlichtSeries truncated(std::size_t order) const {
    return SchlichtSeries(series_.truncated(order));
  }

  /// Rotation e^{-i phi} f(e^{i phi} z): a_n -> a_n e^{i(n-1)phi}.
  SchlichtSeries rotated(double phi) const {
    TruncatedSeries s = series_;
    for (std::size_t n = 2; n <= s.order(); ++n) {
      s[n] *= std::polar(1.0, static_cast<double>(n - 1) * phi);
    }
    return SchlichtSeries(std::move(s));
  }

private:
  TruncatedSeries series_;
};

/// Cauchy product truncated at the common order.
inline TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.require_same_order(b);
  const std::size_t order = a.order();
  TruncatedSeries out(order);
  for (std::size_t n = 0; n <= order; ++n) {
    complex sum{0.0, 0.0};
    for (std::size_t k = 0; k <= n; ++k) sum += a[k] * b[n - k];
    out[n] = sum;
  }
  return out;
}

/// a / b by forward substitution; b_0 must be nonzero.
inline TruncatedSeries div(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.require_same_order(b);
  if (b[0] == complex{0.0, 0.0}) {
    throw SeriesError("division by a series with zero constant term");
  }
  const std::size_t order = a.order();
  TruncatedSeries q(order);
  for (std::size_t n = 0; n <= order; ++n) {
    complex sum = a[n];
    for (std::size_t k = 1; k <= n; ++k) sum -= b[k] * q[n - k];
    q[n] = sum / b[0];
  }
  return q;
}

/// Termwise derivative; the result has order N - 1.
inline TruncatedSeries derive(const TruncatedSeries& a) {
  if (a.order() == 0) {
    throw SeriesError("cannot differentiate an order-0 series");
  }
  TruncatedSeries d(a.order() - 1);
  for (std::size_t n = 0; n < a.order(); ++n) {
    d[n] = static_cast<double>(n + 1) * a[n + 1];
  }
  return d;
}

/// log(a) for a_0 = 1, from the ODE a * L' = a' with L_0 = 0:
///   n L_n = n a_n - sum_{k=1}^{n-1} k L_k a_{n-k}.
inline TruncatedSeries log_series(const TruncatedSeries& a) {
  if (a[0] != complex{1.0, 0.0}) {
    throw SeriesError("log_series requires constant term 1");
  }
  const std::size_t order = a.order();
  TruncatedSeries log(order);
  for (std::size_t n = 1; n <= order; ++n) {
    complex sum = static_cast<double>(n) * a[n];
    for (std::size_t k = 1; k < n; ++k) sum -= static_cast<double>(k) * log[k] * a[n - k];
    log[n] = sum / static_cast<double>(n);
  }
  return log;
}

/// exp(a) for a_0 = 0, from E' = a' E with E_0 = 1.
inline TruncatedSeries exp_series(const TruncatedSeries& a) {
  if (a[0] != complex{0.0, 0.0}) {
    throw SeriesError("exp_series requires constant term 0");
  }
  const std::size_t order = a.order();
  TruncatedSeries e(order);
  e[0] = 1.0;
  for (std::size_t n = 1; n <= order; ++n) {
    complex sum{0.0, 0.0};
    for (std::size_t k = 1; k <= n; ++k) sum += static_cast<double>(k) * a[k] * e[n - k];
    e[n] = sum / static_cast<double>(n);
  }
  return e;
}

/// f(z)/z as a series of order N - 1 with constant term a_1.
inline TruncatedSeries shift_down(const TruncatedSeries& f) {
  if (f.order() == 0) {
    throw SeriesError("cannot divide an order-0 series by z");
  }
  if (f[0] != complex{0.0, 0.0}) {
    throw SeriesError("f(z)/z requires f(0) = 0");
  }
  return TruncatedSeries(std::vector<complex>(f.coeffs().begin() + 1, f.coeffs().end()));
}

/// Koebe function z/(1-z)^2 truncated at N: a_n = n.
inline SchlichtSeries koebe(std::size_t order) {
  if (order < 1) {
    throw SeriesError("koebe needs order >= 1");
  }
  TruncatedSeries k(order);
  for (std::size_t n = 1; n <= order; ++n) k[n] = static_cast<double>(n);
  return SchlichtSeries(std::move(k));
}

/// The identity map f(z) = z at order N.
inline SchlichtSeries identity_map(std::size_t order) {
  if (order < 1) {
    throw SeriesError("identity_map needs order >= 1");
  }
  return SchlichtSeries(TruncatedSeries({complex{0.0}, complex{1.0}}, order));
}

}  // namespace logcoef
