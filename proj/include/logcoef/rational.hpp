#pragma once

#include <charconv>
#include <cstdlib>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include "logcoef/interval.hpp"

namespace logcoef {

/// Exact rational num/den with den > 0, in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  /// Accepts "a/b" or an integer "a".
  static Rational parse(std::string_view text) {
    auto to_int = [&](std::string_view s) {
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw std::invalid_argument("not a rational: " + std::string(text));
      }
      return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(to_int(text), 1);
    return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
  }

  std::string to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  /// Rigorous enclosure of scale * num / den (a point when it is exact).
  Interval scaled(std::int64_t scale) const {
    std::int64_t n = 0;
    if (__builtin_mul_overflow(num, scale, &n)) throw std::overflow_error("rational target too large");
    if (n % den == 0) return Interval(static_cast<double>(n / den));
    if (std::abs(n) > (std::int64_t{1} << 53)) throw std::overflow_error("rational target too large");
    return divide_exact(Interval(static_cast<double>(n)), static_cast<double>(den));
  }

  friend bool operator==(const Rational&, const Rational&) = default;
};

}  // namespace logcoef
