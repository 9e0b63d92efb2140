#pragma once

// Logarithmic coefficients and the coefficient functionals built on them.
//
//   log(f(z)/z) = 2 sum_{n>=1} gamma_n z^n

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "logcoef/series.hpp"

namespace logcoef {

/// gamma_1..gamma_N.
struct GammaVector {
  std::vector<complex> gammas;

  /// 1-based access: gamma(1) is gamma_1.
  complex gamma(std::size_t n) const { return gammas.at(n - 1); }
  std::size_t size() const noexcept { return gammas.size(); }
};

/// gamma_n = (1/2) [z^n] log(f(z)/z) for n = 1..N. Needs a_{N+1}, so the
/// order of f must be at least N + 1.
inline GammaVector gamma_vector(const SchlichtSeries& f, std::size_t count) {
  if (f.order() < count + 1) throw SeriesError("gamma_vector: insufficient series order");
  const TruncatedSeries log = log_series(shift_down(f.series()));
  GammaVector out;
  out.gammas.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) out.gammas.push_back(0.5 * log[n]);
  return out;
}

/// gamma_1..gamma_3 in closed form from a_2, a_3, a_4.
inline std::array<complex, 3> gamma_closed(complex a2, complex a3, complex a4) {
  return {0.5 * a2, 0.5 * (a3 - 0.5 * a2 * a2), 0.5 * (a4 - a2 * a3 + a2 * a2 * a2 / 3.0)};
}

/// a_4 - a_2 a_3 + a_2^3/3 written directly in the c- and p-coefficients.
inline complex gamma3_expanded(complex c1, complex c2, complex c3, complex p1, complex p2, complex p3) {
  return c3 / 4.0 + c2 * p1 / 12.0 + c1 * p2 / 24.0 + p3 / 12.0 + p1 * p2 / 24.0 - c1 * c2 / 6.0 -
         c1 * c1 * p1 / 24.0 + c1 * c1 * c1 / 24.0;
}

/// |gamma_3| from the expanded functional.
inline double gamma3_modulus(complex c1, complex c2, complex c3, complex p1, complex p2, complex p3) {
  return 0.5 * std::abs(gamma3_expanded(c1, c2, c3, p1, p2, p3));
}

/// |a_3 - a_2^2/2|, which is 2|gamma_2|.
inline double fekete_szego(complex a2, complex a3) { return std::abs(a3 - 0.5 * a2 * a2); }

/// sum_{m=1}^{n} sum_{k=1}^{m} (k |gamma_k|^2 - 1/k); nonpositive on S.
inline double milin_lhs(const SchlichtSeries& f, std::size_t n) {
  if (n < 1) throw SeriesError("milin_lhs: n must be >= 1");
  const GammaVector g = gamma_vector(f, n);
  double total = 0.0;
  double inner = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    const double k = static_cast<double>(m);
    inner += k * std::norm(g.gamma(m)) - 1.0 / k;
    total += inner;
  }
  return total;
}

}  // namespace logcoef
