#pragma once

// Starlike and close-to-convex functions built from Caratheodory data.
//
//   z g'(z) = g(z) p(z)   (g starlike, p in P)
//   z f'(z) = g(z) h(z)   (f close-to-convex, h in P)
//
// Membership is guaranteed by construction from Herglotz measures; no
// pointwise check of Re(z f'/g) > 0 is attempted.

#include <cstddef>
#include <stdexcept>

#include "logcoef/caratheodory.hpp"
#include "logcoef/series.hpp"

namespace logcoef {

/// Coefficients of g from z g' = g p:
///   b_1 = 1,  (n - 1) b_n = sum_{k=1}^{n-1} b_k p_{n-k}.
inline SchlichtSeries starlike_from(const TruncatedSeries& p, std::size_t order) {
  if (p[0] != complex{1.0, 0.0}) throw SeriesError("starlike_from requires p(0) = 1");
  if (order < 1) throw SeriesError("starlike_from needs order >= 1");
  if (p.order() + 1 < order) throw SeriesError("p has insufficient order");
  TruncatedSeries g(order);
  g[1] = 1.0;
  for (std::size_t n = 2; n <= order; ++n) {
    complex sum{0.0, 0.0};
    for (std::size_t k = 1; k < n; ++k) sum += g[k] * p[n - k];
    g[n] = sum / static_cast<double>(n - 1);
  }
  return SchlichtSeries(std::move(g));
}

/// Coefficients of f from z f' = g h:  n a_n = sum_{k=1}^{n} b_k c_{n-k}, c_0 = 1.
inline SchlichtSeries ctc_from(const SchlichtSeries& g, const TruncatedSeries& h, std::size_t order) {
  if (h[0] != complex{1.0, 0.0}) throw SeriesError("ctc_from requires h(0) = 1");
  if (order < 1) throw SeriesError("ctc_from needs order >= 1");
  if (g.order() < order || h.order() + 1 < order) throw SeriesError("inputs have insufficient order");
  TruncatedSeries f(order);
  f[1] = 1.0;
  for (std::size_t n = 2; n <= order; ++n) {
    complex sum{0.0, 0.0};
    for (std::size_t k = 1; k <= n; ++k) sum += g[k] * h[n - k];
    f[n] = sum / static_cast<double>(n);
  }
  return SchlichtSeries(std::move(f));
}

/// A close-to-convex function together with the data it was built from.
struct CtcInstance {
  SchlichtSeries g;
  TruncatedSeries h;
  TruncatedSeries p;
  SchlichtSeries f;
};

inline CtcInstance make_ctc(const TruncatedSeries& p, const TruncatedSeries& h, std::size_t order) {
  SchlichtSeries g = starlike_from(p, order);
  SchlichtSeries f = ctc_from(g, h, order);
  return {std::move(g), h, p, std::move(f)};
}

/// Builds f in K from the p-side and h-side measures.
inline CtcInstance make_ctc(const HerglotzMeasure& p_measure, const HerglotzMeasure& h_measure,
                            std::size_t order) {
  return make_ctc(caratheodory_series(p_measure, order), caratheodory_series(h_measure, order), order);
}

struct LeadingCoefficients {
  complex a2;
  complex a3;
  complex a4;
};

/// a_2, a_3, a_4 in closed form from c_1..c_3 and p_1..p_3:
///   2 a_2 = c_1 + p_1
///   3 a_3 = c_2 + c_1 p_1 + (p_1^2 + p_2)/2
///   4 a_4 = c_3 + c_2 p_1 + c_1 (p_1^2 + p_2)/2 + p_1^3/6 + p_1 p_2/2 + p_3/3
inline LeadingCoefficients a234_from_cp(complex c1, complex c2, complex c3, complex p1, complex p2,
                                        complex p3) {
  const complex a2 = (c1 + p1) / 2.0;
  const complex a3 = (c2 + c1 * p1 + (p1 * p1 + p2) / 2.0) / 3.0;
  const complex a4 = (c3 + c2 * p1 + c1 * (p1 * p1 + p2) / 2.0 + p1 * p1 * p1 / 6.0 + p1 * p2 / 2.0 +
                      p3 / 3.0) /
                     4.0;
  return {a2, a3, a4};
}

}  // namespace logcoef
