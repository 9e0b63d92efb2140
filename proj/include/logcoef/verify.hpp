#pragma once

// Property suite behind `logcoef verify`: series oracles, closed forms,
// the starlike identity, the Lemma round trip and the bound chain.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "logcoef/caratheodory.hpp"
#include "logcoef/classes.hpp"
#include "logcoef/functionals.hpp"
#include "logcoef/objective.hpp"
#include "logcoef/random.hpp"
#include "logcoef/series.hpp"

namespace logcoef {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;   // worst observed error (or worst excess over the bound)
  double tolerance = 0.0;
  std::uint64_t cases = 0;
};

struct VerifyConfig {
  std::uint64_t seed = 1;
  std::uint64_t cases = 1000;  // random cases per check; the bound chain and expanded-form checks use 100x
  // Round-trip order. Quotients of random series grow roughly like 2^N, so
  // at N = 16 the absolute 1e-12 budget is eaten by storing q in doubles.
  std::size_t order = 10;
};

namespace detail {

inline CheckResult finish(std::string name, double worst, double tol, std::uint64_t cases) {
  return {std::move(name), worst <= tol, worst, tol, cases};
}

template <class URBG>
TruncatedSeries random_series(URBG& rng, std::size_t order, complex leading) {
  TruncatedSeries s(order);
  s[0] = leading;
  for (std::size_t n = 1; n <= order; ++n) s[n] = uniform_disk(rng);
  return s;
}

inline double max_coeff_error(const TruncatedSeries& a, const TruncatedSeries& b) {
  double e = 0.0;
  for (std::size_t n = 0; n <= a.order(); ++n) e = std::max(e, std::abs(a[n] - b[n]));
  return e;
}

}  // namespace detail

inline CheckResult check_koebe_gammas(std::size_t count = 20) {
  const GammaVector g = gamma_vector(koebe(count + 1), count);
  double worst = 0.0;
  for (std::size_t n = 1; n <= count; ++n) worst = std::max(worst, std::abs(g.gamma(n) - 1.0 / static_cast<double>(n)));
  return detail::finish("koebe_gamma_n_equals_1_over_n", worst, 1e-12, count);
}

/// exp(log a) = a with a_0 = 1 and a_n uniform in the unit disk.
inline CheckResult check_log_exp_round_trip(const VerifyConfig& cfg) {
  Rng rng = stream_for(cfg.seed, 11);
  double worst = 0.0;
  for (std::uint64_t i = 0; i < cfg.cases; ++i) {
    const auto a = detail::random_series(rng, cfg.order, 1.0);
    worst = std::max(worst, detail::max_coeff_error(exp_series(log_series(a)), a));
  }
  return detail::finish("series_exp_log_round_trip", worst, 1e-12, cfg.cases);
}

/// mul(div(a, b), b) = a with a_n, b_n (n >= 1) uniform in the unit disk.
inline CheckResult check_div_round_trip(const VerifyConfig& cfg) {
  Rng rng = stream_for(cfg.seed, 12);
  double worst = 0.0;
  for (std::uint64_t i = 0; i < cfg.cases; ++i) {
    const auto a = detail::random_series(rng, cfg.order, uniform_disk(rng));
    const auto b = detail::random_series(rng, cfg.order, 1.0);
    worst = std::max(worst, detail::max_coeff_error(mul(div(a, b), b), a));
  }
  return detail::finish("series_div_mul_round_trip", worst, 1e-12, cfg.cases);
}

/// gamma_closed against gamma_vector on random schlicht series.
inline CheckResult check_closed_forms(const VerifyConfig& cfg) {
  Rng rng = stream_for(cfg.seed, 13);
  double worst = 0.0;
  for (std::uint64_t i = 0; i < cfg.cases; ++i) {
    const std::vector<complex> tail{uniform_disk(rng), uniform_disk(rng), uniform_disk(rng)};
    const auto f = SchlichtSeries::from_tail(tail);
    const auto series = gamma_vector(f, 3);
    const auto closed = gamma_closed(tail[0], tail[1], tail[2]);
    for (std::size_t n = 0; n < 3; ++n) worst = std::max(worst, std::abs(series.gammas[n] - closed[n]));
  }
  return detail::finish("gamma_closed_vs_log_series", worst, 1e-10, cfg.cases);
}

/// gamma3_expanded against a_4 - a_2 a_3 + a_2^3/3 from a234_from_cp.
inline CheckResult check_expanded_route(const VerifyConfig& cfg) {
  Rng rng = stream_for(cfg.seed, 14);
  const std::uint64_t cases = 100 * cfg.cases;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < cases; ++i) {
    complex v[6];
    for (auto& z : v) z = uniform_disk(rng, 2.0);
    const auto a = a234_from_cp(v[0], v[1], v[2], v[3], v[4], v[5]);
    const complex direct = a.a4 - a.a2 * a.a3 + a.a2 * a.a2 * a.a2 / 3.0;
    worst = std::max(worst, std::abs(gamma3_expanded(v[0], v[1], v[2], v[3], v[4], v[5]) - direct));
  }
  return detail::finish("gamma3_expanded_route_equivalence", worst, 1e-12, cases);
}

/// 2 n gamma_n(g) = p_n and |gamma_n(g)| <= 1/n for starlike g, n <= 10.
inline CheckResult check_starlike_identity(const VerifyConfig& cfg) {
  Rng rng = stream_for(cfg.seed, 15);
  constexpr std::size_t kN = 10;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < cfg.cases; ++i) {
    const auto m = sample_measure(1 + i % 4, i % 2 == 0, rng);
    const auto p = caratheodory_series(m, kN);
    const auto g = gamma_vector(starlike_from(p, kN + 1), kN);
    for (std::size_t n = 1; n <= kN; ++n) {
      const double dn = static_cast<double>(n);
      worst = std::max(worst, std::abs(2.0 * dn * g.gamma(n) - p[n]));
      worst = std::max(worst, std::abs(g.gamma(n)) - 1.0 / dn);
    }
  }
  return detail::finish("starlike_2n_gamma_n_equals_p_n", worst, 1e-12, cfg.cases);
}

/// lemma_forward(lemma_invert(c)) = c for sampled P-functions rotated to c_1 >= 0.
inline CheckResult check_lemma_round_trip(const VerifyConfig& cfg) {
  Rng rng = stream_for(cfg.seed, 16);
  double worst = 0.0;
  std::uint64_t used = 0;
  for (std::uint64_t i = 0; i < cfg.cases; ++i) {
    const auto m0 = sample_measure(1 + i % 5, false, rng);
    const double phase = std::arg(herglotz_coefficients(m0, 1)[0]);
    const auto c = herglotz_coefficients(m0.rotated(-phase), 3);
    const double c1 = std::max(0.0, c[0].real());
    if (!(c1 < 2.0 - 1e-4)) continue;  // inversion conditioning ~ 1/(4 - c1^2)
    const LemmaInversion inv = lemma_invert(c1, c[1], c[2]);
    if (!inv.t) continue;
    const auto fwd = lemma_forward({c1, inv.x, *inv.t});
    worst = std::max({worst, std::abs(fwd.c2 - c[1]), std::abs(fwd.c3 - c[2])});
    ++used;
  }
  return detail::finish("lemma_invert_forward_round_trip", worst, 1e-10, used);
}

/// |a_4 - a_2 a_3 + a_2^3/3| <= F(c_1, |q|, |x|, |y|) on random Lemma parameters.
inline CheckResult check_bound_chain(const VerifyConfig& cfg) {
  Rng rng = stream_for(cfg.seed, 17);
  std::uniform_real_distribution<double> c_dist(0.0, 2.0), q_dist(-2.0, 2.0);
  const std::uint64_t cases = 100 * cfg.cases;
  double worst = -1.0;
  for (std::uint64_t i = 0; i < cases; ++i) {
    BoundChainInput in;
    in.c1 = c_dist(rng);
    in.x = uniform_disk(rng);
    in.t = uniform_disk(rng);
    in.q = q_dist(rng);
    in.y = uniform_disk(rng);
    in.s = uniform_disk(rng);
    const BoundChain b = bound_chain_check(in);
    worst = std::max(worst, b.lhs - b.rhs);
  }
  return detail::finish("bound_chain_lhs_le_F", worst, 1e-12, cases);
}

inline std::vector<CheckResult> run_property_suite(const VerifyConfig& cfg) {
  return {check_koebe_gammas(),          check_log_exp_round_trip(cfg), check_div_round_trip(cfg),
          check_closed_forms(cfg),       check_expanded_route(cfg),     check_starlike_identity(cfg),
          check_lemma_round_trip(cfg),   check_bound_chain(cfg)};
}

}  // namespace logcoef
