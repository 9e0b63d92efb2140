#pragma once

// Monte-Carlo and hill-climbing search for extremal close-to-convex functions.
//
// Each sample is f in K built from a p-side measure (the starlike factor g)
// and an h-side measure. With real_b2 the p-side measure is conjugate
// symmetric, so b_2 = p_1 is real; the h-side is always unrestricted.
//
// Random draws are grouped in fixed-size chunks with one stream per
// (seed, chunk); the best record is the max of |gamma_3| with ties going to
// the lower sample index. Results therefore do not depend on the worker count.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "logcoef/caratheodory.hpp"
#include "logcoef/classes.hpp"
#include "logcoef/functionals.hpp"
#include "logcoef/parallel.hpp"
#include "logcoef/random.hpp"

namespace logcoef {

inline constexpr double kGamma1Bound = 1.0;
inline constexpr double kGamma2Bound = 11.0 / 18.0;
inline constexpr double kGamma3Bound = 7.0 / 12.0;
inline constexpr double kBoundSlack = 1e-12;

struct SearchConfig {
  std::uint64_t samples = 10'000;
  std::size_t atoms_g = 3;  // max atoms (pairs under real_b2) in the p-side measure
  std::size_t atoms_h = 3;  // max atoms in the h-side measure
  bool real_b2 = true;
  std::uint64_t refine_steps = 0;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::uint64_t milin_stride = 0;  // check Milin on every k-th sample; 0 disables
  std::size_t milin_max_n = 8;
  bool keep_samples = false;      // retain per-sample |gamma| rows (CSV dumps)

  void validate() const {
    if (samples < 1) throw std::invalid_argument("search: samples must be >= 1");
    if (atoms_g < 1 || atoms_h < 1) throw std::invalid_argument("search: atom counts must be >= 1");
    if (workers < 1) throw std::invalid_argument("search: workers must be >= 1");
    if (milin_max_n < 2) throw std::invalid_argument("search: Milin check needs n >= 2");
  }
};

struct SampleRecord {
  std::uint64_t sample_index = 0;
  HerglotzMeasure p_measure = HerglotzMeasure::point(0.0);
  HerglotzMeasure h_measure = HerglotzMeasure::point(0.0);
  complex a2{}, a3{}, a4{};
  complex gamma1{}, gamma2{}, gamma3{};
  double gamma3_abs = 0.0;
};

/// f in K from the two measures, with a_2..a_4 and gamma_1..gamma_3.
inline SampleRecord evaluate_record(const HerglotzMeasure& p_measure, const HerglotzMeasure& h_measure,
                                    std::uint64_t index = 0) {
  const CtcInstance inst = make_ctc(p_measure, h_measure, 4);
  const GammaVector g = gamma_vector(inst.f, 3);
  SampleRecord r;
  r.sample_index = index;
  r.p_measure = p_measure;
  r.h_measure = h_measure;
  r.a2 = inst.f[2];
  r.a3 = inst.f[3];
  r.a4 = inst.f[4];
  r.gamma1 = g.gamma(1);
  r.gamma2 = g.gamma(2);
  r.gamma3 = g.gamma(3);
  r.gamma3_abs = std::abs(r.gamma3);
  return r;
}

/// Koebe-side g (atom at 0) with h = (1 + z^3)/(1 - z^3): c = (0, 0, 2), |gamma_3| = 5/12.
inline SampleRecord known_five_twelfths(bool real_b2) {
  const auto p = real_b2 ? HerglotzMeasure::symmetric({{0.0, 1.0}}) : HerglotzMeasure::point(0.0);
  const double third = 2.0 * std::numbers::pi / 3.0;
  return evaluate_record(p, HerglotzMeasure::uniform({0.0, third, 2.0 * third}), 0);
}

/// The Koebe function, |gamma_3| = 1/3.
inline SampleRecord known_koebe(bool real_b2) {
  const auto p = real_b2 ? HerglotzMeasure::symmetric({{0.0, 1.0}}) : HerglotzMeasure::point(0.0);
  return evaluate_record(p, HerglotzMeasure::point(0.0), 1);
}

/// Counts of |gamma_3| in bins of width 1/48 over [0, 7/12], plus overflow.
struct Histogram {
  static constexpr std::size_t kBins = 28;
  static constexpr double kWidth = 1.0 / 48.0;

  std::vector<std::uint64_t> counts = std::vector<std::uint64_t>(kBins, 0);
  std::uint64_t overflow = 0;

  void add(double value) {
    if (value > kGamma3Bound + kBoundSlack) {
      ++overflow;
      return;
    }
    const auto bin = static_cast<std::size_t>(std::max(0.0, value) * 48.0);
    ++counts[std::min(bin, kBins - 1)];
  }

  void merge(const Histogram& o) {
    for (std::size_t k = 0; k < kBins; ++k) counts[k] += o.counts[k];
    overflow += o.overflow;
  }

  std::uint64_t total() const {
    std::uint64_t t = overflow;
    for (auto c : counts) t += c;
    return t;
  }
};

struct SampleSummary {
  std::uint64_t sample_index;
  double gamma1_abs;
  double gamma2_abs;
  double gamma3_abs;
};

struct SearchResult {
  SampleRecord best;          // after refinement
  SampleRecord best_sampled;  // before refinement
  Histogram histogram;
  std::uint64_t evaluated = 0;
  double max_gamma1 = 0.0;
  double max_gamma2 = 0.0;
  double max_gamma3 = 0.0;
  std::uint64_t gamma1_violations = 0;
  std::uint64_t gamma2_violations = 0;
  std::uint64_t gamma3_over_bound = 0;  // |gamma_3| > 7/12 (a violation when real_b2)
  std::uint64_t milin_checked = 0;
  double milin_max = -std::numeric_limits<double>::infinity();
  std::vector<SampleSummary> samples;
};

namespace detail {

inline constexpr std::uint64_t kSearchChunk = 4096;

inline bool better(const SampleRecord& a, const SampleRecord& b) {
  if (a.gamma3_abs != b.gamma3_abs) return a.gamma3_abs > b.gamma3_abs;
  return a.sample_index < b.sample_index;
}

struct ChunkResult {
  bool has_best = false;
  SampleRecord best;
  Histogram histogram;
  std::uint64_t evaluated = 0;
  double max_gamma1 = 0.0, max_gamma2 = 0.0, max_gamma3 = 0.0;
  std::uint64_t gamma1_violations = 0, gamma2_violations = 0, gamma3_over_bound = 0;
  std::uint64_t milin_checked = 0;
  double milin_max = -std::numeric_limits<double>::infinity();
  std::vector<SampleSummary> samples;

  void record(const SampleRecord& r, const SearchConfig& cfg) {
    ++evaluated;
    const double g1 = std::abs(r.gamma1), g2 = std::abs(r.gamma2), g3 = r.gamma3_abs;
    max_gamma1 = std::max(max_gamma1, g1);
    max_gamma2 = std::max(max_gamma2, g2);
    max_gamma3 = std::max(max_gamma3, g3);
    if (g1 > kGamma1Bound + kBoundSlack) ++gamma1_violations;
    if (g2 > kGamma2Bound + kBoundSlack) ++gamma2_violations;
    if (g3 > kGamma3Bound + kBoundSlack) ++gamma3_over_bound;
    histogram.add(g3);
    if (cfg.keep_samples) samples.push_back({r.sample_index, g1, g2, g3});
    if (cfg.milin_stride > 0 && r.sample_index % cfg.milin_stride == 0) {
      const CtcInstance inst = make_ctc(r.p_measure, r.h_measure, cfg.milin_max_n + 1);
      for (std::size_t n = 2; n <= cfg.milin_max_n; ++n) milin_max = std::max(milin_max, milin_lhs(inst.f, n));
      ++milin_checked;
    }
    if (!has_best || better(r, best)) {
      best = r;
      has_best = true;
    }
  }
};

template <class URBG>
std::size_t draw_count(std::size_t max_count, URBG& rng) {
  return std::uniform_int_distribution<std::size_t>(1, max_count)(rng);
}

}  // namespace detail

/// Coordinate hill climbing on atom angles and weights of both measures.
/// Each candidate evaluation uses one step; the step size halves after a
/// sweep without improvement, down to 1e-9. Symmetry of the p-side measure
/// is preserved because it is perturbed through its pair units.
template <class URBG>
SampleRecord refine(const SampleRecord& start, std::uint64_t steps, URBG& rng) {
  struct Genes {
    std::vector<Atom> units;
    bool symmetric;
    HerglotzMeasure measure() const {
      return symmetric ? HerglotzMeasure::symmetric(units) : HerglotzMeasure(units);
    }
  };
  struct Coordinate {
    int side;  // 0: p-side, 1: h-side
    std::size_t unit;
    bool angle;
  };

  std::array<Genes, 2> genes{Genes{start.p_measure.units(), start.p_measure.conjugate_symmetric()},
                             Genes{start.h_measure.units(), start.h_measure.conjugate_symmetric()}};
  std::vector<Coordinate> coords;
  for (int side = 0; side < 2; ++side) {
    for (std::size_t j = 0; j < genes[side].units.size(); ++j) {
      coords.push_back({side, j, true});
      if (genes[side].units.size() > 1) coords.push_back({side, j, false});
    }
  }

  SampleRecord current = start;
  constexpr double kFloor = 1e-9;
  double step = 0.25;
  std::uint64_t used = 0;
  while (used < steps) {
    std::shuffle(coords.begin(), coords.end(), rng);
    bool improved = false;
    for (const Coordinate& co : coords) {
      for (double sign : {1.0, -1.0}) {
        if (used >= steps) break;
        ++used;
        std::array<Genes, 2> trial = genes;
        auto& units = trial[co.side].units;
        if (co.angle) {
          units[co.unit].angle += sign * step * std::numbers::pi;
        } else {
          units[co.unit].weight = std::max(0.0, units[co.unit].weight + sign * step);
          double total = 0.0;
          for (const auto& u : units) total += u.weight;
          if (!(total > 0.0)) continue;
          for (auto& u : units) u.weight /= total;
        }
        SampleRecord cand;
        try {
          cand = evaluate_record(trial[0].measure(), trial[1].measure(), start.sample_index);
        } catch (const MeasureError&) {
          continue;
        }
        if (cand.gamma3_abs > current.gamma3_abs) {
          current = std::move(cand);
          genes = std::move(trial);
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      if (step <= kFloor) break;
      step = std::max(0.5 * step, kFloor);
    }
  }
  return current;
}

/// Samples `cfg.samples` instances (indices 0 and 1 are the known
/// configurations), then refines the best one.
inline SearchResult run_search(const SearchConfig& cfg) {
  cfg.validate();
  const std::uint64_t chunks = (cfg.samples + detail::kSearchChunk - 1) / detail::kSearchChunk;
  std::vector<detail::ChunkResult> results(static_cast<std::size_t>(chunks));

  parallel_for(static_cast<std::size_t>(chunks), cfg.workers, [&](std::size_t chunk) {
    detail::ChunkResult& out = results[chunk];
    Rng rng = stream_for(cfg.seed, chunk);
    const std::uint64_t begin = chunk * detail::kSearchChunk;
    const std::uint64_t end = std::min(cfg.samples, begin + detail::kSearchChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      if (i == 0) {
        out.record(known_five_twelfths(cfg.real_b2), cfg);
        continue;
      }
      if (i == 1) {
        out.record(known_koebe(cfg.real_b2), cfg);
        continue;
      }
      const auto p = sample_measure(detail::draw_count(cfg.atoms_g, rng), cfg.real_b2, rng);
      const auto h = sample_measure(detail::draw_count(cfg.atoms_h, rng), false, rng);
      out.record(evaluate_record(p, h, i), cfg);
    }
  });

  SearchResult res;
  bool has_best = false;
  for (auto& r : results) {
    if (r.has_best && (!has_best || detail::better(r.best, res.best_sampled))) {
      res.best_sampled = r.best;
      has_best = true;
    }
    res.histogram.merge(r.histogram);
    res.evaluated += r.evaluated;
    res.max_gamma1 = std::max(res.max_gamma1, r.max_gamma1);
    res.max_gamma2 = std::max(res.max_gamma2, r.max_gamma2);
    res.max_gamma3 = std::max(res.max_gamma3, r.max_gamma3);
    res.gamma1_violations += r.gamma1_violations;
    res.gamma2_violations += r.gamma2_violations;
    res.gamma3_over_bound += r.gamma3_over_bound;
    res.milin_checked += r.milin_checked;
    res.milin_max = std::max(res.milin_max, r.milin_max);
    if (cfg.keep_samples) res.samples.insert(res.samples.end(), r.samples.begin(), r.samples.end());
  }

  res.best = res.best_sampled;
  if (cfg.refine_steps > 0) {
    Rng rng = stream_for(cfg.seed, std::numeric_limits<std::uint64_t>::max());
    res.best = refine(res.best_sampled, cfg.refine_steps, rng);
    if (res.best.gamma3_abs > kGamma3Bound + kBoundSlack) ++res.gamma3_over_bound;
    res.max_gamma3 = std::max(res.max_gamma3, res.best.gamma3_abs);
  }
  return res;
}

}  // namespace logcoef
