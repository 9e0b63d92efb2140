#include "logcoef/search.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace logcoef {
namespace {

bool same_record(const SampleRecord& a, const SampleRecord& b) {
  return a.sample_index == b.sample_index && a.p_measure == b.p_measure && a.h_measure == b.h_measure &&
         a.a2 == b.a2 && a.a3 == b.a3 && a.a4 == b.a4 && a.gamma3 == b.gamma3 && a.gamma3_abs == b.gamma3_abs;
}

TEST(Search, KnownConfigurations) {
  const auto koebe_rec = known_koebe(true);
  EXPECT_NEAR(koebe_rec.gamma3_abs, 1.0 / 3.0, 1e-15);
  const auto five = known_five_twelfths(true);
  EXPECT_NEAR(five.gamma3_abs, 5.0 / 12.0, 1e-15);
  EXPECT_TRUE(testing::complex_near(five.a2, 1.0, 1e-15));
  EXPECT_TRUE(testing::complex_near(five.a3, 1.0, 1e-15));
  EXPECT_TRUE(testing::complex_near(five.a4, 1.5, 1e-15));
  EXPECT_NEAR(known_five_twelfths(false).gamma3_abs, 5.0 / 12.0, 1e-15);
}

TEST(Search, EvaluateRecordMatchesPointMasses) {
  const auto r = evaluate_record(HerglotzMeasure::point(0.0), HerglotzMeasure::point(0.0));
  EXPECT_NEAR(std::abs(r.gamma1), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(r.gamma2), 0.5, 1e-15);
  EXPECT_NEAR(r.gamma3_abs, 1.0 / 3.0, 1e-15);
}

TEST(Search, InvalidConfigRejected) {
  SearchConfig cfg;
  cfg.samples = 0;
  EXPECT_THROW(run_search(cfg), std::invalid_argument);
  cfg.samples = 10;
  cfg.atoms_h = 0;
  EXPECT_THROW(run_search(cfg), std::invalid_argument);
  cfg.atoms_h = 1;
  cfg.workers = 0;
  EXPECT_THROW(run_search(cfg), std::invalid_argument);
}

TEST(Search, BestIncludesSeededConfiguration) {
  SearchConfig cfg;
  cfg.samples = 10'000;
  const auto res = run_search(cfg);
  EXPECT_EQ(res.evaluated, 10'000u);
  EXPECT_GE(res.best.gamma3_abs, 5.0 / 12.0);
  EXPECT_LE(res.best.gamma3_abs, 7.0 / 12.0 + 1e-12);
  EXPECT_EQ(res.gamma1_violations, 0u);
  EXPECT_EQ(res.gamma2_violations, 0u);
  EXPECT_EQ(res.gamma3_over_bound, 0u);
  EXPECT_EQ(res.histogram.total(), res.evaluated);
  EXPECT_EQ(res.histogram.overflow, 0u);
  EXPECT_EQ(res.max_gamma3, res.best.gamma3_abs);
}

TEST(Search, RealModeKeepsB2Real) {
  SearchConfig cfg;
  cfg.samples = 3000;
  cfg.keep_samples = true;
  const auto res = run_search(cfg);
  EXPECT_TRUE(res.best.p_measure.conjugate_symmetric());
  EXPECT_EQ(res.samples.size(), 3000u);
  Rng rng = stream_for(cfg.seed, 0);
  for (int i = 0; i < 500; ++i) {
    const auto m = sample_measure(1 + i % 3, true, rng);
    EXPECT_EQ(herglotz_coefficients(m, 1)[0].imag(), 0.0);
  }
}

TEST(Search, ReproducibleAcrossRunsAndWorkers) {
  SearchConfig cfg;
  cfg.samples = 20'000;
  cfg.seed = 77;
  cfg.milin_stride = 100;
  const auto a = run_search(cfg);
  const auto b = run_search(cfg);
  cfg.workers = 4;
  const auto c = run_search(cfg);
  EXPECT_TRUE(same_record(a.best, b.best));
  EXPECT_TRUE(same_record(a.best, c.best));
  EXPECT_EQ(a.histogram.counts, c.histogram.counts);
  EXPECT_EQ(a.max_gamma2, c.max_gamma2);
  EXPECT_EQ(a.milin_max, c.milin_max);
  EXPECT_EQ(a.milin_checked, 200u);
  EXPECT_LE(a.milin_max, 1e-12);
}

TEST(Search, ComplexModeRunsAndReports) {
  SearchConfig cfg;
  cfg.samples = 5000;
  cfg.real_b2 = false;
  const auto res = run_search(cfg);
  EXPECT_FALSE(res.best.p_measure.conjugate_symmetric());
  EXPECT_GE(res.best.gamma3_abs, 5.0 / 12.0);
  EXPECT_EQ(res.gamma1_violations, 0u);
}

TEST(Refine, ZeroStepsReturnsInput) {
  Rng rng = stream_for(1, 0);
  const auto start = known_koebe(true);
  EXPECT_TRUE(same_record(refine(start, 0, rng), start));
}

TEST(Refine, NeverDecreases) {
  Rng rng = stream_for(71, 0);
  for (int i = 0; i < 40; ++i) {
    const auto start = evaluate_record(sample_measure(1 + i % 3, true, rng), sample_measure(1 + i % 4, false, rng));
    const auto out = refine(start, 200, rng);
    EXPECT_GE(out.gamma3_abs, start.gamma3_abs);
    EXPECT_TRUE(out.p_measure.conjugate_symmetric());
    double total = 0.0;
    for (const auto& a : out.h_measure.atoms()) total += a.weight;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Refine, FromKnownConfigurations) {
  Rng rng = stream_for(72, 0);
  EXPECT_GE(refine(known_koebe(true), 500, rng).gamma3_abs, 1.0 / 3.0);
  const auto r = refine(known_five_twelfths(true), 10'000, rng);
  EXPECT_GE(r.gamma3_abs, 5.0 / 12.0);
  EXPECT_LE(r.gamma3_abs, 7.0 / 12.0 + 1e-12);
}

TEST(Histogram, BinsAndOverflow) {
  Histogram h;
  h.add(0.0);
  h.add(1.0 / 48.0 + 1e-15);
  h.add(7.0 / 12.0);
  h.add(0.6);
  EXPECT_EQ(h.counts[0], 1u);
  EXPECT_EQ(h.counts[1], 1u);
  EXPECT_EQ(h.counts[Histogram::kBins - 1], 1u);
  EXPECT_EQ(h.overflow, 1u);
  EXPECT_EQ(h.total(), 4u);
}

}  // namespace
}  // namespace logcoef
