// Acceptance suite: one PASS/FAIL line per criterion, with the measurements
// behind each verdict on indented lines. `--criterion N` runs a single one.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "logcoef/certify.hpp"
#include "logcoef/cli.hpp"
#include "logcoef/objective.hpp"
#include "logcoef/parallel.hpp"
#include "logcoef/report.hpp"
#include "logcoef/search.hpp"
#include "logcoef/verify.hpp"

namespace {

using namespace logcoef;
using quad = __float128;

class Criterion {
public:
  explicit Criterion(int id) : id_(id) {}

  /// Records one measured check.
  bool check(bool ok, const std::string& what) {
    lines_.push_back(std::string(ok ? "    ok    " : "    FAIL  ") + what);
    passed_ = passed_ && ok;
    return ok;
  }

  int finish(const std::string& title) const {
    std::cout << (passed_ ? "PASS" : "FAIL") << " criterion " << id_ << ": " << title << '\n';
    for (const auto& l : lines_) std::cout << l << '\n';
    std::cout.flush();
    return passed_ ? 0 : 1;
  }

private:
  int id_;
  bool passed_ = true;
  std::vector<std::string> lines_;
};

std::string num(double x, int digits = 12) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t hardware_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Radical inverse in base b: the Halton coordinate of index i.
double halton(std::uint64_t i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

std::array<double, 4> halton_point(std::uint64_t i) {
  constexpr unsigned bases[4] = {2, 3, 5, 7};
  std::array<double, 4> x{};
  for (int k = 0; k < 4; ++k) x[k] = halton(i, bases[k]) * kDomainUpper[k];
  return x;
}

/// 48F in binary128, an oracle independent of the interval code.
quad f48_quad(const std::array<double, 4>& x) {
  const quad c = x[0], p = x[1], u = x[2], v = x[3];
  const quad X = 4 - c * c, Y = 4 - p * p;
  return c * c * c + c * p * p + 2 * p * p * p + 2 * c * u * X + 3 * c * u * u * X + 6 * X * (1 - u * u) +
         2 * p * u * X + c * v * Y + 3 * p * v * Y + p * v * v * Y + 2 * Y * (1 - v * v);
}

// ---------------------------------------------------------------------------

int criterion1() {
  Criterion cr(1);
  const auto path = std::filesystem::temp_directory_path() / "logcoef_acceptance_certify.json";
  std::ostringstream out, err;
  const auto t0 = std::chrono::steady_clock::now();
  const int code = dispatch({"certify", "--target", "7/6", "--tol", "1e-6", "--out", path.string()}, out, err);
  const double secs = seconds_since(t0);
  cr.check(code == 0, "exit code " + std::to_string(code) + " (want 0)");
  const json j = read_report(path.string());
  const auto rep = certification_from_json(j);
  cr.check(rep.verdict == Verdict::certified, "verdict " + std::string(to_string(rep.verdict)));
  cr.check(rep.certified_upper_bound <= 56.0 + 1e-6,
           "sup 48F <= " + num(rep.certified_upper_bound, 17) + " <= 56 + 1e-6");
  cr.check(secs < 60.0, "wall clock " + num(secs, 3) + " s < 60 s");
  cr.check(rep.boxes_processed < 10'000'000, "boxes " + std::to_string(rep.boxes_processed) + " < 1e7");
  std::filesystem::remove(path);
  return cr.finish("certify --target 7/6 --tol 1e-6 is certified within budget");
}

int criterion2() {
  Criterion cr(2);
  const auto faces = certify_faces(1e-8, 10'000'000, hardware_workers());
  auto get = [&](FaceId id) -> const FaceReport& { return faces[static_cast<std::size_t>(id)]; };
  auto near = [&](FaceId id, double want, double tol) {
    const auto& f = get(id);
    const std::string name(face_info(id).name);
    cr.check(std::abs(f.computed_max - want) <= tol, name + " max " + num(f.computed_max) + " vs " + num(want) +
                                                         " +- " + num(tol, 3) + " (certified upper " +
                                                         num(f.certified_upper) + ")");
  };

  near(FaceId::G1, 7.0 / 6.0, 1e-9);
  cr.check(std::abs(get(FaceId::G1).certified_upper - 7.0 / 6.0) <= 1e-9,
           "G1 certified upper " + num(get(FaceId::G1).certified_upper, 17) + " within 1e-9 of 7/6");
  cr.check(std::abs(get(FaceId::G1).argmax[0] - 2.0) <= 1e-9, "G1 argmax p = " + num(get(FaceId::G1).argmax[0]));
  near(FaceId::G2, 0.696, 2e-3);
  near(FaceId::G3, 23.0 / 24.0, 1e-6);
  near(FaceId::G4, 1.005, 2e-3);
  near(FaceId::G5, 0.9531, 2e-3);
  const auto& g5 = get(FaceId::G5);
  const double c5 = 2.0 - 2.0 * std::sqrt(6.0) / 3.0, p5 = 4.0 / 3.0;
  cr.check(std::abs(g5.argmax[0] - c5) <= 5e-3 && std::abs(g5.argmax[1] - p5) <= 5e-3,
           "G5 argmax (" + num(g5.argmax[0], 6) + ", " + num(g5.argmax[1], 6) + ") vs (" + num(c5, 6) + ", " +
               num(p5, 6) + ") +- 5e-3");
  near(FaceId::G6, 5.0 / 6.0, 1e-6);
  cr.check(true, "G6 displayed expression itself peaks at " + num(get(FaceId::G6).expression_max) +
                     " (argmax of closing bound (" + num(get(FaceId::G6).argmax[0], 6) + ", " +
                     num(get(FaceId::G6).argmax[1], 6) + "))");
  near(FaceId::G7, 1.005, 2e-3);
  const auto& g7 = get(FaceId::G7);
  cr.check(std::abs(g7.argmax[1] - 2.0) <= 5e-3 && std::abs(g7.argmax[2] - 1.0) <= 5e-3,
           "G7 argmax p = " + num(g7.argmax[1], 6) + ", u = " + num(g7.argmax[2], 6) + " (want 2, 1)");
  near(FaceId::G8, 1.052, 2e-3);
  double worst = 0.0;
  std::string worst_name;
  for (const auto& f : faces) {
    if (f.certified_upper > worst) {
      worst = f.certified_upper;
      worst_name = face_info(f.id).name;
    }
  }
  cr.check(worst <= 7.0 / 6.0 + 1e-9, "largest certified face max " + num(worst) + " (" + worst_name + ") <= 7/6 + 1e-9");
  return cr.finish("face maxima match the quoted table");
}

int criterion3() {
  Criterion cr(3);
  VerifyConfig cfg;
  cfg.seed = 3003;
  cfg.cases = 1000;
  const auto koebe_check = check_koebe_gammas(20);
  cr.check(koebe_check.passed, "Koebe gamma_n = 1/n, n <= 20: max error " + num(koebe_check.max_error, 3) + " <= 1e-12");
  const auto closed = check_closed_forms(cfg);
  cr.check(closed.passed && closed.cases == 1000,
           "closed forms vs log series on " + std::to_string(closed.cases) + " series: max error " +
               num(closed.max_error, 3) + " <= 1e-10");
  const auto route = check_expanded_route(cfg);
  cr.check(route.passed && route.cases == 100'000,
           "expanded gamma_3 vs coefficient route on " + std::to_string(route.cases) + " six-tuples: max error " +
               num(route.max_error, 3) + " <= 1e-12");
  return cr.finish("series and closed-form oracles agree");
}

int criterion4() {
  Criterion cr(4);
  VerifyConfig cfg;
  cfg.seed = 4004;
  cfg.cases = 1000;
  const auto r = check_starlike_identity(cfg);
  cr.check(r.passed && r.cases == 1000, "2n gamma_n = p_n and |gamma_n| <= 1/n, n <= 10, on " +
                                            std::to_string(r.cases) + " starlike functions: worst " +
                                            num(r.max_error, 3) + " <= 1e-12");
  return cr.finish("starlike logarithmic identity");
}

int criterion5() {
  Criterion cr(5);
  SearchConfig cfg;
  cfg.samples = 1'000'000;
  cfg.real_b2 = true;
  cfg.seed = 5005;
  cfg.milin_stride = 100;  // 10^4 subsample
  cfg.milin_max_n = 8;
  cfg.workers = hardware_workers();
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = run_search(cfg);
  const double secs = seconds_since(t0);
  cr.check(res.evaluated == 1'000'000, "evaluated " + std::to_string(res.evaluated) + " instances");
  cr.check(res.gamma1_violations == 0 && res.max_gamma1 <= 1.0 + 1e-12,
           "max |gamma_1| = " + num(res.max_gamma1) + " <= 1 + 1e-12");
  cr.check(res.gamma2_violations == 0 && res.max_gamma2 <= 11.0 / 18.0 + 1e-12,
           "max |gamma_2| = " + num(res.max_gamma2) + " <= 11/18 + 1e-12");
  cr.check(res.gamma3_over_bound == 0 && res.max_gamma3 <= 7.0 / 12.0 + 1e-12,
           "max |gamma_3| = " + num(res.max_gamma3) + " <= 7/12 + 1e-12");
  cr.check(res.milin_checked == 10'000 && res.milin_max <= 1e-12,
           "Milin over " + std::to_string(res.milin_checked) + " functions, n <= 8: max " + num(res.milin_max, 4) +
               " <= 1e-12");
  cr.check(secs < 300.0, "runtime " + num(secs, 3) + " s < 300 s (workers: " + std::to_string(cfg.workers) + ")");
  return cr.finish("coefficient bounds hold on 1e6 sampled close-to-convex functions");
}

int criterion6() {
  Criterion cr(6);
  VerifyConfig cfg;
  cfg.seed = 6006;
  cfg.cases = 1000;
  const auto r = check_bound_chain(cfg);
  cr.check(r.passed && r.cases == 100'000, "lhs - F over " + std::to_string(r.cases) + " draws: max " +
                                               num(r.max_error, 4) + " <= 1e-12");
  BoundChainInput k;
  k.c1 = 2.0;
  k.q = 2.0;
  const auto eq = bound_chain_check(k);
  cr.check(std::abs(eq.lhs - 2.0 / 3.0) <= 1e-12 && std::abs(eq.rhs - 2.0 / 3.0) <= 1e-12,
           "Koebe point: lhs " + num(eq.lhs, 17) + ", rhs " + num(eq.rhs, 17) + " (both 2/3)");
  return cr.finish("bound chain |expanded gamma_3| <= F");
}

int criterion7() {
  Criterion cr(7);
  const BoxObjective f(f48_polynomial());
  Rng rng = stream_for(7007, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uint64_t outside = 0, points = 0;
  for (int i = 0; i < 10'000; ++i) {
    std::array<double, 4> lo{}, hi{};
    for (int k = 0; k < 4; ++k) {
      const double a = unit(rng) * kDomainUpper[k], b = unit(rng) * kDomainUpper[k];
      lo[k] = std::min(a, b);
      hi[k] = std::max(a, b);
    }
    const Box box = Box::from_bounds(lo, hi);
    const Interval enc = f.enclose(box), nat = f.natural(box);
    for (int j = 0; j < 100; ++j) {
      std::array<double, 4> x{};
      for (int k = 0; k < 4; ++k) x[k] = std::clamp(lo[k] + unit(rng) * (hi[k] - lo[k]), lo[k], hi[k]);
      const quad v = f48_quad(x);
      ++points;
      if (v < quad(enc.lo) || v > quad(enc.hi) || v < quad(nat.lo) || v > quad(nat.hi)) ++outside;
    }
  }
  cr.check(outside == 0, std::to_string(points) + " box samples, " + std::to_string(outside) +
                             " outside their enclosure (binary128 oracle)");

  const auto cert = certify_target(Rational(7, 6), 1e-6, 10'000'000, 1);
  const auto tight = maximize(f, full_domain(), 1e-6, 10'000'000, hardware_workers());
  constexpr std::uint64_t kPoints = 10'000'000;
  constexpr std::uint64_t kChunk = 100'000;
  std::vector<double> chunk_max(kPoints / kChunk, -1.0);
  std::atomic<std::uint64_t> exceed{0};
  parallel_for(chunk_max.size(), hardware_workers(), [&](std::size_t c) {
    double m = -1.0;
    for (std::uint64_t i = c * kChunk; i < (c + 1) * kChunk; ++i) {
      const auto x = halton_point(i + 1);
      const Interval v = f.value_enclosure(x);
      m = std::max(m, v.hi);
      if (v.hi > tight.certified_upper_bound) exceed.fetch_add(1, std::memory_order_relaxed);
    }
    chunk_max[c] = m;
  });
  const double sampled = *std::max_element(chunk_max.begin(), chunk_max.end());
  cr.check(exceed.load() == 0 && sampled <= cert.certified_upper_bound,
           std::to_string(kPoints) + " Halton points: max 48F " + num(sampled, 15) + " <= tight bound " +
               num(tight.certified_upper_bound, 15) + " <= certified " + num(cert.certified_upper_bound, 15));
  return cr.finish("interval enclosures and certified bounds are sound");
}

int criterion8() {
  Criterion cr(8);
  Rng rng = stream_for(8008, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    std::array<double, 4> x{};
    for (int k = 0; k < 4; ++k) x[k] = (0.001 + 0.998 * unit(rng)) * kDomainUpper[k];
    const FPoint pt{x[0], x[1], x[2], x[3]};
    const auto g = grad_f(pt);
    double err = 0.0, norm = 0.0;
    for (int k = 0; k < 4; ++k) {
      auto xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const double fd = (f_value({xp[0], xp[1], xp[2], xp[3]}) - f_value({xm[0], xm[1], xm[2], xm[3]})) / (2.0 * h);
      err = std::max(err, std::abs(fd - g[k]));
      norm = std::max(norm, std::abs(g[k]));
    }
    worst = std::max(worst, err / norm);
  }
  cr.check(worst < 1e-6, "gradient vs central differences (h = 1e-5) at 1000 interior points: max relative error " +
                             num(worst, 3) + " < 1e-6");

  // Newton on grad F = 0 from Halton starts, exact Hessian from the polynomial.
  const Polynomial& poly = f48_polynomial();
  std::array<HornerForm, 4> grad;
  std::array<std::array<HornerForm, 4>, 4> hess;
  for (std::size_t a = 0; a < 4; ++a) {
    const Polynomial da = poly.derivative(a);
    grad[a] = HornerForm(da);
    for (std::size_t b = 0; b < 4; ++b) hess[a][b] = HornerForm(da.derivative(b));
  }
  const HornerForm value(poly);
  constexpr int kStarts = 20'000;
  int converged = 0, elsewhere = 0;
  double best_stationary = -1.0;
  for (int s = 0; s < kStarts; ++s) {
    const auto x0 = halton_point(static_cast<std::uint64_t>(s) + 1);
    Eigen::Vector4d x(x0[0], x0[1], x0[2], x0[3]);
    for (int it = 0; it < 60; ++it) {
      const std::array<double, 4> xa{x[0], x[1], x[2], x[3]};
      Eigen::Vector4d g;
      Eigen::Matrix4d H;
      for (int a = 0; a < 4; ++a) {
        g[a] = grad[a](xa);
        for (int b = 0; b < 4; ++b) H(a, b) = hess[a][b](xa);
      }
      if (g.norm() < 1e-11) {
        bool interior = true;
        for (int k = 0; k < 4; ++k) interior = interior && x[k] > 1e-9 && x[k] < kDomainUpper[k] - 1e-9;
        if (interior) {
          ++converged;
          best_stationary = std::max(best_stationary, value(xa) / 48.0);
        } else {
          ++elsewhere;
        }
        break;
      }
      x -= H.fullPivLu().solve(g);
      if (!x.allFinite() || x.cwiseAbs().maxCoeff() > 10.0) break;
    }
  }
  cr.check(best_stationary <= 7.0 / 6.0,
           std::to_string(converged) + " of " + std::to_string(kStarts) +
               " Newton starts reached an interior stationary point; largest F there " +
               (converged ? num(best_stationary) : std::string("(none)")) + " <= 7/6; " +
               std::to_string(elsewhere) + " converged on the boundary or outside R");
  return cr.finish("analytic gradient and interior stationary points");
}

int criterion9() {
  Criterion cr(9);
  SearchConfig cfg;
  cfg.samples = 10'000;
  cfg.real_b2 = true;
  cfg.seed = 9009;
  cfg.refine_steps = 10'000;
  const auto one = run_search(cfg);
  cfg.workers = 4;
  const auto four = run_search(cfg);
  cr.check(one.best_sampled.gamma3_abs >= 5.0 / 12.0,
           "best sampled |gamma_3| " + num(one.best_sampled.gamma3_abs) + " >= 5/12");
  cr.check(one.best.gamma3_abs >= 5.0 / 12.0 && one.best.gamma3_abs <= 7.0 / 12.0 + 1e-12,
           "reported best after refinement " + num(one.best.gamma3_abs) + " in [5/12, 7/12 + 1e-12]");
  cr.check(one.gamma3_over_bound == 0, "samples over 7/12: " + std::to_string(one.gamma3_over_bound));
  const json a = record_to_json(one.best), b = record_to_json(four.best);
  const json ma = measure_to_json(one.best.p_measure), mb = measure_to_json(four.best.p_measure);
  const json ha = measure_to_json(one.best.h_measure), hb = measure_to_json(four.best.h_measure);
  cr.check(a == b && ma == mb && ha == hb, "best record identical for 1 and 4 workers (sample " +
                                               std::to_string(one.best.sample_index) + ")");
  return cr.finish("extremal search reaches 5/12, stays below 7/12, is worker independent");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run only this criterion (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<int()>> all = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                 criterion6, criterion7, criterion8, criterion9};
  int failures = 0;
  for (int i = 1; i <= 9; ++i) {
    if (only != 0 && only != i) continue;
    try {
      failures += all[static_cast<std::size_t>(i - 1)]();
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion " << i << ": threw " << e.what() << '\n';
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
