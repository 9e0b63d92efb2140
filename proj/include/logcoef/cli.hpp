#pragma once

// Command-line dispatcher. Exit codes: 0 success or certified, 1 refuted or
// failed, 2 usage error.

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logcoef/certify.hpp"
#include "logcoef/functionals.hpp"
#include "logcoef/rational.hpp"
#include "logcoef/report.hpp"
#include "logcoef/search.hpp"
#include "logcoef/series.hpp"
#include "logcoef/verify.hpp"

namespace logcoef {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Parses "re" or "re:im".
inline complex parse_complex(const std::string& text) {
  std::size_t used = 0;
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
    std::size_t ua = 0, ub = 0;
    const double re = std::stod(a, &ua), im = std::stod(b, &ub);
    if (ua != a.size() || ub != b.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a coefficient: '" + text + "' (expected re or re:im)");
  }
}

/// f for the gamma subcommand, with a_2..a_{order+1} available.
inline SchlichtSeries gamma_input(const std::string& preset, const std::vector<std::string>& coeffs,
                                  std::size_t order) {
  if (!coeffs.empty()) {
    if (coeffs.size() < order) {
      throw std::invalid_argument("need a_2..a_" + std::to_string(order + 1) + " for --order " +
                                  std::to_string(order));
    }
    std::vector<complex> tail;
    for (const auto& c : coeffs) tail.push_back(parse_complex(c));
    return SchlichtSeries::from_tail(tail).truncated(order + 1);
  }
  if (preset == "koebe") return koebe(order + 1);
  if (preset == "identity") return identity_map(order + 1);
  if (preset == "odd-starlike") {
    // z / (1 - z^2)
    TruncatedSeries s(order + 1);
    for (std::size_t n = 1; n <= order + 1; n += 2) s[n] = 1.0;
    return SchlichtSeries(std::move(s));
  }
  throw std::invalid_argument("unknown preset '" + preset + "'");
}

namespace detail {

inline std::string fmt(double x, int digits = 12) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

inline void print_point(std::ostream& out, const std::vector<double>& pt, const std::vector<std::string_view>& names) {
  out << '(';
  for (std::size_t k = 0; k < pt.size(); ++k) {
    out << (k ? ", " : "") << (k < names.size() ? names[k] : "?") << '=' << fmt(pt[k], 10);
  }
  out << ')';
}

}  // namespace detail

/// Runs one command line and returns its exit code.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Logarithmic coefficient bounds for close-to-convex functions", "logcoef"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  // certify
  std::string target_text = "7/6";
  double tol = 1e-6;
  std::uint64_t max_boxes = 10'000'000;
  std::size_t workers = 1;
  std::string out_path;
  auto* certify = app.add_subcommand("certify", "Certify sup F <= target over the full domain by branch and bound");
  certify->add_option("--target", target_text, "Target as an exact rational, e.g. 7/6")->capture_default_str();
  certify->add_option("--tol", tol, "Slack on the 48-scaled target")->capture_default_str()->check(CLI::NonNegativeNumber);
  certify->add_option("--max-boxes", max_boxes, "Box budget")->capture_default_str()->check(CLI::PositiveNumber);
  certify->add_option("--workers", workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  certify->add_option("--out", out_path, "Write the JSON report here");

  // faces
  double face_tol = 1e-8;
  auto* faces = app.add_subcommand("faces", "Maximize F on the eight boundary faces and compare with quoted values");
  faces->add_option("--tol", face_tol, "Slack on the 48-scaled face maxima")->capture_default_str()->check(CLI::NonNegativeNumber);
  faces->add_option("--max-boxes", max_boxes, "Box budget per face")->capture_default_str()->check(CLI::PositiveNumber);
  faces->add_option("--workers", workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  faces->add_option("--out", out_path, "Write the JSON report here");

  // search
  SearchConfig cfg;
  std::optional<std::size_t> atoms;
  std::string csv_path;
  bool complex_b2 = false;
  auto* search = app.add_subcommand("search", "Monte-Carlo search for large |gamma_3| in K");
  search->add_option("--samples", cfg.samples, "Number of sampled functions")->capture_default_str()->check(CLI::PositiveNumber);
  search->add_option("--atoms", atoms, "Max atoms per measure (both sides; default 3)")->check(CLI::PositiveNumber);
  auto* real_flag = search->add_flag("--real-b2", "Restrict to real b_2 (default)");
  search->add_flag("--complex-b2", complex_b2, "Allow complex b_2")->excludes(real_flag);
  search->add_option("--refine-steps", cfg.refine_steps, "Hill-climbing evaluations after sampling")->capture_default_str();
  search->add_option("--milin-stride", cfg.milin_stride, "Check Milin on every k-th sample (0 = off)")->capture_default_str();
  search->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  search->add_option("--workers", cfg.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  search->add_option("--out", out_path, "Write the JSON report here");
  search->add_option("--csv", csv_path, "Write per-sample |gamma_n| rows here");

  // gamma
  std::string preset = "koebe";
  std::vector<std::string> coeffs;
  std::size_t order = 8;
  auto* gamma = app.add_subcommand("gamma", "List gamma_1..gamma_N of a preset or given schlicht series");
  gamma->add_option("--preset", preset, "koebe, identity or odd-starlike")
      ->capture_default_str()
      ->check(CLI::IsMember({"koebe", "identity", "odd-starlike"}));
  gamma->add_option("--coeffs", coeffs, "a_2,a_3,... each as re or re:im (overrides --preset)")->delimiter(',');
  gamma->add_option("--order", order, "Number of coefficients N")->capture_default_str()->check(CLI::Range(1, 4096));

  // verify
  VerifyConfig vcfg;
  auto* verify = app.add_subcommand("verify", "Run the property suite");
  verify->add_option("--samples", vcfg.cases, "Random cases per check")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--seed", vcfg.seed, "RNG seed")->capture_default_str();
  verify->add_option("--order", vcfg.order, "Series order for the round trips")->capture_default_str()->check(CLI::Range(1, 256));

  if (!args.empty() && !args.front().starts_with('-') && app.get_subcommand_no_throw(args.front()) == nullptr) {
    err << "unknown command '" << args.front() << "'\n" << app.help();
    return kExitUsage;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  Stopwatch clock;
  try {
    if (certify->parsed()) {
      Rational target;
      try {
        target = Rational::parse(target_text);
      } catch (const std::invalid_argument& e) {
        err << e.what() << '\n';
        return kExitUsage;
      }
      const CertificationReport r = certify_target(target, tol, max_boxes, workers);
      out << "target            " << target.to_string() << " (48F <= " << detail::fmt(r.target) << ")\n"
          << "verdict           " << to_string(r.verdict) << '\n'
          << "upper bound (F)   " << detail::fmt(to_f_upper(r.certified_upper_bound), 17) << '\n'
          << "lower bound (F)   " << detail::fmt(to_f_lower(r.best_lower_bound), 17) << '\n'
          << "witness           ";
      detail::print_point(out, r.witness, {"c", "p", "u", "v"});
      out << "\nboxes processed   " << r.boxes_processed << "\nmax depth         " << r.max_depth << '\n';
      if (!out_path.empty()) {
        RunManifest m{"certify",
                      {{"target", target.to_string()}, {"tol", tol}, {"max_boxes", max_boxes}, {"workers", workers}},
                      0};
        m.wall_clock_seconds = clock.seconds();
        write_report(certification_to_json(r, target, m), out_path);
      }
      return r.verdict == Verdict::certified ? kExitOk : kExitFailed;
    }

    if (faces->parsed()) {
      const auto reports = certify_faces(face_tol, max_boxes, workers);
      bool all_below = true;
      out << std::left << std::setw(5) << "face" << std::setw(14) << "quoted" << std::setw(20) << "computed max"
          << std::setw(14) << "delta" << std::setw(13) << "verdict" << "argmax\n";
      for (const auto& f : reports) {
        const FaceInfo info = face_info(f.id);
        out << std::setw(5) << info.name << std::setw(14) << detail::fmt(f.quoted_value, 6) << std::setw(20)
            << detail::fmt(f.computed_max, 12) << std::setw(14) << detail::fmt(f.delta, 4) << std::setw(13)
            << to_string(f.verdict);
        detail::print_point(out, f.argmax, info.params);
        out << '\n';
        if (f.id == FaceId::G6) {
          out << "     (closing bound shown; the G6 expression itself peaks at " << detail::fmt(f.expression_max, 12)
              << ")\n";
        }
        all_below = all_below && f.verdict == Verdict::certified;
      }
      out << (all_below ? "every face max <= 7/6\n" : "some face max exceeds 7/6\n");
      if (!out_path.empty()) {
        RunManifest m{"faces", {{"tol", face_tol}, {"max_boxes", max_boxes}, {"workers", workers}}, 0};
        m.wall_clock_seconds = clock.seconds();
        write_report(faces_to_json(reports, m), out_path);
      }
      return all_below ? kExitOk : kExitFailed;
    }

    if (search->parsed()) {
      if (atoms) cfg.atoms_g = cfg.atoms_h = *atoms;
      cfg.real_b2 = !complex_b2;
      cfg.keep_samples = !csv_path.empty();
      const SearchResult res = run_search(cfg);
      out << "mode              " << (cfg.real_b2 ? "real b2" : "complex b2") << '\n'
          << "evaluated         " << res.evaluated << '\n'
          << "best |gamma_3|    " << detail::fmt(res.best.gamma3_abs, 17) << " (sample " << res.best.sample_index
          << ")\n"
          << "sampled best      " << detail::fmt(res.best_sampled.gamma3_abs, 17) << '\n'
          << "max |gamma_1|     " << detail::fmt(res.max_gamma1) << '\n'
          << "max |gamma_2|     " << detail::fmt(res.max_gamma2) << '\n'
          << "over 7/12         " << res.gamma3_over_bound << '\n';
      if (res.milin_checked > 0) {
        out << "milin max         " << detail::fmt(res.milin_max) << " over " << res.milin_checked << " functions\n";
      }
      if (!out_path.empty()) {
        RunManifest m{"search", search_config_to_json(cfg), cfg.seed};
        m.wall_clock_seconds = clock.seconds();
        write_report(search_to_json(cfg, res, m), out_path);
      }
      if (!csv_path.empty()) write_samples_csv(csv_path, cfg.seed, res.samples);
      const bool violated = res.gamma1_violations > 0 || res.gamma2_violations > 0 ||
                            (cfg.real_b2 && res.gamma3_over_bound > 0) ||
                            (res.milin_checked > 0 && res.milin_max > 1e-12);
      return violated ? kExitFailed : kExitOk;
    }

    if (gamma->parsed()) {
      SchlichtSeries f;
      try {
        f = gamma_input(preset, coeffs, order);
      } catch (const std::invalid_argument& e) {
        err << e.what() << '\n';
        return kExitUsage;
      }
      const GammaVector g = gamma_vector(f, order);
      for (std::size_t n = 1; n <= order; ++n) {
        const complex z = g.gamma(n);
        out << "gamma_" << n << " = " << detail::fmt(z.real(), 17);
        if (z.imag() != 0.0) out << (z.imag() < 0 ? " - " : " + ") << detail::fmt(std::abs(z.imag()), 17) << "i";
        out << '\n';
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      bool ok = true;
      for (const auto& c : run_property_suite(vcfg)) {
        out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(38) << c.name << " max_error="
            << detail::fmt(c.max_error, 3) << " tol=" << detail::fmt(c.tolerance, 3) << " cases=" << c.cases << '\n';
        ok = ok && c.passed;
      }
      return ok ? kExitOk : kExitFailed;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}

inline int dispatch(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return dispatch(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace logcoef
