#pragma once

// Machine-readable run reports (JSON) and CSV sample dumps.
//
// Doubles are written in shortest round-trip form, so re-reading a report
// reproduces every numeric field bit for bit.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "logcoef/caratheodory.hpp"
#include "logcoef/certify.hpp"
#include "logcoef/rational.hpp"
#include "logcoef/search.hpp"

namespace logcoef {

using json = nlohmann::ordered_json;

#ifdef LOGCOEF_VERSION
inline constexpr const char* kToolVersion = LOGCOEF_VERSION;
#else
inline constexpr const char* kToolVersion = "0.1.0";
#endif

class ReportError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunManifest {
  std::string command;
  json parameters = json::object();
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  double wall_clock_seconds = 0.0;

  json to_json() const {
    return {{"command", command},
            {"parameters", parameters},
            {"seed", seed},
            {"tool_version", tool_version},
            {"wall_clock_seconds", wall_clock_seconds}};
  }
};

/// Wall-clock stopwatch for manifests.
class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline json point_to_json(const std::vector<double>& coords, const std::vector<std::string_view>& names) {
  json j = json::object();
  for (std::size_t k = 0; k < coords.size() && k < names.size(); ++k) j[std::string(names[k])] = coords[k];
  return j;
}

inline json certification_to_json(const CertificationReport& r, const Rational& target, const RunManifest& m) {
  const std::vector<std::string_view> names{"c", "p", "u", "v"};
  return {{"kind", "certification"},
          {"target", target.to_string()},
          {"certified_upper_bound", to_f_upper(r.certified_upper_bound)},
          {"best_lower_bound", to_f_lower(r.best_lower_bound)},
          {"witness", point_to_json(r.witness, names)},
          {"boxes_processed", r.boxes_processed},
          {"max_depth", r.max_depth},
          {"tolerance", r.tolerance},
          {"verdict", std::string(to_string(r.verdict))},
          {"scaled",
           {{"scale", kObjectiveScale},
            {"target", r.target},
            {"certified_upper_bound", r.certified_upper_bound},
            {"best_lower_bound", r.best_lower_bound},
            {"tolerance", r.tolerance}}},
          {"manifest", m.to_json()}};
}

/// Inverse of certification_to_json for the report's numeric content.
inline CertificationReport certification_from_json(const json& j) {
  try {
    CertificationReport r;
    const json& s = j.at("scaled");
    r.target = s.at("target").get<double>();
    r.tolerance = s.at("tolerance").get<double>();
    r.certified_upper_bound = s.at("certified_upper_bound").get<double>();
    r.best_lower_bound = s.at("best_lower_bound").get<double>();
    for (const char* k : {"c", "p", "u", "v"}) {
      if (j.at("witness").contains(k)) r.witness.push_back(j.at("witness").at(k).get<double>());
    }
    r.boxes_processed = j.at("boxes_processed").get<std::uint64_t>();
    r.max_depth = j.at("max_depth").get<int>();
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    return r;
  } catch (const json::exception& e) {
    throw ReportError(std::string("malformed certification report: ") + e.what());
  }
}

inline json face_to_json(const FaceReport& f) {
  const FaceInfo info = face_info(f.id);
  json j = {{"face", std::string(info.fixed)},
            {"paper_value", f.quoted_value},
            {"computed_max", f.computed_max},
            {"certified_upper_bound", f.certified_upper},
            {"argmax", point_to_json(f.argmax, info.params)},
            {"delta", f.delta},
            {"verdict", std::string(to_string(f.verdict))},
            {"boxes_processed", f.run.boxes_processed}};
  if (f.id == FaceId::G6) {
    j["compared_expression"] = "closing inequality 1/6 + c/2 - c^3/12 + p/2 - p^3/24";
    j["expression_max"] = f.expression_max;
  }
  return j;
}

inline json faces_to_json(const std::vector<FaceReport>& faces, const RunManifest& m) {
  json table = json::object();
  for (const auto& f : faces) table[std::string(face_info(f.id).name)] = face_to_json(f);
  return {{"kind", "faces"}, {"faces", table}, {"manifest", m.to_json()}};
}

inline json measure_to_json(const HerglotzMeasure& m) {
  json atoms = json::array();
  for (const Atom& a : m.atoms()) atoms.push_back({a.angle, a.weight});
  return {{"conjugate_symmetric", m.conjugate_symmetric()}, {"atoms", atoms}};
}

inline HerglotzMeasure measure_from_json(const json& j) {
  std::vector<Atom> atoms;
  for (const auto& a : j.at("atoms")) atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
  return HerglotzMeasure(std::move(atoms), j.at("conjugate_symmetric").get<bool>());
}

inline json complex_to_json(complex z) { return json::array({z.real(), z.imag()}); }

inline json record_to_json(const SampleRecord& r) {
  return {{"sample_index", r.sample_index},
          {"a2", complex_to_json(r.a2)},
          {"a3", complex_to_json(r.a3)},
          {"a4", complex_to_json(r.a4)},
          {"gamma1", complex_to_json(r.gamma1)},
          {"gamma2", complex_to_json(r.gamma2)},
          {"gamma3", complex_to_json(r.gamma3)},
          {"gamma3_abs", r.gamma3_abs}};
}

inline json search_config_to_json(const SearchConfig& c) {
  return {{"samples", c.samples},       {"atoms_g", c.atoms_g},       {"atoms_h", c.atoms_h},
          {"real_b2", c.real_b2},       {"refine_steps", c.refine_steps}, {"seed", c.seed},
          {"workers", c.workers},       {"milin_stride", c.milin_stride}, {"milin_max_n", c.milin_max_n}};
}

inline json search_to_json(const SearchConfig& cfg, const SearchResult& res, const RunManifest& m) {
  json hist = {{"bin_width", Histogram::kWidth}, {"counts", res.histogram.counts}, {"overflow", res.histogram.overflow}};
  return {{"kind", "search"},
          {"config", search_config_to_json(cfg)},
          {"best_gamma3", res.best.gamma3_abs},
          {"best_sampled_gamma3", res.best_sampled.gamma3_abs},
          {"witness_measures",
           {{"p_side", measure_to_json(res.best.p_measure)}, {"h_side", measure_to_json(res.best.h_measure)}}},
          {"best_record", record_to_json(res.best)},
          {"histogram", hist},
          {"statistics",
           {{"evaluated", res.evaluated},
            {"max_gamma1", res.max_gamma1},
            {"max_gamma2", res.max_gamma2},
            {"max_gamma3", res.max_gamma3},
            {"gamma1_violations", res.gamma1_violations},
            {"gamma2_violations", res.gamma2_violations},
            {"gamma3_over_7_12", res.gamma3_over_bound},
            {"milin_checked", res.milin_checked},
            {"milin_max", res.milin_checked > 0 ? json(res.milin_max) : json(nullptr)}}},
          {"manifest", m.to_json()}};
}

inline void write_report(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ReportError("cannot write report to " + path);
  out << j.dump(2) << '\n';
  if (!out) throw ReportError("failed writing report to " + path);
}

inline json read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ReportError("cannot read report " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ReportError(std::string("malformed report: ") + e.what());
  }
}

inline void write_samples_csv(const std::string& path, std::uint64_t seed, const std::vector<SampleSummary>& rows) {
  std::ofstream out(path);
  if (!out) throw ReportError("cannot write CSV to " + path);
  out.precision(17);
  out << "seed,sample_index,gamma1_abs,gamma2_abs,gamma3_abs\n";
  for (const auto& r : rows) {
    out << seed << ',' << r.sample_index << ',' << r.gamma1_abs << ',' << r.gamma2_abs << ',' << r.gamma3_abs << '\n';
  }
  if (!out) throw ReportError("failed writing CSV to " + path);
}

}  // namespace logcoef
