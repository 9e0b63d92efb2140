#pragma once

// The Caratheodory class P: h(0) = 1, Re h > 0 on the unit disk.
//
// Members are represented by finite atomic Herglotz measures,
//   h(z) = sum_j w_j (1 + e^{i theta_j} z) / (1 - e^{i theta_j} z),
// so c_n = 2 sum_j w_j e^{i n theta_j} and |c_n| <= 2 holds structurally.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "logcoef/random.hpp"
#include "logcoef/series.hpp"

namespace logcoef {

class MeasureError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Atom {
  double angle = 0.0;   // radians
  double weight = 0.0;  // >= 0

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Atomic probability measure on the unit circle.
///
/// A conjugate-symmetric measure is stored as consecutive pairs
/// (theta, w/2), (-theta, w/2); an atom sitting at 0 or pi is a pair with
/// theta = 0 or pi. All its coefficients are real.
class HerglotzMeasure {
public:
  static constexpr double kWeightTolerance = 1e-12;

  HerglotzMeasure(std::vector<Atom> atoms, bool conjugate_symmetric = false)
      : atoms_(std::move(atoms)), symmetric_(conjugate_symmetric) {
    validate();
  }

  /// Unit point mass at `angle`.
  static HerglotzMeasure point(double angle) { return HerglotzMeasure({{angle, 1.0}}); }

  /// Equal weights on the given angles.
  static HerglotzMeasure uniform(const std::vector<double>& angles) {
    if (angles.empty()) throw MeasureError("uniform measure needs at least one angle");
    std::vector<Atom> atoms;
    atoms.reserve(angles.size());
    for (double a : angles) atoms.push_back({a, 1.0 / static_cast<double>(angles.size())});
    return HerglotzMeasure(std::move(atoms));
  }

  /// Symmetric measure from pair units (theta_k, w_k); sum of w_k must be 1.
  static HerglotzMeasure symmetric(const std::vector<Atom>& units) {
    std::vector<Atom> atoms;
    atoms.reserve(2 * units.size());
    for (const Atom& u : units) {
      atoms.push_back({u.angle, 0.5 * u.weight});
      atoms.push_back({-u.angle, 0.5 * u.weight});
    }
    return HerglotzMeasure(std::move(atoms), true);
  }

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool conjugate_symmetric() const noexcept { return symmetric_; }

  /// Pair units of a symmetric measure (angle of the first atom, pair weight).
  std::vector<Atom> units() const {
    if (!symmetric_) return atoms_;
    std::vector<Atom> u;
    u.reserve(atoms_.size() / 2);
    for (std::size_t k = 0; k < atoms_.size(); k += 2) {
      u.push_back({atoms_[k].angle, atoms_[k].weight + atoms_[k + 1].weight});
    }
    return u;
  }

  /// theta_j -> theta_j + phi. Multiplies c_n by e^{i n phi}; drops symmetry.
  HerglotzMeasure rotated(double phi) const {
    std::vector<Atom> a = atoms_;
    for (auto& atom : a) atom.angle += phi;
    return HerglotzMeasure(std::move(a), symmetric_ && phi == 0.0);
  }

  friend bool operator==(const HerglotzMeasure&, const HerglotzMeasure&) = default;

private:
  void validate() const {
    if (atoms_.empty()) throw MeasureError("measure has no atoms");
    double total = 0.0;
    for (const Atom& a : atoms_) {
      if (!(a.weight >= 0.0) || !std::isfinite(a.angle)) {
        throw MeasureError("atom weights must be >= 0 and angles finite");
      }
      total += a.weight;
    }
    if (std::abs(total - 1.0) > kWeightTolerance) {
      throw MeasureError("atom weights must sum to 1");
    }
    if (symmetric_) {
      if (atoms_.size() % 2 != 0) throw MeasureError("symmetric measure must store atom pairs");
      for (std::size_t k = 0; k < atoms_.size(); k += 2) {
        if (atoms_[k + 1].angle != -atoms_[k].angle || atoms_[k + 1].weight != atoms_[k].weight) {
          throw MeasureError("symmetric measure pairs must be (theta, -theta) with equal weight");
        }
      }
    }
  }

  std::vector<Atom> atoms_;
  bool symmetric_ = false;
};

/// c_1..c_N of the P-function represented by `m`.
inline std::vector<complex> herglotz_coefficients(const HerglotzMeasure& m, std::size_t order) {
  std::vector<complex> c(order);
  const auto& atoms = m.atoms();
  for (std::size_t n = 1; n <= order; ++n) {
    const double dn = static_cast<double>(n);
    if (m.conjugate_symmetric()) {
      double re = 0.0;
      for (std::size_t k = 0; k < atoms.size(); k += 2) {
        re += 2.0 * atoms[k].weight * std::cos(dn * atoms[k].angle);
      }
      c[n - 1] = complex{2.0 * re, 0.0};
    } else {
      complex sum{0.0, 0.0};
      for (const Atom& a : atoms) sum += a.weight * std::polar(1.0, dn * a.angle);
      c[n - 1] = 2.0 * sum;
    }
  }
  return c;
}

/// h(z) = 1 + c_1 z + ... + c_N z^N.
inline TruncatedSeries caratheodory_series(const HerglotzMeasure& m, std::size_t order) {
  TruncatedSeries h(order);
  h[0] = 1.0;
  const auto c = herglotz_coefficients(m, order);
  for (std::size_t n = 1; n <= order; ++n) h[n] = c[n - 1];
  return h;
}

/// Random atomic measure: angles uniform on [0, 2pi), weights flat on the
/// simplex. With `real_c1`, `atom_count` symmetric pairs are drawn instead,
/// each snapped to 0 or pi with probability 1/8 apiece.
template <class URBG>
HerglotzMeasure sample_measure(std::size_t atom_count, bool real_c1, URBG& rng) {
  if (atom_count < 1) throw MeasureError("sample_measure needs atom_count >= 1");
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Atom> units(atom_count);
  double total = 0.0;
  for (auto& u : units) {
    if (real_c1) {
      const double r = unit(rng);
      u.angle = r < 0.125 ? 0.0 : r < 0.25 ? std::numbers::pi : std::numbers::pi * unit(rng);
    } else {
      u.angle = 2.0 * std::numbers::pi * unit(rng);
    }
    u.weight = expo(rng);
    total += u.weight;
  }
  for (auto& u : units) u.weight /= total;
  return real_c1 ? HerglotzMeasure::symmetric(units) : HerglotzMeasure(std::move(units));
}

/// (c_1, x, t) of the Lemma parametrization; the p-side instance holds (p_1, y, s).
struct LemmaParams {
  static constexpr double kUnitTolerance = 1e-12;

  double c1 = 0.0;
  complex x{0.0, 0.0};
  complex t{0.0, 0.0};

  bool valid() const noexcept {
    return c1 >= 0.0 && c1 <= 2.0 && std::abs(x) <= 1.0 + kUnitTolerance &&
           std::abs(t) <= 1.0 + kUnitTolerance;
  }
};

struct SecondThird {
  complex c2;
  complex c3;
};

/// c_2 and c_3 from (c_1, x, t):
///   2 c_2 = c_1^2 + x (4 - c_1^2)
///   4 c_3 = c_1^3 + 2 (4 - c_1^2) c_1 x - c_1 (4 - c_1^2) x^2 + 2 (4 - c_1^2)(1 - |x|^2) t
inline SecondThird lemma_forward(const LemmaParams& p) {
  if (!p.valid()) throw MeasureError("lemma parameters out of domain");
  const double c = p.c1;
  const double k = 4.0 - c * c;
  const complex c2 = 0.5 * (c * c + p.x * k);
  const complex c3 =
      0.25 * (c * c * c + 2.0 * k * c * p.x - c * k * p.x * p.x + 2.0 * k * (1.0 - std::norm(p.x)) * p.t);
  return {c2, c3};
}

struct LemmaInversion {
  complex x;
  std::optional<complex> t;  // empty when |x| = 1 and t is undetermined
};

class LemmaError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Recover (x, t) from (c_1, c_2, c_3), validating membership along the way.
inline LemmaInversion lemma_invert(double c1, complex c2, complex c3) {
  constexpr double kBoundary = 1e-10;
  if (!(c1 >= 0.0)) throw LemmaError("c1 must be real and >= 0");
  if (!(c1 < 2.0)) throw LemmaError("degenerate parametrization: c1 = 2");
  const double k = 4.0 - c1 * c1;
  // Rounding can push |x| or |t| just past 1; such values are pulled back
  // onto the circle, anything further out is rejected.
  constexpr double kSlack = 1e-6;
  complex x = (2.0 * c2 - c1 * c1) / k;
  const double ax = std::abs(x);
  if (ax > 1.0 + kBoundary) throw LemmaError("not a P coefficient triple: |x| > 1");
  if (1.0 - ax < kBoundary) return {ax > 1.0 ? x / ax : x, std::nullopt};
  const complex rest = 4.0 * c3 - c1 * c1 * c1 - 2.0 * k * c1 * x + c1 * k * x * x;
  complex t = rest / (2.0 * k * (1.0 - std::norm(x)));
  const double at = std::abs(t);
  if (at > 1.0 + kSlack) throw LemmaError("not a P coefficient triple: |t| > 1");
  if (at > 1.0) t /= at;
  return {x, t};
}

}  // namespace logcoef
