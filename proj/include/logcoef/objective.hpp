#pragma once

// The majorant F(c, p, u, v) of |a_4 - a_2 a_3 + a_2^3/3| on
// R = [0,2] x [0,2] x [0,1] x [0,1], with u = |x| and v = |y|, its eight
// codimension-1 face expressions G1..G8 and its gradient.
//
// 48 F = c^3 + c p^2 + 2 p^3 + 2 c u X + 3 c u^2 X + 6 X (1 - u^2) + 2 p u X
//        + c v Y + 3 p v Y + p v^2 Y + 2 Y (1 - v^2),   X = 4 - c^2, Y = 4 - p^2.
//
// Everything the certifier touches is kept in this 48-scaled integer form, so
// the bound F <= 7/6 becomes 48 F <= 56.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logcoef/caratheodory.hpp"
#include "logcoef/classes.hpp"
#include "logcoef/interval.hpp"
#include "logcoef/polynomial.hpp"

namespace logcoef {

inline constexpr std::int64_t kObjectiveScale = 48;

class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A point of R. u stands for |x| and v for |y|.
struct FPoint {
  double c = 0.0;
  double p = 0.0;
  double u = 0.0;
  double v = 0.0;

  bool in_domain() const noexcept {
    return c >= 0.0 && c <= 2.0 && p >= 0.0 && p <= 2.0 && u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0;
  }
  std::array<double, 4> coords() const noexcept { return {c, p, u, v}; }
};

/// Side lengths of R, in coordinate order (c, p, u, v).
inline constexpr std::array<double, 4> kDomainUpper = {2.0, 2.0, 1.0, 1.0};

/// 48 F in factored integer form, evaluated in double.
inline double f48_value(const FPoint& pt) {
  const double c = pt.c, p = pt.p, u = pt.u, v = pt.v;
  const double X = 4.0 - c * c;
  const double Y = 4.0 - p * p;
  return c * c * c + c * p * p + 2.0 * p * p * p + 2.0 * c * u * X + 3.0 * c * u * u * X +
         6.0 * X * (1.0 - u * u) + 2.0 * p * u * X + c * v * Y + 3.0 * p * v * Y + p * v * v * Y +
         2.0 * Y * (1.0 - v * v);
}

/// F(c, p, |x|, |y|).
inline double f_value(const FPoint& pt) {
  if (!pt.in_domain()) throw DomainError("F evaluated outside R");
  return f48_value(pt) / 48.0;
}

/// F with its printed rational coefficients, term by term.
inline double f_value_rational(const FPoint& pt) {
  const double c = pt.c, p = pt.p, u = pt.u, v = pt.v;
  return c * c * c / 48.0 + c * p * p / 48.0 + p * p * p / 24.0 + c * u * (4.0 - c * c) / 24.0 +
         c * u * u * (4.0 - c * c) / 16.0 + (4.0 - c * c) * (1.0 - u * u) / 8.0 + p * u * (4.0 - c * c) / 24.0 +
         c * v * (4.0 - p * p) / 48.0 + p * v * (4.0 - p * p) / 16.0 + p * v * v * (4.0 - p * p) / 48.0 +
         (4.0 - p * p) * (1.0 - v * v) / 24.0;
}

/// Analytic gradient (dF/dc, dF/dp, dF/du, dF/dv), differentiated term by term.
inline std::array<double, 4> grad_f(const FPoint& pt) {
  if (!pt.in_domain()) throw DomainError("grad_F evaluated outside R");
  const double c = pt.c, p = pt.p, u = pt.u, v = pt.v;
  const double X = 4.0 - c * c;
  const double Y = 4.0 - p * p;
  const double dc = 3.0 * c * c + p * p + 2.0 * u * (4.0 - 3.0 * c * c) + 3.0 * u * u * (4.0 - 3.0 * c * c) -
                    12.0 * c * (1.0 - u * u) - 4.0 * c * p * u + v * Y;
  const double dp = 2.0 * c * p + 6.0 * p * p + 2.0 * u * X - 2.0 * c * p * v + 3.0 * v * (4.0 - 3.0 * p * p) +
                    v * v * (4.0 - 3.0 * p * p) - 4.0 * p * (1.0 - v * v);
  const double du = 2.0 * X * (c + p + 3.0 * c * u - 6.0 * u);
  const double dv = Y * (c + 3.0 * p + 2.0 * p * v - 4.0 * v);
  return {dc / 48.0, dp / 48.0, du / 48.0, dv / 48.0};
}

/// 48 F as an integer polynomial in (c, p, u, v).
inline const Polynomial& f48_polynomial() {
  static const Polynomial poly = [] {
    const auto c = Polynomial::variable(0, 4);
    const auto p = Polynomial::variable(1, 4);
    const auto u = Polynomial::variable(2, 4);
    const auto v = Polynomial::variable(3, 4);
    const auto X = 4 - c * c;
    const auto Y = 4 - p * p;
    return c * c * c + c * p * p + 2 * (p * p * p) + 2 * (c * u * X) + 3 * (c * u * u * X) +
           6 * (X * (1 - u * u)) + 2 * (p * u * X) + c * v * Y + 3 * (p * v * Y) + p * v * v * Y +
           2 * (Y * (1 - v * v));
  }();
  return poly;
}

// ---------------------------------------------------------------------------
// Faces

enum class FaceId { G1, G2, G3, G4, G5, G6, G7, G8 };

inline constexpr std::array<FaceId, 8> kAllFaces = {FaceId::G1, FaceId::G2, FaceId::G3, FaceId::G4,
                                                    FaceId::G5, FaceId::G6, FaceId::G7, FaceId::G8};

struct FaceInfo {
  FaceId id;
  std::string_view name;
  std::string_view fixed;                 // the fixed coordinate, e.g. "c=0"
  std::vector<std::string_view> params;   // free coordinates, in order
  std::vector<double> upper;              // free coordinate ranges are [0, upper]
  bool relaxed;                           // true when the expression majorizes F on the face
};

inline FaceInfo face_info(FaceId id) {
  switch (id) {
    case FaceId::G1: return {id, "G1", "c=0", {"p", "v"}, {2.0, 1.0}, true};
    case FaceId::G2: return {id, "G2", "c=2", {"p", "v"}, {2.0, 1.0}, true};
    case FaceId::G3: return {id, "G3", "p=0", {"c", "v"}, {2.0, 1.0}, true};
    case FaceId::G4: return {id, "G4", "p=2", {"c", "u"}, {2.0, 1.0}, false};
    case FaceId::G5: return {id, "G5", "u=0", {"c", "p"}, {2.0, 2.0}, true};
    case FaceId::G6: return {id, "G6", "u=1", {"c", "p"}, {2.0, 2.0}, false};
    case FaceId::G7: return {id, "G7", "v=0", {"c", "p", "u"}, {2.0, 2.0, 1.0}, false};
    case FaceId::G8: return {id, "G8", "v=1", {"c", "p", "u"}, {2.0, 2.0, 1.0}, false};
  }
  throw std::invalid_argument("unknown face");
}

inline FaceId parse_face(std::string_view name) {
  for (FaceId id : kAllFaces)
    if (face_info(id).name == name) return id;
  throw std::invalid_argument("unknown face: " + std::string(name));
}

/// The full point of R a face parameter vector lies over (G4 puts v = 0;
/// F does not depend on v when p = 2).
inline FPoint face_point(FaceId id, std::span<const double> a) {
  switch (id) {
    case FaceId::G1: return {0.0, a[0], 0.0, a[1]};
    case FaceId::G2: return {2.0, a[0], 0.0, a[1]};
    case FaceId::G3: return {a[0], 0.0, 0.0, a[1]};
    case FaceId::G4: return {a[0], 2.0, a[1], 0.0};
    case FaceId::G5: return {a[0], a[1], 0.0, 0.0};
    case FaceId::G6: return {a[0], a[1], 1.0, 0.0};
    case FaceId::G7: return {a[0], a[1], a[2], 0.0};
    case FaceId::G8: return {a[0], a[1], a[2], 1.0};
  }
  throw std::invalid_argument("unknown face");
}

/// G_i as displayed in the face analysis (rational coefficients, double).
/// G1, G2, G3, G5, G6 carry the |x| <= 1 / |y| <= 1 relaxations as printed;
/// G4, G7, G8 are F restricted to p = 2, v = 0, v = 1.
inline double face_value(FaceId id, std::span<const double> a) {
  const FaceInfo info = face_info(id);
  if (a.size() != info.params.size()) throw DomainError("face_value: wrong number of parameters");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a[k] >= 0.0 && a[k] <= info.upper[k])) throw DomainError("face_value: parameter out of range");
  }
  switch (id) {
    case FaceId::G1: {
      const double p = a[0], v = a[1], Y = 4.0 - p * p;
      return p * p * p / 24.0 + 0.5 + p / 6.0 + p * v * Y / 16.0 + p * v * v * Y / 48.0 + Y * (1.0 - v * v) / 24.0;
    }
    case FaceId::G2: {
      const double p = a[0], v = a[1], Y = 4.0 - p * p;
      return 1.0 / 6.0 + p * p / 24.0 + p * p * p / 24.0 + v * Y / 24.0 + p * v * Y / 16.0 +
             p * v * v * Y / 48.0 + Y * (1.0 - v * v) / 24.0;
    }
    case FaceId::G3: {
      const double c = a[0], X = 4.0 - c * c;
      return c * c * c / 48.0 + 5.0 * c * X / 48.0 + X / 8.0 + c / 12.0 + 1.0 / 6.0;
    }
    case FaceId::G4: {
      const double c = a[0], u = a[1], X = 4.0 - c * c;
      return 1.0 / 3.0 + c / 12.0 + c * c * c / 48.0 + X * u / 12.0 + c * X * u / 24.0 + c * u * u * X / 16.0 +
             X * (1.0 - u * u) / 8.0;
    }
    case FaceId::G5: {
      const double c = a[0], p = a[1], X = 4.0 - c * c, Y = 4.0 - p * p;
      return c * c * c / 48.0 + X / 8.0 + c * p * p / 48.0 + p * p * p / 24.0 + Y / 24.0 + p * Y / 12.0 +
             c * Y / 48.0;
    }
    case FaceId::G6: {
      const double c = a[0], p = a[1], X = 4.0 - c * c, Y = 4.0 - p * p;
      return c * c * c / 48.0 + c * p * p / 48.0 + p * p * p / 24.0 + 5.0 * c * X / 48.0 + p * X / 24.0 +
             Y / 24.0 + p * Y / 12.0 + c * p * Y / 48.0;
    }
    case FaceId::G7: {
      const double c = a[0], p = a[1], u = a[2], X = 4.0 - c * c, Y = 4.0 - p * p;
      return c * c * c / 48.0 + c * p * p / 48.0 + p * p * p / 24.0 + Y / 24.0 + c * u * X / 24.0 +
             p * u * X / 24.0 + c * u * u * X / 16.0 + X * (1.0 - u * u) / 8.0;
    }
    case FaceId::G8: {
      const double c = a[0], p = a[1], u = a[2], X = 4.0 - c * c, Y = 4.0 - p * p;
      return c * c * c / 48.0 + c * p * p / 48.0 + p * p * p / 24.0 + c * u * X / 24.0 + c * u * u * X / 16.0 +
             X * (1.0 - u * u) / 8.0 + p * u * X / 24.0 + c * Y / 48.0 + p * Y / 12.0;
    }
  }
  throw std::invalid_argument("unknown face");
}

/// The closing inequality of the G6 analysis:
///   G6 <= 1/6 + c/2 - c^3/12 + p/2 - p^3/24.
inline double g6_bound_value(double c, double p) {
  return 1.0 / 6.0 + c / 2.0 - c * c * c / 12.0 + p / 2.0 - p * p * p / 24.0;
}

inline Polynomial g6_bound_polynomial() {
  const auto c = Polynomial::variable(0, 2);
  const auto p = Polynomial::variable(1, 2);
  return 8 + 24 * c - 4 * (c * c * c) + 24 * p - 2 * (p * p * p);
}

/// 48 G_i as an integer polynomial in the face parameters.
inline Polynomial face_polynomial(FaceId id) {
  const Polynomial& f = f48_polynomial();
  switch (id) {
    case FaceId::G4: return f.substitute(3, 0).substitute(1, 2);  // F is independent of v at p = 2
    case FaceId::G7: return f.substitute(3, 0);
    case FaceId::G8: return f.substitute(3, 1);
    default: break;
  }
  const auto a = Polynomial::variable(0, 2);
  const auto b = Polynomial::variable(1, 2);
  switch (id) {
    case FaceId::G1: {
      const auto& p = a;
      const auto& v = b;
      const auto Y = 4 - p * p;
      return 2 * (p * p * p) + 24 + 8 * p + 3 * (p * v * Y) + p * v * v * Y + 2 * (Y * (1 - v * v));
    }
    case FaceId::G2: {
      const auto& p = a;
      const auto& v = b;
      const auto Y = 4 - p * p;
      return 8 + 2 * (p * p) + 2 * (p * p * p) + 2 * (v * Y) + 3 * (p * v * Y) + p * v * v * Y +
             2 * (Y * (1 - v * v));
    }
    case FaceId::G3: {
      const auto& c = a;
      const auto X = 4 - c * c;
      return 8 + (c * c * c + 5 * (c * X) + 6 * X + 4 * c);
    }
    case FaceId::G5: {
      const auto& c = a;
      const auto& p = b;
      const auto X = 4 - c * c;
      const auto Y = 4 - p * p;
      return c * c * c + 6 * X + c * p * p + 2 * (p * p * p) + 2 * Y + 4 * (p * Y) + c * Y;
    }
    case FaceId::G6: {
      const auto& c = a;
      const auto& p = b;
      const auto X = 4 - c * c;
      const auto Y = 4 - p * p;
      return c * c * c + c * p * p + 2 * (p * p * p) + 5 * (c * X) + 2 * (p * X) + 2 * Y + 4 * (p * Y) +
             c * p * Y;
    }
    default: break;
  }
  throw std::invalid_argument("unknown face");
}

// ---------------------------------------------------------------------------
// From the Lemma parameters to F

/// Both Lemma parameter sets with p_1 = q real. The p-side Lemma form holds for
/// q in [-2, 2] (reflect z -> -z, which flips the sign of s).
struct BoundChainInput {
  double c1 = 0.0;
  complex x{0.0, 0.0};
  complex t{0.0, 0.0};
  double q = 0.0;
  complex y{0.0, 0.0};
  complex s{0.0, 0.0};
};

struct BoundChain {
  double lhs;  // |a_4 - a_2 a_3 + a_2^3/3|
  double rhs;  // F(c_1, |q|, |x|, |y|)
};

namespace detail {

inline SecondThird lemma_coefficients(double c1, complex x, complex t) {
  const double k = 4.0 - c1 * c1;
  return {0.5 * (c1 * c1 + x * k),
          0.25 * (c1 * c1 * c1 + 2.0 * k * c1 * x - c1 * k * x * x + 2.0 * k * (1.0 - std::norm(x)) * t)};
}

}  // namespace detail

/// The triangle-inequality step: lhs is the exact functional, rhs the majorant.
inline BoundChain bound_chain_check(const BoundChainInput& in) {
  constexpr double kUnit = 1.0 + LemmaParams::kUnitTolerance;
  if (!(in.c1 >= 0.0 && in.c1 <= 2.0) || !(std::abs(in.q) <= 2.0) || std::abs(in.x) > kUnit ||
      std::abs(in.t) > kUnit || std::abs(in.y) > kUnit || std::abs(in.s) > kUnit) {
    throw DomainError("bound_chain_check: parameter out of domain");
  }
  const SecondThird cs = detail::lemma_coefficients(in.c1, in.x, in.t);
  const SecondThird ps = detail::lemma_coefficients(in.q, in.y, in.s);
  const LeadingCoefficients a = a234_from_cp(in.c1, cs.c2, cs.c3, in.q, ps.c2, ps.c3);
  const double lhs = std::abs(a.a4 - a.a2 * a.a3 + a.a2 * a.a2 * a.a2 / 3.0);
  const FPoint pt{in.c1, std::abs(in.q), std::min(std::abs(in.x), 1.0), std::min(std::abs(in.y), 1.0)};
  return {lhs, f_value(pt)};
}

}  // namespace logcoef
