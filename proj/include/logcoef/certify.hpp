#pragma once

// Rigorous upper bounds for integer polynomials over boxes.
//
// Branch-and-bound over a box cover of the domain. Each box gets an
// enclosure of the polynomial's range (natural Horner form intersected with
// the mean-value form), and a rigorous lower bound from point evaluations.
// Work proceeds in synchronous rounds: the boxes of a round are evaluated
// independently (in parallel) and then merged in box order, so a report is
// bit-identical for any worker count.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logcoef/interval.hpp"
#include "logcoef/objective.hpp"
#include "logcoef/parallel.hpp"
#include "logcoef/polynomial.hpp"
#include "logcoef/rational.hpp"

namespace logcoef {

inline constexpr std::size_t kMaxBoxDim = 4;

/// Axis-aligned box of up to four dimensions.
struct Box {
  std::array<Interval, kMaxBoxDim> side{};
  std::size_t dim = 0;
  int depth = 0;

  static Box from_bounds(std::span<const double> lower, std::span<const double> upper) {
    if (lower.size() != upper.size() || lower.size() > kMaxBoxDim) throw std::invalid_argument("bad box bounds");
    Box b;
    b.dim = lower.size();
    for (std::size_t k = 0; k < b.dim; ++k) {
      if (!(lower[k] <= upper[k])) throw std::invalid_argument("box side with lo > hi");
      b.side[k] = {lower[k], upper[k]};
    }
    return b;
  }

  static Box point(std::span<const double> x) { return from_bounds(x, x); }

  std::span<const Interval> sides() const noexcept { return {side.data(), dim}; }

  std::array<double, kMaxBoxDim> midpoint() const noexcept {
    std::array<double, kMaxBoxDim> m{};
    for (std::size_t k = 0; k < dim; ++k) m[k] = side[k].mid();
    return m;
  }

  bool contains(std::span<const double> x) const noexcept {
    for (std::size_t k = 0; k < dim; ++k)
      if (!side[k].contains(x[k])) return false;
    return true;
  }
};

/// R itself.
inline Box full_domain() {
  const std::array<double, 4> lo{0.0, 0.0, 0.0, 0.0};
  return Box::from_bounds(lo, kDomainUpper);
}

/// The reduced domain of a face, [0, upper_k] per free coordinate.
inline Box face_domain(FaceId id) {
  const FaceInfo info = face_info(id);
  const std::vector<double> lo(info.upper.size(), 0.0);
  return Box::from_bounds(lo, info.upper);
}

/// A polynomial prepared for box work: Horner forms of the value and gradient.
class BoxObjective {
public:
  explicit BoxObjective(const Polynomial& poly) : poly_(poly), value_(poly) {
    if (poly.dim() == 0 || poly.dim() > kMaxBoxDim) throw std::invalid_argument("objective dimension must be 1..4");
    for (std::size_t k = 0; k < poly.dim(); ++k) grad_.emplace_back(poly.derivative(k));
  }

  std::size_t dim() const noexcept { return poly_.dim(); }
  const Polynomial& polynomial() const noexcept { return poly_; }

  double value(std::span<const double> x) const { return value_.evaluate<double>(x.first(dim())); }

  /// Rigorous enclosure of the value at an exactly representable point.
  Interval value_enclosure(std::span<const double> x) const {
    std::array<Interval, kMaxBoxDim> xi{};
    for (std::size_t k = 0; k < dim(); ++k) xi[k] = Interval(x[k]);
    return value_.evaluate<Interval>(std::span<const Interval>(xi.data(), dim()));
  }

  std::array<double, kMaxBoxDim> gradient(std::span<const double> x) const {
    std::array<double, kMaxBoxDim> g{};
    for (std::size_t k = 0; k < dim(); ++k) g[k] = grad_[k].evaluate<double>(x.first(dim()));
    return g;
  }

  /// Natural interval extension (interval Horner).
  Interval natural(const Box& b) const { return value_.evaluate<Interval>(b.sides()); }

  /// natural(b) intersected with f(m) + sum_k G_k (X_k - m_k). When `smear`
  /// is given it receives width_k * max|G_k| per coordinate.
  Interval enclose(const Box& b, std::array<double, kMaxBoxDim>* smear = nullptr) const {
    const Interval nat = natural(b);
    const auto m = b.midpoint();
    Interval mv = value_enclosure(m);
    for (std::size_t k = 0; k < dim(); ++k) {
      if (b.side[k].is_point()) continue;
      const Interval g = grad_[k].evaluate<Interval>(b.sides());
      mv = mv + g * (b.side[k] - Interval(m[k]));
      if (smear) (*smear)[k] = b.side[k].width() * std::max(std::abs(g.lo), std::abs(g.hi));
    }
    return intersect(nat, mv);
  }

private:
  Polynomial poly_;
  HornerForm value_;
  std::vector<HornerForm> grad_;
};

/// Soundly encloses the range of `poly` over `b` by interval Horner evaluation.
inline Interval interval_eval(const BoxObjective& poly, const Box& b) { return poly.natural(b); }

enum class Verdict { certified, refuted, inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

inline Verdict parse_verdict(std::string_view s) {
  if (s == "certified") return Verdict::certified;
  if (s == "refuted") return Verdict::refuted;
  if (s == "inconclusive") return Verdict::inconclusive;
  throw std::invalid_argument("unknown verdict: " + std::string(s));
}

/// Outcome of one branch-and-bound run, in the polynomial's own units.
struct CertificationReport {
  double target = 0.0;
  double tolerance = 0.0;
  double certified_upper_bound = 0.0;
  double best_lower_bound = 0.0;
  std::vector<double> witness;
  std::uint64_t boxes_processed = 0;
  int max_depth = 0;
  Verdict verdict = Verdict::inconclusive;
};

struct BnbOptions {
  double target = 56.0;
  double tol = 1e-6;
  std::uint64_t max_boxes = 10'000'000;
  std::size_t workers = 1;
  bool check_cover = false;  // assert the box cover partitions the domain, every round
};

namespace detail {

struct Scored {
  Box box;
  double hi = 0.0;
  std::array<double, kMaxBoxDim> smear{};  // width_k * max |dP/dx_k| over the box
  double lb = -std::numeric_limits<double>::infinity();
  std::array<double, kMaxBoxDim> lb_point{};
};

inline Scored score(const BoxObjective& f, const Box& box, double parent_hi) {
  Scored s;
  s.box = box;
  s.hi = std::min(f.enclose(box, &s.smear).hi, parent_hi);
  const auto m = box.midpoint();
  s.lb = f.value_enclosure(m).lo;
  s.lb_point = m;
  const auto g = f.gradient(m);
  std::array<double, kMaxBoxDim> vertex = m;
  for (std::size_t k = 0; k < box.dim; ++k) {
    if (g[k] > 0.0) vertex[k] = box.side[k].hi;
    if (g[k] < 0.0) vertex[k] = box.side[k].lo;
  }
  const double vv = f.value_enclosure(vertex).lo;
  if (vv > s.lb) {
    s.lb = vv;
    s.lb_point = vertex;
  }
  return s;
}

/// Coordinate to bisect: the largest smear width_k * max|dP/dx_k|, lowest
/// index on ties; the widest side relative to the domain when every smear
/// vanishes. -1 when no side can be halved.
inline int split_coordinate(const Scored& s, const Box& domain) {
  const Box& b = s.box;
  int by_smear = -1;
  int by_width = -1;
  double best_smear = 0.0;
  double best_width = 0.0;
  for (std::size_t k = 0; k < b.dim; ++k) {
    const double side = domain.side[k].width();
    if (side <= 0.0) continue;
    const double m = b.side[k].mid();
    if (!(m > b.side[k].lo && m < b.side[k].hi)) continue;
    if (s.smear[k] > best_smear) {
      best_smear = s.smear[k];
      by_smear = static_cast<int>(k);
    }
    const double w = b.side[k].width() / side;
    if (w > best_width) {
      best_width = w;
      by_width = static_cast<int>(k);
    }
  }
  return by_smear >= 0 ? by_smear : by_width;
}

inline double normalized_volume(const Box& b, const Box& domain) {
  double v = 1.0;
  for (std::size_t k = 0; k < b.dim; ++k) {
    const double side = domain.side[k].width();
    if (side > 0.0) v *= b.side[k].width() / side;
  }
  return v;
}

}  // namespace detail

/// Certifies poly <= target + tol on `domain`, or refutes poly <= target with
/// a witness, or runs out of budget. Boxes with enclosure hi <= max(target,
/// best lower bound) are discarded; boxes within tol of that floor are kept
/// unsplit. "certified" is never returned on budget exhaustion unless the
/// bound already holds.
inline CertificationReport branch_and_bound(const BoxObjective& f, const Box& domain, const BnbOptions& opt) {
  if (!(opt.tol > 0.0)) throw std::invalid_argument("branch_and_bound: tol must be > 0");
  if (domain.dim != f.dim()) throw std::invalid_argument("branch_and_bound: domain dimension mismatch");
  if (opt.max_boxes < 1) throw std::invalid_argument("branch_and_bound: max_boxes must be >= 1");

  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  CertificationReport rep;
  rep.target = opt.target;
  rep.tolerance = opt.tol;

  detail::Scored root = detail::score(f, domain, std::numeric_limits<double>::infinity());
  rep.boxes_processed = 1;
  double best_lb = root.lb;
  std::array<double, kMaxBoxDim> witness = root.lb_point;

  std::vector<detail::Scored> active{root};
  std::vector<detail::Scored> kept;  // settled or left unsplit
  double discarded_hi = kNegInf;
  double discarded_volume = 0.0;

  for (;;) {
    const double floor = std::max(opt.target, best_lb);
    std::vector<detail::Scored> to_split;
    for (auto& item : active) {
      if (item.hi <= floor) {
        discarded_hi = std::max(discarded_hi, item.hi);
        if (opt.check_cover) discarded_volume += detail::normalized_volume(item.box, domain);
      } else if (item.hi <= floor + opt.tol || detail::split_coordinate(item, domain) < 0) {
        kept.push_back(std::move(item));
      } else {
        to_split.push_back(std::move(item));
      }
    }
    active.clear();

    if (opt.check_cover) {
      double total = discarded_volume;
      for (const auto& s : kept) total += detail::normalized_volume(s.box, domain);
      for (const auto& s : to_split) total += detail::normalized_volume(s.box, domain);
      if (std::abs(total - 1.0) > 1e-9) throw std::logic_error("box cover lost volume");
    }
    if (to_split.empty()) break;

    // Most promising boxes first when the budget cannot cover the whole round.
    std::stable_sort(to_split.begin(), to_split.end(),
                     [](const detail::Scored& a, const detail::Scored& b) { return a.hi > b.hi; });
    const std::uint64_t remaining = opt.max_boxes - rep.boxes_processed;
    const std::size_t n_split = static_cast<std::size_t>(std::min<std::uint64_t>(to_split.size(), remaining / 2));

    std::vector<detail::Scored> children(2 * n_split);
    parallel_for(n_split, opt.workers, [&](std::size_t i) {
      const detail::Scored& parent = to_split[i];
      const int k = detail::split_coordinate(parent, domain);
      Box left = parent.box;
      Box right = parent.box;
      const double m = parent.box.side[static_cast<std::size_t>(k)].mid();
      left.side[static_cast<std::size_t>(k)].hi = m;
      right.side[static_cast<std::size_t>(k)].lo = m;
      left.depth = right.depth = parent.box.depth + 1;
      children[2 * i] = detail::score(f, left, parent.hi);
      children[2 * i + 1] = detail::score(f, right, parent.hi);
    });
    rep.boxes_processed += 2 * n_split;

    for (auto& child : children) {
      if (child.lb > best_lb) {
        best_lb = child.lb;
        witness = child.lb_point;
      }
      rep.max_depth = std::max(rep.max_depth, child.box.depth);
    }
    active = std::move(children);

    if (n_split < to_split.size()) {
      for (std::size_t i = n_split; i < to_split.size(); ++i) kept.push_back(std::move(to_split[i]));
      break;
    }
  }

  double ub = discarded_hi;
  for (const auto& s : kept) ub = std::max(ub, s.hi);
  for (const auto& s : active) ub = std::max(ub, s.hi);
  rep.certified_upper_bound = ub;
  rep.best_lower_bound = best_lb;
  rep.witness.assign(witness.begin(), witness.begin() + static_cast<std::ptrdiff_t>(f.dim()));
  if (ub <= opt.target + opt.tol) {
    rep.verdict = Verdict::certified;
  } else if (best_lb > opt.target) {
    rep.verdict = Verdict::refuted;
  } else {
    rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

/// Tightest bounds on max poly over `domain`: upper and lower bound within tol.
inline CertificationReport maximize(const BoxObjective& f, const Box& domain, double tol,
                                    std::uint64_t max_boxes = 10'000'000, std::size_t workers = 1) {
  BnbOptions opt;
  opt.target = -std::numeric_limits<double>::infinity();
  opt.tol = tol;
  opt.max_boxes = max_boxes;
  opt.workers = workers;
  return branch_and_bound(f, domain, opt);
}

/// sup 48 F over R against 48 * target. A non-integer scaled target is
/// bracketed: certification uses the lower end, refutation the upper end.
inline CertificationReport certify_target(const Rational& target, double tol = 1e-6,
                                          std::uint64_t max_boxes = 10'000'000, std::size_t workers = 1) {
  const Interval t = target.scaled(kObjectiveScale);
  BnbOptions opt;
  opt.target = t.lo;
  opt.tol = tol;
  opt.max_boxes = max_boxes;
  opt.workers = workers;
  CertificationReport rep = branch_and_bound(BoxObjective(f48_polynomial()), full_domain(), opt);
  if (rep.verdict == Verdict::refuted && !(rep.best_lower_bound > t.hi)) rep.verdict = Verdict::inconclusive;
  return rep;
}

// ---------------------------------------------------------------------------
// Face table

/// The maximum quoted for each face, in F units.
inline double quoted_face_max(FaceId id) {
  switch (id) {
    case FaceId::G1: return 7.0 / 6.0;
    case FaceId::G2: return 0.696;
    case FaceId::G3: return 23.0 / 24.0;
    case FaceId::G4: return 1.005;
    case FaceId::G5: return 0.9531;
    case FaceId::G6: return 5.0 / 6.0;  // quoted for the closing G6 inequality
    case FaceId::G7: return 1.005;
    case FaceId::G8: return 1.052;
  }
  throw std::invalid_argument("unknown face");
}

struct FaceReport {
  FaceId id;
  double quoted_value = 0.0;
  double computed_max = 0.0;      // attained lower bound, F units
  double certified_upper = 0.0;   // rigorous upper bound, F units
  std::vector<double> argmax;
  double delta = 0.0;             // computed_max - quoted_value
  Verdict verdict = Verdict::inconclusive;  // computed bound vs 7/6
  CertificationReport run;        // 48-scaled run
  // G6 only: maximum of the displayed G6 expression itself (the quoted value
  // refers to its closing inequality, which is what computed_max measures).
  double expression_max = std::numeric_limits<double>::quiet_NaN();
};

/// 48 x (quantity compared with the quoted value) for each face.
inline Polynomial face_compared_polynomial(FaceId id) {
  return id == FaceId::G6 ? g6_bound_polynomial() : face_polynomial(id);
}

inline double to_f_upper(double scaled) { return divide_exact(Interval(scaled), 48.0).hi; }
inline double to_f_lower(double scaled) { return divide_exact(Interval(scaled), 48.0).lo; }

inline FaceReport certify_face(FaceId id, double tol = 1e-8, std::uint64_t max_boxes = 10'000'000,
                               std::size_t workers = 1) {
  const Box domain = face_domain(id);
  const BoxObjective f(face_compared_polynomial(id));
  FaceReport r;
  r.id = id;
  r.quoted_value = quoted_face_max(id);
  r.run = maximize(f, domain, tol, max_boxes, workers);
  r.computed_max = to_f_lower(r.run.best_lower_bound);
  r.certified_upper = to_f_upper(r.run.certified_upper_bound);
  r.argmax = r.run.witness;
  r.delta = r.computed_max - r.quoted_value;
  if (r.run.certified_upper_bound <= 56.0 + tol) {
    r.verdict = Verdict::certified;
  } else if (r.run.best_lower_bound > 56.0) {
    r.verdict = Verdict::refuted;
  } else {
    r.verdict = Verdict::inconclusive;
  }
  if (id == FaceId::G6) {
    const auto expr = maximize(BoxObjective(face_polynomial(id)), domain, tol, max_boxes, workers);
    r.expression_max = to_f_lower(expr.best_lower_bound);
  }
  return r;
}

inline std::vector<FaceReport> certify_faces(double tol = 1e-8, std::uint64_t max_boxes = 10'000'000,
                                             std::size_t workers = 1) {
  std::vector<FaceReport> out;
  for (FaceId id : kAllFaces) out.push_back(certify_face(id, tol, max_boxes, workers));
  return out;
}

}  // namespace logcoef
