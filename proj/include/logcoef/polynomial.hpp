#pragma once

// Multivariate polynomials with 64-bit integer coefficients, plus a compiled
// recursive Horner form that evaluates them in double or Interval arithmetic.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "logcoef/interval.hpp"

namespace logcoef {

class Polynomial {
public:
  using Exponents = std::vector<unsigned>;

  explicit Polynomial(std::size_t dim = 0) : dim_(dim) {}

  static Polynomial constant(std::int64_t value, std::size_t dim) {
    Polynomial p(dim);
    p.add_term(Exponents(dim, 0u), value);
    return p;
  }

  /// The coordinate function x_index.
  static Polynomial variable(std::size_t index, std::size_t dim) {
    if (index >= dim) throw std::out_of_range("polynomial variable index out of range");
    Exponents e(dim, 0u);
    e[index] = 1;
    Polynomial p(dim);
    p.add_term(std::move(e), 1);
    return p;
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::map<Exponents, std::int64_t>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  Polynomial& operator+=(const Polynomial& o) {
    require_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    require_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, checked_neg(c));
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial(a.dim_) - a; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_dim(b);
    Polynomial out(a.dim_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.dim_);
        for (std::size_t k = 0; k < a.dim_; ++k) e[k] = ea[k] + eb[k];
        out.add_term(std::move(e), checked_mul(ca, cb));
      }
    }
    return out;
  }

  friend Polynomial operator*(std::int64_t s, const Polynomial& a) {
    return Polynomial::constant(s, a.dim_) * a;
  }
  friend Polynomial operator+(std::int64_t s, const Polynomial& a) {
    return Polynomial::constant(s, a.dim_) + a;
  }
  friend Polynomial operator-(std::int64_t s, const Polynomial& a) {
    return Polynomial::constant(s, a.dim_) - a;
  }
  friend Polynomial operator+(const Polynomial& a, std::int64_t s) { return s + a; }
  friend Polynomial operator-(const Polynomial& a, std::int64_t s) {
    return a - Polynomial::constant(s, a.dim_);
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// d/dx_var, still in the same variables.
  Polynomial derivative(std::size_t var) const {
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents d = e;
      d[var] -= 1;
      out.add_term(std::move(d), checked_mul(c, static_cast<std::int64_t>(e[var])));
    }
    return out;
  }

  /// Fix x_var = value and drop that variable (dimension decreases by one).
  Polynomial substitute(std::size_t var, std::int64_t value) const {
    if (var >= dim_) throw std::out_of_range("substitute: variable index out of range");
    Polynomial out(dim_ - 1);
    for (const auto& [e, c] : terms_) {
      std::int64_t coef = c;
      for (unsigned k = 0; k < e[var]; ++k) coef = checked_mul(coef, value);
      Exponents r;
      r.reserve(dim_ - 1);
      for (std::size_t k = 0; k < dim_; ++k)
        if (k != var) r.push_back(e[k]);
      out.add_term(std::move(r), coef);
    }
    return out;
  }

  /// Direct monomial evaluation in double (reference path for tests).
  double evaluate_monomials(std::span<const double> x) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = static_cast<double>(c);
      for (std::size_t k = 0; k < dim_; ++k)
        for (unsigned j = 0; j < e[k]; ++j) t *= x[k];
      sum += t;
    }
    return sum;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      os << (first ? "" : " + ") << it->second;
      for (std::size_t k = 0; k < dim_; ++k)
        if (it->first[k] > 0) os << "*x" << k << '^' << it->first[k];
      first = false;
    }
    return first ? "0" : os.str();
  }

private:
  void add_term(Exponents e, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      std::int64_t sum = 0;
      if (__builtin_add_overflow(it->second, c, &sum)) throw std::overflow_error("polynomial coefficient overflow");
      if (sum == 0) {
        terms_.erase(it);
      } else {
        it->second = sum;
      }
    }
  }

  void require_dim(const Polynomial& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("polynomial dimension mismatch");
  }

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("polynomial coefficient overflow");
    return r;
  }

  static std::int64_t checked_neg(std::int64_t a) { return checked_mul(a, -1); }

  std::size_t dim_;
  std::map<Exponents, std::int64_t> terms_;
};

/// Recursive Horner scheme: P = sum_k x_0^k Q_k(x_1, ...), each Q_k again in
/// Horner form in the next variable. Integer coefficients are exact doubles
/// (|c| < 2^53 is checked), so Interval evaluation is a sound enclosure.
class HornerForm {
public:
  HornerForm() = default;

  explicit HornerForm(const Polynomial& p) : dim_(p.dim()) {
    std::vector<std::pair<Polynomial::Exponents, std::int64_t>> terms(p.terms().begin(), p.terms().end());
    for (const auto& [e, c] : terms) {
      if (c > (std::int64_t{1} << 53) || c < -(std::int64_t{1} << 53)) {
        throw std::overflow_error("coefficient not exactly representable as double");
      }
    }
    root_ = build(terms, 0);
  }

  std::size_t dim() const noexcept { return dim_; }

  template <class T>
  T evaluate(std::span<const T> x) const {
    if (x.size() != dim_) throw std::invalid_argument("HornerForm: wrong number of arguments");
    if (root_ < 0) return T(0.0);
    return eval_node<T>(root_, x);
  }

  double operator()(std::span<const double> x) const { return evaluate<double>(x); }
  Interval operator()(std::span<const Interval> x) const { return evaluate<Interval>(x); }

private:
  struct Node {
    std::size_t var = 0;          // variable this level is Horner in; dim_ for a leaf
    double constant = 0.0;        // leaf value
    std::vector<int> children;    // coefficient subtrees by power, -1 for zero
  };

  int build(const std::vector<std::pair<Polynomial::Exponents, std::int64_t>>& terms, std::size_t var) {
    if (terms.empty()) return -1;
    if (var == dim_) {
      std::int64_t c = 0;
      for (const auto& t : terms) c += t.second;
      if (c == 0) return -1;
      nodes_.push_back({dim_, static_cast<double>(c), {}});
      return static_cast<int>(nodes_.size() - 1);
    }
    unsigned degree = 0;
    for (const auto& t : terms) degree = std::max(degree, t.first[var]);
    std::vector<std::vector<std::pair<Polynomial::Exponents, std::int64_t>>> by_power(degree + 1);
    for (const auto& t : terms) by_power[t.first[var]].push_back(t);
    std::vector<int> children(degree + 1, -1);
    for (unsigned k = 0; k <= degree; ++k) children[k] = build(by_power[k], var + 1);
    // Skip a variable level that only carries x^0.
    if (degree == 0) return children[0];
    nodes_.push_back({var, 0.0, std::move(children)});
    return static_cast<int>(nodes_.size() - 1);
  }

  template <class T>
  T eval_node(int index, std::span<const T> x) const {
    const Node& node = nodes_[static_cast<std::size_t>(index)];
    if (node.var == dim_) return T(node.constant);
    const T& xv = x[node.var];
    const std::size_t degree = node.children.size() - 1;
    T acc = eval_node<T>(node.children[degree], x);
    for (std::size_t k = degree; k-- > 0;) {
      acc = acc * xv;
      if (node.children[k] >= 0) acc = acc + eval_node<T>(node.children[k], x);
    }
    return acc;
  }

  std::size_t dim_ = 0;
  int root_ = -1;
  std::vector<Node> nodes_;
};

}  // namespace logcoef
