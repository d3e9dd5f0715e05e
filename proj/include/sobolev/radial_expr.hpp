#pragma once

// Finite sums  sum_j P_j(x) |x|^j  on R^N \ {0}, closed under partial
// differentiation. Stored in even/odd normal form
//
//   A(x) |x|^(2a)  +  B(x) |x|^(2b+1)
//
// where neither A nor B is divisible by |x|^2 (and a = 0 / b = 0 when the
// polynomial is zero). The representation of a function is unique, so
// equality and zero tests are structural.

#include <sobolev/polynomial.hpp>
#include <sobolev/rational.hpp>

#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sobolev {

template <class T>
T int_power(T base, int e) {
  if (e < 0) {
    return T(1) / int_power(base, -e);
  }
  T out(1);
  for (int k = 0; k < e; ++k) {
    out *= base;
  }
  return out;
}

class ZeroPointError : public std::domain_error {
 public:
  ZeroPointError() : std::domain_error("radial expression evaluated at the origin") {}
};

class ZeroExpressionError : public std::domain_error {
 public:
  ZeroExpressionError() : std::domain_error("homogeneity degree of the zero expression") {}
};

/// Exact value a + b*sqrt(r2), r2 = |x|^2.
struct RadialValue {
  Rational even;
  Rational odd;
  Rational radius_squared;

  double to_double() const {
    return even.get_d() + odd.get_d() * std::sqrt(radius_squared.get_d());
  }
};

class RadialExpr {
 public:
  using TermMap = std::map<int, Polynomial>;

  explicit RadialExpr(std::size_t dim) : even_(dim), odd_(dim) {}

  /// Canonicalizes an arbitrary sum of P_j |x|^j.
  RadialExpr(std::size_t dim, const TermMap& terms) : RadialExpr(dim) {
    std::optional<int> even_min, odd_min;
    for (const auto& [j, p] : terms) {
      if (p.dimension() != dim) {
        throw std::invalid_argument("radial term dimension mismatch");
      }
      if (p.is_zero()) {
        continue;
      }
      auto& slot = is_even(j) ? even_min : odd_min;
      int half = floor_half(j);
      slot = slot ? std::min(*slot, half) : half;
    }
    for (const auto& [j, p] : terms) {
      if (p.is_zero()) {
        continue;
      }
      int half = floor_half(j);
      if (is_even(j)) {
        even_ += p.times_radius_squared(static_cast<unsigned>(half - *even_min));
      } else {
        odd_ += p.times_radius_squared(static_cast<unsigned>(half - *odd_min));
      }
    }
    even_k_ = even_min.value_or(0);
    odd_k_ = odd_min.value_or(0);
    reduce();
  }

  static RadialExpr polynomial(const Polynomial& p) {
    return RadialExpr(p.dimension(), TermMap{{0, p}});
  }

  static RadialExpr constant(std::size_t dim, const Rational& c) {
    return polynomial(Polynomial::constant(dim, c));
  }

  /// |x|^j
  static RadialExpr radius_power(std::size_t dim, int j) {
    return RadialExpr(dim, TermMap{{j, Polynomial::constant(dim, Rational(1))}});
  }

  /// P(x) |x|^j
  static RadialExpr term(const Polynomial& p, int j) {
    return RadialExpr(p.dimension(), TermMap{{j, p}});
  }

  std::size_t dimension() const { return even_.dimension(); }
  bool is_zero() const { return even_.is_zero() && odd_.is_zero(); }

  const Polynomial& even_part() const { return even_; }
  const Polynomial& odd_part() const { return odd_; }
  /// Radius power carried by the even part (2a).
  int even_power() const { return 2 * even_k_; }
  /// Radius power carried by the odd part (2b + 1).
  int odd_power() const { return 2 * odd_k_ + 1; }

  TermMap terms() const {
    TermMap out;
    if (!even_.is_zero()) {
      out.emplace(even_power(), even_);
    }
    if (!odd_.is_zero()) {
      out.emplace(odd_power(), odd_);
    }
    return out;
  }

  /// The constant value, if the expression is a constant function.
  std::optional<Rational> as_constant() const {
    if (!odd_.is_zero() || even_k_ != 0) {
      return is_zero() ? std::optional<Rational>(Rational(0)) : std::nullopt;
    }
    return even_.as_constant();
  }

  RadialExpr derivative(std::size_t axis) const {
    RadialExpr out(dimension());
    // d/dx_i (P |x|^j) = (d_i P)|x|^j + j x_i P |x|^(j-2), written over |x|^(j-2)
    auto part = [axis](const Polynomial& p, int j) {
      Polynomial lifted = p.derivative(axis).times_radius_squared();
      lifted += p.times_variable(axis) * Rational(j);
      return lifted;
    };
    if (!even_.is_zero()) {
      out.even_ = part(even_, even_power());
      out.even_k_ = even_k_ - 1;
    }
    if (!odd_.is_zero()) {
      out.odd_ = part(odd_, odd_power());
      out.odd_k_ = odd_k_ - 1;
    }
    out.reduce();
    return out;
  }

  /// Apply d/dx_{i_1} ... d/dx_{i_k}.
  RadialExpr derivative(std::span<const std::size_t> axes) const {
    RadialExpr out = *this;
    for (auto a : axes) {
      out = out.derivative(a);
    }
    return out;
  }

  /// Exact value split as a + b*|x| with |x| = sqrt(|x|^2).
  RadialValue evaluate(std::span<const Rational> x) const {
    if (x.size() != dimension()) {
      throw std::invalid_argument("evaluate: point dimension mismatch");
    }
    Rational r2(0);
    for (const auto& xi : x) {
      r2 += xi * xi;
    }
    if (r2 == 0) {
      throw ZeroPointError();
    }
    RadialValue v{Rational(0), Rational(0), r2};
    if (!even_.is_zero()) {
      v.even = even_.evaluate(x) * pow(r2, even_k_);
    }
    if (!odd_.is_zero()) {
      v.odd = odd_.evaluate(x) * pow(r2, odd_k_);
    }
    return v;
  }

  template <class T>
  T evaluate_numeric(std::span<const T> x) const {
    if (x.size() != dimension()) {
      throw std::invalid_argument("evaluate: point dimension mismatch");
    }
    using std::sqrt;
    T r2(0);
    for (const auto& xi : x) {
      r2 += xi * xi;
    }
    if (r2 == T(0)) {
      throw ZeroPointError();
    }
    T out(0);
    if (!even_.is_zero()) {
      out += even_.evaluate_numeric(x) * int_power(r2, even_k_);
    }
    if (!odd_.is_zero()) {
      out += odd_.evaluate_numeric(x) * int_power(r2, odd_k_) * sqrt(r2);
    }
    return out;
  }

  double evaluate_numeric(std::span<const double> x) const {
    return evaluate_numeric<double>(x);
  }

  /// Common total degree d of every P_j(x)|x|^j term (counting |x|^j as
  /// degree j); nullopt if the terms disagree.
  std::optional<int> homogeneity_degree() const {
    if (is_zero()) {
      throw ZeroExpressionError();
    }
    std::optional<int> deg;
    auto merge = [&deg](const Polynomial& p, int j) -> bool {
      if (p.is_zero()) {
        return true;
      }
      auto d = p.homogeneous_degree();
      if (!d) {
        return false;
      }
      if (deg && *deg != *d + j) {
        return false;
      }
      deg = *d + j;
      return true;
    };
    if (!merge(even_, even_power()) || !merge(odd_, odd_power())) {
      return std::nullopt;
    }
    return deg;
  }

  /// P(Ax) |Ax|^j with |Ax| = |x|; valid for orthogonal A only.
  RadialExpr substitute_orthogonal(std::span<const Rational> a) const {
    RadialExpr out = *this;
    out.even_ = even_.substitute_linear(a);
    out.odd_ = odd_.substitute_linear(a);
    out.reduce();
    return out;
  }

  RadialExpr& operator+=(const RadialExpr& o) {
    *this = RadialExpr(dimension(), merged_terms(o, Rational(1)));
    return *this;
  }
  RadialExpr& operator-=(const RadialExpr& o) {
    *this = RadialExpr(dimension(), merged_terms(o, Rational(-1)));
    return *this;
  }
  RadialExpr& operator*=(const Rational& s) {
    even_ *= s;
    odd_ *= s;
    if (s == 0) {
      even_k_ = odd_k_ = 0;
    }
    return *this;
  }

  friend RadialExpr operator+(RadialExpr a, const RadialExpr& b) { return a += b; }
  friend RadialExpr operator-(RadialExpr a, const RadialExpr& b) { return a -= b; }
  friend RadialExpr operator*(RadialExpr a, const Rational& s) { return a *= s; }
  friend RadialExpr operator*(const Rational& s, RadialExpr a) { return a *= s; }
  friend RadialExpr operator-(RadialExpr a) { return a *= Rational(-1); }

  friend RadialExpr operator*(const RadialExpr& a, const RadialExpr& b) {
    if (a.dimension() != b.dimension()) {
      throw std::invalid_argument("radial expression dimension mismatch");
    }
    TermMap terms;
    auto acc = [&terms](int j, Polynomial p) {
      if (p.is_zero()) {
        return;
      }
      auto [it, inserted] = terms.try_emplace(j, p);
      if (!inserted) {
        it->second += p;
      }
    };
    acc(a.even_power() + b.even_power(), a.even_ * b.even_);
    acc(a.odd_power() + b.odd_power(), a.odd_ * b.odd_);
    acc(a.even_power() + b.odd_power(), a.even_ * b.odd_);
    acc(a.odd_power() + b.even_power(), a.odd_ * b.even_);
    return RadialExpr(a.dimension(), terms);
  }

  friend RadialExpr& operator*=(RadialExpr& a, const RadialExpr& b) { return a = a * b; }

  friend bool operator==(const RadialExpr& a, const RadialExpr& b) {
    return a.even_ == b.even_ && a.odd_ == b.odd_ && a.even_k_ == b.even_k_ &&
           a.odd_k_ == b.odd_k_;
  }

  std::string to_string() const {
    if (is_zero()) {
      return "0";
    }
    std::string out;
    auto emit = [&out](const Polynomial& p, int j) {
      if (p.is_zero()) {
        return;
      }
      if (!out.empty()) {
        out += " + ";
      }
      out += "(" + p.to_string() + ")";
      if (j != 0) {
        out += "*|x|^" + std::to_string(j);
      }
    };
    emit(even_, even_power());
    emit(odd_, odd_power());
    return out;
  }

 private:
  static bool is_even(int j) { return j % 2 == 0; }
  static int floor_half(int j) { return (j >= 0 || j % 2 == 0) ? j / 2 : (j - 1) / 2; }

  TermMap merged_terms(const RadialExpr& o, const Rational& sign) const {
    if (o.dimension() != dimension()) {
      throw std::invalid_argument("radial expression dimension mismatch");
    }
    TermMap terms = this->terms();
    for (auto [j, p] : o.terms()) {
      p *= sign;
      auto [it, inserted] = terms.try_emplace(j, p);
      if (!inserted) {
        it->second += p;
      }
    }
    return terms;
  }

  void reduce() {
    reduce_part(even_, even_k_);
    reduce_part(odd_, odd_k_);
  }

  static void reduce_part(Polynomial& p, int& k) {
    if (p.is_zero()) {
      k = 0;
      return;
    }
    while (auto q = p.divide_by_radius_squared()) {
      p = std::move(*q);
      ++k;
    }
  }

  Polynomial even_;
  int even_k_ = 0;
  Polynomial odd_;
  int odd_k_ = 0;
};

/// Sum of many expressions with a single canonicalization at the end.
inline RadialExpr sum_of(std::size_t dim, const std::vector<RadialExpr>& parts) {
  RadialExpr::TermMap terms;
  for (const auto& e : parts) {
    for (auto& [j, p] : e.terms()) {
      auto [it, inserted] = terms.try_emplace(j, p);
      if (!inserted) {
        it->second += p;
      }
    }
  }
  return RadialExpr(dim, terms);
}

/// Canonical form plus its zero flag. Every RadialExpr is already kept
/// canonical, so this is idempotent by construction.
struct CanonicalForm {
  RadialExpr expr;
  bool is_zero;
};

inline CanonicalForm canonicalize(const RadialExpr& e) { return {e, e.is_zero()}; }

inline CanonicalForm canonicalize(std::size_t dim, const RadialExpr::TermMap& terms) {
  RadialExpr e(dim, terms);
  bool zero = e.is_zero();
  return {std::move(e), zero};
}

}  // namespace sobolev
