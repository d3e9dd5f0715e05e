#pragma once

#include <sobolev/rational.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sobolev {

inline constexpr std::size_t kMaxDimension = 8;

/// Dense exponent vector; entries past the polynomial's dimension stay 0.
using Exponents = std::array<std::uint16_t, kMaxDimension>;

/// Multivariate polynomial in x_1..x_N with rational coefficients.
/// Zero coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<Exponents, Rational>;

  explicit Polynomial(std::size_t dim) : dim_(check_dim(dim)) {}

  static Polynomial constant(std::size_t dim, const Rational& c) {
    Polynomial p(dim);
    p.add_term(Exponents{}, c);
    return p;
  }

  /// x_i, 0-based axis.
  static Polynomial variable(std::size_t dim, std::size_t axis) {
    Polynomial p(dim);
    p.add_term(unit(dim, axis), Rational(1));
    return p;
  }

  /// |x|^2 = sum of x_i^2.
  static Polynomial radius_squared(std::size_t dim) {
    Polynomial p(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      Exponents e{};
      e[i] = 2;
      p.add_term(e, Rational(1));
    }
    return p;
  }

  std::size_t dimension() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponents& e, const Rational& c) {
    if (c == 0) {
      return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) {
        terms_.erase(it);
      }
    }
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Constant term when the polynomial has degree <= 0.
  std::optional<Rational> as_constant() const {
    if (terms_.empty()) {
      return Rational(0);
    }
    if (terms_.size() == 1 && terms_.begin()->first == Exponents{}) {
      return terms_.begin()->second;
    }
    return std::nullopt;
  }

  /// Common total degree of all monomials, or nullopt for mixed degrees
  /// or the zero polynomial.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [e, c] : terms_) {
      int d = total_degree(e);
      if (deg && *deg != d) {
        return std::nullopt;
      }
      deg = d;
    }
    return deg;
  }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      d = std::max(d, total_degree(e));
    }
    return d;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) {
      add_term(e, c);
    }
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) {
      add_term(e, -c);
    }
    return *this;
  }

  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) {
      c *= s;
    }
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    Polynomial out(a.dim_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e{};
        for (std::size_t i = 0; i < a.dim_; ++i) {
          e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        }
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// Multiply by x_axis.
  Polynomial times_variable(std::size_t axis) const {
    check_axis(axis);
    Polynomial out(dim_);
    for (const auto& [key, c] : terms_) {
      Exponents e = key;
      ++e[axis];
      out.terms_.emplace(e, c);
    }
    return out;
  }

  Polynomial times_radius_squared(unsigned power = 1) const {
    Polynomial out = *this;
    Polynomial r2 = radius_squared(dim_);
    for (unsigned k = 0; k < power; ++k) {
      out = out * r2;
    }
    return out;
  }

  /// Exact quotient by |x|^2 if it divides, otherwise nullopt.
  /// Division by x_1^2 + (x_2^2 + ... + x_N^2), monic in x_1.
  std::optional<Polynomial> divide_by_radius_squared() const {
    Polynomial rem = *this;
    Polynomial quot(dim_);
    while (true) {
      // leading term in x_1-degree
      const Exponents* lead = nullptr;
      for (const auto& [e, c] : rem.terms_) {
        if (e[0] >= 2 && (lead == nullptr || e[0] > (*lead)[0])) {
          lead = &e;
        }
      }
      if (lead == nullptr) {
        break;
      }
      Exponents q = *lead;
      Rational c = rem.terms_.at(q);
      q[0] = static_cast<std::uint16_t>(q[0] - 2);
      quot.add_term(q, c);
      for (std::size_t i = 0; i < dim_; ++i) {
        Exponents s = q;
        s[i] = static_cast<std::uint16_t>(s[i] + 2);
        rem.add_term(s, -c);
      }
    }
    if (!rem.is_zero()) {
      return std::nullopt;
    }
    return quot;
  }

  /// Partial derivative along axis (0-based).
  Polynomial derivative(std::size_t axis) const {
    check_axis(axis);
    Polynomial out(dim_);
    for (const auto& [key, c] : terms_) {
      if (key[axis] == 0) {
        continue;
      }
      Exponents e = key;
      Rational nc = c * static_cast<unsigned long>(e[axis]);
      --e[axis];
      out.add_term(e, nc);
    }
    return out;
  }

  /// P(Ax) where (Ax)_j = sum_i a(j, i) x_i; `a` is row-major N x N.
  Polynomial substitute_linear(std::span<const Rational> a) const {
    if (a.size() != dim_ * dim_) {
      throw std::invalid_argument("substitute_linear: matrix size mismatch");
    }
    std::vector<Polynomial> images;
    images.reserve(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      Polynomial row(dim_);
      for (std::size_t i = 0; i < dim_; ++i) {
        row.add_term(unit(dim_, i), a[j * dim_ + i]);
      }
      images.push_back(std::move(row));
    }
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_) {
      Polynomial mono = constant(dim_, c);
      for (std::size_t j = 0; j < dim_; ++j) {
        for (unsigned k = 0; k < e[j]; ++k) {
          mono = mono * images[j];
        }
      }
      out += mono;
    }
    return out;
  }

  Rational evaluate(std::span<const Rational> x) const {
    if (x.size() != dim_) {
      throw std::invalid_argument("evaluate: point dimension mismatch");
    }
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < dim_; ++i) {
        if (e[i] != 0) {
          t *= pow(x[i], e[i]);
        }
      }
      sum += t;
    }
    return sum;
  }

  template <class T>
  T evaluate_numeric(std::span<const T> x) const {
    if (x.size() != dim_) {
      throw std::invalid_argument("evaluate: point dimension mismatch");
    }
    T sum(0);
    for (const auto& [e, c] : terms_) {
      T t(c.get_d());
      for (std::size_t i = 0; i < dim_; ++i) {
        for (unsigned k = 0; k < e[i]; ++k) {
          t *= x[i];
        }
      }
      sum += t;
    }
    return sum;
  }

  std::string to_string() const {
    if (terms_.empty()) {
      return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational mag = abs(c);
      os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      bool unit_coeff = (mag == 1);
      bool has_var = total_degree(e) > 0;
      if (!unit_coeff || !has_var) {
        os << sobolev::to_string(mag);
      }
      bool need_star = !unit_coeff;
      for (std::size_t i = 0; i < dim_; ++i) {
        if (e[i] == 0) {
          continue;
        }
        os << (need_star ? "*" : "") << "x" << (i + 1);
        if (e[i] > 1) {
          os << "^" << e[i];
        }
        need_star = true;
      }
      first = false;
    }
    return os.str();
  }

  static int total_degree(const Exponents& e) {
    int d = 0;
    for (auto k : e) {
      d += k;
    }
    return d;
  }

  static Exponents unit(std::size_t dim, std::size_t axis) {
    if (axis >= dim) {
      throw std::out_of_range("axis index out of range");
    }
    Exponents e{};
    e[axis] = 1;
    return e;
  }

 private:
  static std::size_t check_dim(std::size_t dim) {
    if (dim == 0 || dim > kMaxDimension) {
      throw std::invalid_argument("polynomial dimension must be in [1, 8]");
    }
    return dim;
  }

  void check_axis(std::size_t axis) const {
    if (axis >= dim_) {
      throw std::out_of_range("axis index out of range");
    }
  }

  void check_same(const Polynomial& o) const {
    if (o.dim_ != dim_) {
      throw std::invalid_argument("polynomial dimension mismatch");
    }
  }

  std::size_t dim_;
  Terms terms_;
};

}  // namespace sobolev
