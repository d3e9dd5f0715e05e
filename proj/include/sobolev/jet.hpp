#pragma once

// Truncated Taylor series  sum_{k=0}^{K} c_k h^k  about a base point, with
// the usual recurrences for products, quotients and elementary functions.
// Scalar T is double or a boost::multiprecision float; functions are found
// by ADL.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sobolev {

class JetDomainError : public std::domain_error {
 public:
  explicit JetDomainError(const char* what) : std::domain_error(what) {}
};

template <class T>
class Jet {
 public:
  Jet(T base, std::vector<T> coeffs) : base_(std::move(base)), c_(std::move(coeffs)) {
    if (c_.empty()) {
      throw std::invalid_argument("jet needs at least one coefficient");
    }
  }

  static Jet constant(T base, const T& value, int order) {
    std::vector<T> c(static_cast<std::size_t>(order) + 1, T(0));
    c[0] = value;
    return Jet(std::move(base), std::move(c));
  }

  /// The identity function h -> base + h.
  static Jet variable(const T& base, int order) {
    Jet j = constant(base, base, order);
    if (order >= 1) {
      j.c_[1] = T(1);
    }
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& base() const { return base_; }
  const T& operator[](std::size_t k) const { return c_.at(k); }
  const std::vector<T>& coefficients() const { return c_; }
  const T& value() const { return c_[0]; }

  /// k-th derivative at the base point: k! c_k.
  T derivative(int k) const {
    T f(1);
    for (int i = 2; i <= k; ++i) {
      f *= T(i);
    }
    return f * c_.at(static_cast<std::size_t>(k));
  }

  bool is_zero() const {
    for (const auto& v : c_) {
      if (v != T(0)) {
        return false;
      }
    }
    return true;
  }

  Jet zero_like() const { return constant(base_, T(0), order()); }

  Jet& operator+=(const Jet& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      c_[k] += o.c_[k];
    }
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      c_[k] -= o.c_[k];
    }
    return *this;
  }
  Jet& operator*=(const T& s) {
    for (auto& v : c_) {
      v *= s;
    }
    return *this;
  }
  Jet& operator+=(const T& s) {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) { return a *= T(-1); }
  friend Jet operator*(Jet a, const T& s) { return a *= s; }
  friend Jet operator*(const T& s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, const T& s) { return a += s; }
  friend Jet operator+(const T& s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, const T& s) { return a += T(-s); }
  friend Jet operator-(const T& s, Jet a) { return (-a) += s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check(b);
    const std::size_t n = a.c_.size();
    std::vector<T> out(n, T(0));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i <= k; ++i) {
        out[k] += a.c_[i] * b.c_[k - i];
      }
    }
    return Jet(a.base_, std::move(out));
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    a.check(b);
    if (b.c_[0] == T(0)) {
      throw JetDomainError("jet division by a series with zero constant term");
    }
    const std::size_t n = a.c_.size();
    std::vector<T> q(n, T(0));
    for (std::size_t k = 0; k < n; ++k) {
      T acc = a.c_[k];
      for (std::size_t i = 1; i <= k; ++i) {
        acc -= b.c_[i] * q[k - i];
      }
      q[k] = acc / b.c_[0];
    }
    return Jet(a.base_, std::move(q));
  }

  friend Jet operator/(const Jet& a, const T& s) { return a * T(T(1) / s); }
  friend Jet operator/(const T& s, const Jet& b) { return constant(b.base_, s, b.order()) / b; }

  /// Antiderivative with the given constant term, truncated to this order.
  Jet integrate(const T& value_at_base) const {
    std::vector<T> out(c_.size(), T(0));
    out[0] = value_at_base;
    for (std::size_t k = 1; k < c_.size(); ++k) {
      out[k] = c_[k - 1] / T(static_cast<int>(k));
    }
    return Jet(base_, std::move(out));
  }

  /// Same series truncated or zero-padded to a new order.
  Jet with_order(int order) const {
    std::vector<T> out(static_cast<std::size_t>(order) + 1, T(0));
    for (std::size_t k = 0; k < out.size() && k < c_.size(); ++k) {
      out[k] = c_[k];
    }
    return Jet(base_, std::move(out));
  }

 private:
  void check(const Jet& o) const {
    if (o.c_.size() != c_.size() || !(o.base_ == base_)) {
      throw std::invalid_argument("jet operands differ in order or base point");
    }
  }

  T base_;
  std::vector<T> c_;
};

template <class T>
Jet<T> exp(const Jet<T>& a) {
  using std::exp;
  const auto& c = a.coefficients();
  std::vector<T> e(c.size(), T(0));
  e[0] = exp(c[0]);
  for (std::size_t k = 1; k < c.size(); ++k) {
    T acc(0);
    for (std::size_t i = 1; i <= k; ++i) {
      acc += T(static_cast<int>(i)) * c[i] * e[k - i];
    }
    e[k] = acc / T(static_cast<int>(k));
  }
  return Jet<T>(a.base(), std::move(e));
}

template <class T>
Jet<T> log(const Jet<T>& a) {
  using std::log;
  const auto& c = a.coefficients();
  if (!(c[0] > T(0))) {
    throw JetDomainError("jet log of a series with non-positive constant term");
  }
  std::vector<T> l(c.size(), T(0));
  l[0] = log(c[0]);
  for (std::size_t k = 1; k < c.size(); ++k) {
    T acc(0);
    for (std::size_t i = 1; i < k; ++i) {
      acc += T(static_cast<int>(i)) * l[i] * c[k - i];
    }
    l[k] = (c[k] - acc / T(static_cast<int>(k))) / c[0];
  }
  return Jet<T>(a.base(), std::move(l));
}

template <class T>
Jet<T> sqrt(const Jet<T>& a) {
  using std::sqrt;
  const auto& c = a.coefficients();
  if (!(c[0] > T(0))) {
    throw JetDomainError("jet sqrt of a series with non-positive constant term");
  }
  std::vector<T> s(c.size(), T(0));
  s[0] = sqrt(c[0]);
  for (std::size_t k = 1; k < c.size(); ++k) {
    T acc = c[k];
    for (std::size_t i = 1; i < k; ++i) {
      acc -= s[i] * s[k - i];
    }
    s[k] = acc / (T(2) * s[0]);
  }
  return Jet<T>(a.base(), std::move(s));
}

template <class T>
Jet<T> reciprocal(const Jet<T>& a) {
  return T(1) / a;
}

/// outer(inner(h)) where `outer` is the jet of a function about inner(0).
template <class T>
Jet<T> compose(const Jet<T>& outer, const Jet<T>& inner) {
  if (outer.order() != inner.order()) {
    throw std::invalid_argument("compose: jet orders differ");
  }
  Jet<T> shift = inner - inner.value();
  const int n = outer.order();
  Jet<T> acc = Jet<T>::constant(inner.base(), outer[static_cast<std::size_t>(n)], n);
  for (int k = n - 1; k >= 0; --k) {
    acc = acc * shift;
    acc += outer[static_cast<std::size_t>(k)];
  }
  return acc;
}

}  // namespace sobolev
