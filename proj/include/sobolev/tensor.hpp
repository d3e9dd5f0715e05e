#pragma once

// Symmetric derivative tensors stored on sorted multi-indices.
//
// The order-m tensor of mixed partials of a smooth function has N^m
// components but only C(N+m-1, m) distinct ones. Each sorted key
// (i_1 <= ... <= i_m) stands for m!/(k_1!...k_N!) equal components, where
// k_j counts how often axis j occurs in the key.

#include <sobolev/parallel.hpp>
#include <sobolev/radial_expr.hpp>
#include <sobolev/rational.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sobolev {

/// Sorted multiset of 0-based axes.
using MultiIndex = std::vector<std::size_t>;

class ShapeMismatchError : public std::invalid_argument {
 public:
  ShapeMismatchError() : std::invalid_argument("tensor shape mismatch") {}
};

/// All sorted multi-indices of size m over {0..dim-1}, lexicographic.
inline std::vector<MultiIndex> sorted_multi_indices(std::size_t dim, std::size_t order) {
  std::vector<MultiIndex> out;
  MultiIndex cur(order, 0);
  if (order == 0) {
    out.push_back(cur);
    return out;
  }
  while (true) {
    out.push_back(cur);
    // rightmost position that can still grow
    std::size_t pos = order;
    while (pos > 0 && cur[pos - 1] == dim - 1) {
      --pos;
    }
    if (pos == 0) {
      break;
    }
    std::size_t v = cur[pos - 1] + 1;
    for (std::size_t k = pos - 1; k < order; ++k) {
      cur[k] = v;
    }
  }
  return out;
}

/// Axis occurrence counts of a sorted key (the multi-index alpha).
inline std::vector<unsigned> axis_counts(const MultiIndex& key, std::size_t dim) {
  std::vector<unsigned> k(dim, 0);
  for (auto a : key) {
    ++k.at(a);
  }
  return k;
}

/// m!/(k_1!...k_N!): number of index tuples represented by a sorted key.
inline Integer multiplicity(const MultiIndex& key, std::size_t dim) {
  Integer m = factorial(static_cast<unsigned>(key.size()));
  for (auto k : axis_counts(key, dim)) {
    m /= factorial(k);
  }
  return m;
}

template <class Entry>
class DerivativeTensor {
 public:
  DerivativeTensor(std::size_t dim, std::size_t order, std::vector<Entry> entries)
      : dim_(dim), order_(order), keys_(sorted_multi_indices(dim, order)),
        entries_(std::move(entries)) {
    if (entries_.size() != keys_.size()) {
      throw std::invalid_argument("derivative tensor: entry count must be C(N+m-1, m)");
    }
    mult_.reserve(keys_.size());
    for (const auto& k : keys_) {
      mult_.push_back(multiplicity(k, dim_));
    }
  }

  std::size_t dimension() const { return dim_; }
  std::size_t order() const { return order_; }
  std::size_t size() const { return keys_.size(); }
  const std::vector<MultiIndex>& keys() const { return keys_; }
  const std::vector<Entry>& entries() const { return entries_; }
  const Entry& entry(std::size_t idx) const { return entries_.at(idx); }
  const Integer& multiplicity_at(std::size_t idx) const { return mult_.at(idx); }

  /// Entry for any (not necessarily sorted) index tuple.
  const Entry& at(MultiIndex tuple) const {
    std::sort(tuple.begin(), tuple.end());
    return entries_.at(index_of(tuple));
  }

  std::size_t index_of(const MultiIndex& sorted_key) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), sorted_key);
    if (it == keys_.end() || *it != sorted_key) {
      throw std::out_of_range("multi-index not in tensor");
    }
    return static_cast<std::size_t>(it - keys_.begin());
  }

  template <class F>
  auto map(F&& f) const {
    using Out = decltype(f(entries_.front()));
    std::vector<Out> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) {
      out.push_back(f(e));
    }
    return DerivativeTensor<Out>(dim_, order_, std::move(out));
  }

  friend bool operator==(const DerivativeTensor& a, const DerivativeTensor& b) {
    return a.dim_ == b.dim_ && a.order_ == b.order_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t dim_;
  std::size_t order_;
  std::vector<MultiIndex> keys_;
  std::vector<Entry> entries_;
  std::vector<Integer> mult_;
};

using SymbolicTensor = DerivativeTensor<RadialExpr>;
using NumericTensor = DerivativeTensor<double>;

namespace detail {

inline RadialExpr scaled(const RadialExpr& e, const Integer& m) { return e * Rational(m); }
inline double scaled(double e, const Integer& m) { return e * m.get_d(); }

inline RadialExpr zero_like(const RadialExpr& e) { return RadialExpr(e.dimension()); }
inline double zero_like(double) { return 0.0; }

inline RadialExpr sum_entries(std::size_t dim, const std::vector<RadialExpr>& parts) {
  return sum_of(dim, parts);
}

/// Neumaier-compensated sum.
inline double sum_entries(std::size_t, const std::vector<double>& parts) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : parts) {
    double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace detail

/// grad log|x| = x_i |x|^-2.
inline std::vector<RadialExpr> log_gradient(std::size_t dim) {
  std::vector<RadialExpr> g;
  for (std::size_t i = 0; i < dim; ++i) {
    g.push_back(RadialExpr::term(Polynomial::variable(dim, i), -2));
  }
  return g;
}

/// Order-m tensor from a gradient seed. Each sorted key (i_1..i_m) is
/// d_{i_m} applied to the entry for (i_1..i_{m-1}).
inline SymbolicTensor derivative_tensor_from_gradient(const std::vector<RadialExpr>& gradient,
                                                      std::size_t order) {
  if (order == 0) {
    throw std::invalid_argument("derivative order must be >= 1");
  }
  const std::size_t dim = gradient.size();
  if (dim == 0) {
    throw std::invalid_argument("empty gradient seed");
  }
  SymbolicTensor cur(dim, 1, gradient);
  for (std::size_t m = 2; m <= order; ++m) {
    auto keys = sorted_multi_indices(dim, m);
    std::vector<RadialExpr> next(keys.size(), RadialExpr(dim));
    parallel_for(keys.size(), [&](std::size_t k) {
      MultiIndex parent(keys[k].begin(), keys[k].end() - 1);
      next[k] = cur.entry(cur.index_of(parent)).derivative(keys[k].back());
    });
    cur = SymbolicTensor(dim, m, std::move(next));
  }
  return cur;
}

inline std::vector<RadialExpr> gradient(const RadialExpr& u) {
  std::vector<RadialExpr> g;
  for (std::size_t i = 0; i < u.dimension(); ++i) {
    g.push_back(u.derivative(i));
  }
  return g;
}

inline SymbolicTensor derivative_tensor(const RadialExpr& u, std::size_t order) {
  return derivative_tensor_from_gradient(gradient(u), order);
}

inline SymbolicTensor log_derivative_tensor(std::size_t dim, std::size_t order) {
  return derivative_tensor_from_gradient(log_gradient(dim), order);
}

/// Sum over all N^m index tuples of T_i * S_i.
template <class Entry>
Entry contract(const DerivativeTensor<Entry>& t, const DerivativeTensor<Entry>& s) {
  if (t.dimension() != s.dimension() || t.order() != s.order()) {
    throw ShapeMismatchError();
  }
  std::vector<Entry> parts;
  parts.reserve(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    parts.push_back(detail::scaled(t.entry(k) * s.entry(k), t.multiplicity_at(k)));
  }
  return detail::sum_entries(t.dimension(), parts);
}

/// Sum of squares of all N^m components.
template <class Entry>
Entry frobenius_norm_sq(const DerivativeTensor<Entry>& t) {
  return contract(t, t);
}

/// Evaluate every symbolic entry at a floating-point point.
inline NumericTensor evaluate_tensor(const SymbolicTensor& t, std::span<const double> x) {
  return t.map([x](const RadialExpr& e) { return e.evaluate_numeric(x); });
}

}  // namespace sobolev
