#pragma once

// Derivatives of a radial function u(s), s = |x|^2 / 2, as polynomials in x:
//
//   d^alpha u = sum_{i=0}^{floor(m/2)} u^(m-i)(s) P^alpha_{m-2i}(x),  |alpha| = m.
//
// The table is built by induction on m: differentiating the term
// u^(m-i) P along x_j gives u^(m-i+1) x_j P + u^(m-i) d_j P.

#include <sobolev/polynomial.hpp>
#include <sobolev/radial_expr.hpp>
#include <sobolev/tensor.hpp>

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace sobolev {

class ChainRuleTable {
 public:
  ChainRuleTable(std::size_t dim, std::size_t order) : dim_(dim), order_(order) {
    if (dim == 0 || dim > kMaxDimension || order == 0 || order > 8) {
      throw std::invalid_argument("chain_rule_table: need 1 <= N <= 8 and 1 <= m <= 8");
    }
    std::vector<MultiIndex> keys = sorted_multi_indices(dim, 1);
    std::vector<std::vector<Polynomial>> polys;
    for (std::size_t j = 0; j < dim; ++j) {
      polys.push_back({Polynomial::variable(dim, j)});
    }
    for (std::size_t m = 1; m < order; ++m) {
      std::vector<MultiIndex> next = sorted_multi_indices(dim, m + 1);
      std::vector<std::vector<Polynomial>> next_polys;
      next_polys.reserve(next.size());
      for (const auto& key : next) {
        // parent = key without its last axis, still sorted
        MultiIndex parent(key.begin(), key.end() - 1);
        std::size_t j = key.back();
        auto it = std::lower_bound(keys.begin(), keys.end(), parent);
        const auto& p = polys[static_cast<std::size_t>(it - keys.begin())];
        std::vector<Polynomial> q((m + 1) / 2 + 1, Polynomial(dim));
        for (std::size_t i = 0; i < p.size(); ++i) {
          q[i] += p[i].times_variable(j);
          if (i + 1 < q.size()) {  // otherwise p[i] = P_0 is constant
            q[i + 1] += p[i].derivative(j);
          }
        }
        next_polys.push_back(std::move(q));
      }
      keys = std::move(next);
      polys = std::move(next_polys);
    }
    keys_ = std::move(keys);
    polys_ = std::move(polys);
  }

  std::size_t dimension() const { return dim_; }
  std::size_t order() const { return order_; }
  std::size_t size() const { return keys_.size(); }
  const std::vector<MultiIndex>& keys() const { return keys_; }

  /// P_{m-2i} for i = 0..floor(m/2), for the key at position idx.
  const std::vector<Polynomial>& polynomials(std::size_t idx) const { return polys_.at(idx); }

  const std::vector<Polynomial>& polynomials(const MultiIndex& sorted_key) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), sorted_key);
    if (it == keys_.end() || *it != sorted_key) {
      throw std::out_of_range("chain rule table: unknown multi-index");
    }
    return polys_[static_cast<std::size_t>(it - keys_.begin())];
  }

 private:
  std::size_t dim_;
  std::size_t order_;
  std::vector<MultiIndex> keys_;
  std::vector<std::vector<Polynomial>> polys_;
};

/// Exact tensor d^m u from exact s-derivatives; s_derivs[k] = u^(k), k = 0..m.
inline SymbolicTensor assemble_symbolic(const ChainRuleTable& table,
                                        std::span<const RadialExpr> s_derivs) {
  const std::size_t m = table.order();
  if (s_derivs.size() < m + 1) {
    throw std::invalid_argument("assemble_symbolic: need u^(k) for k = 0..m");
  }
  std::vector<RadialExpr> entries;
  entries.reserve(table.size());
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    const auto& p = table.polynomials(idx);
    std::vector<RadialExpr> parts;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_zero()) {
        parts.push_back(s_derivs[m - i] * RadialExpr::polynomial(p[i]));
      }
    }
    entries.push_back(sum_of(table.dimension(), parts));
  }
  return SymbolicTensor(table.dimension(), m, std::move(entries));
}

}  // namespace sobolev
