#pragma once

// Exact symbolic certificates for log|x|:
//   * |d^m log|x||^2 |x|^(2m) is a constant, returned as ell_N^m;
//   * F = (-1)^N sum_i d^N_i ( |x|^N d^N_i log|x| ) vanishes on R^N \ {0}.

#include <sobolev/parallel.hpp>
#include <sobolev/radial_expr.hpp>
#include <sobolev/rational.hpp>
#include <sobolev/tensor.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace sobolev {

class NonConstantError : public std::logic_error {
 public:
  explicit NonConstantError(const std::string& what) : std::logic_error(what) {}
};

/// ell_N^m from the symbolic tensor d^m log|x|.
inline Rational ell_symbolic(std::size_t dim, std::size_t order) {
  if (dim == 0 || dim > kMaxDimension || order == 0) {
    throw std::invalid_argument("ell_symbolic: need 1 <= N <= 8 and m >= 1");
  }
  SymbolicTensor t = log_derivative_tensor(dim, order);
  RadialExpr scaled = frobenius_norm_sq(t) * RadialExpr::radius_power(dim, 2 * static_cast<int>(order));
  auto c = scaled.as_constant();
  if (!c) {
    throw NonConstantError("|d^m log|x||^2 |x|^2m is not constant: " + scaled.to_string());
  }
  return *c;
}

/// F on R^N \ {0}. Every permutation of a sorted key contributes the same
/// term, so each key is differentiated once and weighted by its multiplicity.
inline RadialExpr operator_L_apply(std::size_t dim) {
  if (dim == 0 || dim > kMaxDimension) {
    throw std::invalid_argument("operator_L_apply: need 1 <= N <= 8");
  }
  SymbolicTensor t = log_derivative_tensor(dim, dim);
  RadialExpr weight = RadialExpr::radius_power(dim, static_cast<int>(dim));
  std::vector<RadialExpr> parts(t.size(), RadialExpr(dim));
  parallel_for(t.size(), [&](std::size_t k) {
    RadialExpr e = (t.entry(k) * weight).derivative(t.keys()[k]);
    parts[k] = e * Rational(t.multiplicity_at(k));
  });
  RadialExpr f = sum_of(dim, parts);
  return dim % 2 == 0 ? f : -f;
}

}  // namespace sobolev
