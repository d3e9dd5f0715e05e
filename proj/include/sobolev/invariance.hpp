#pragma once

// Seeded O(N)-invariance suite for Frobenius norms of derivative tensors:
// exact under rational rotations, floating point under random real ones.

#include <sobolev/orthogonal.hpp>
#include <sobolev/radial_expr.hpp>
#include <sobolev/tensor.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace sobolev {

/// Nonzero sum of P_j |x|^j with small integer coefficients, deg P <= 2,
/// -5 <= j <= 3.
inline RadialExpr seeded_expression(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> power(-5, 3);
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_int_distribution<int> degree(0, 2);
  std::uniform_int_distribution<std::size_t> axis(0, dim - 1);
  while (true) {
    RadialExpr::TermMap terms;
    for (int k = count(rng); k > 0; --k) {
      Polynomial p(dim);
      for (int t = count(rng); t > 0; --t) {
        Exponents e{};
        for (int d = degree(rng); d > 0; --d) {
          ++e[axis(rng)];
        }
        int c = coeff(rng);
        p.add_term(e, Rational(c == 0 ? 1 : c));
      }
      auto [it, fresh] = terms.try_emplace(power(rng), p);
      if (!fresh) {
        it->second += p;
      }
    }
    RadialExpr u(dim, terms);
    if (!u.is_zero()) {
      return u;
    }
  }
}

struct InvarianceRow {
  std::string kind;  // "exact" or "numeric"
  std::size_t dim;
  std::size_t order;
  std::size_t trials;
  double max_relative_error;  // 0 for exact rows that match
  bool pass;
};

/// |d^m (u o A)|^2 == |d^m u|^2 o A as exact expressions.
inline InvarianceRow exact_invariance(std::size_t dim, std::size_t order, std::size_t trials,
                                      std::mt19937_64& rng) {
  InvarianceRow row{"exact", dim, order, trials, 0.0, true};
  for (std::size_t t = 0; t < trials; ++t) {
    RadialExpr u = seeded_expression(dim, rng);
    auto a = random_rational_orthogonal(dim, rng);
    RadialExpr lhs = frobenius_norm_sq(derivative_tensor(u.substitute_orthogonal(a.data()), order));
    RadialExpr rhs = frobenius_norm_sq(derivative_tensor(u, order)).substitute_orthogonal(a.data());
    if (!(lhs == rhs)) {
      row.pass = false;
      row.max_relative_error = INFINITY;
    }
  }
  return row;
}

/// |d^m u_A|(x) against |d^m u|(Ax) with the tensor carried through the
/// transformation rule, at Gaussian random points.
inline InvarianceRow numeric_invariance(std::size_t dim, std::size_t order, std::size_t trials,
                                        std::mt19937_64& rng, double tol = 1e-10) {
  InvarianceRow row{"numeric", dim, order, trials, 0.0, true};
  std::normal_distribution<double> normal(0.0, 1.0);
  RadialExpr u = seeded_expression(dim, rng);
  SymbolicTensor t = derivative_tensor(u, order);
  for (std::size_t k = 0; k < trials; ++k) {
    auto a = random_real_orthogonal(dim, rng);
    std::vector<double> x(dim);
    for (auto& c : x) {
      c = normal(rng);
    }
    NumericTensor at_y = evaluate_tensor(t, a.apply(x));
    NumericTensor at_x = orthogonal_transform(at_y, a);
    double n0 = std::sqrt(frobenius_norm_sq(at_y));
    double n1 = std::sqrt(frobenius_norm_sq(at_x));
    double rel = n0 == 0.0 ? std::abs(n1) : std::abs(n1 - n0) / n0;
    row.max_relative_error = std::max(row.max_relative_error, rel);
  }
  row.pass = row.max_relative_error <= tol;
  return row;
}

}  // namespace sobolev
