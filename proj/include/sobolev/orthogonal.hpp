#pragma once

// Orthogonal matrices and the transformation rule for derivative tensors
// under u_A(x) = u(Ax):
//
//   (d^m u_A / dx_{i_1}..dx_{i_m})(x)
//       = sum_j a_{j_1 i_1} ... a_{j_m i_m} (d^m u / dy_{j_1}..dy_{j_m})(Ax)

#include <sobolev/radial_expr.hpp>
#include <sobolev/rational.hpp>
#include <sobolev/tensor.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace sobolev {

class NonOrthogonalError : public std::invalid_argument {
 public:
  NonOrthogonalError() : std::invalid_argument("matrix is not orthogonal") {}
};

namespace detail {

inline bool orthogonality_ok(std::span<const Rational> a, std::size_t n) {
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      Rational s(0);
      for (std::size_t j = 0; j < n; ++j) {
        s += a[j * n + p] * a[j * n + q];
      }
      if (s != (p == q ? 1 : 0)) {
        return false;
      }
    }
  }
  return true;
}

inline bool orthogonality_ok(std::span<const double> a, std::size_t n) {
  constexpr double kTol = 1e-12;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        s += a[j * n + p] * a[j * n + q];
      }
      if (std::abs(s - (p == q ? 1.0 : 0.0)) > kTol) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// Row-major N x N matrix with entries a(j, i); A^T A = I is checked on
/// construction (exactly for Rational, to 1e-12 for double).
template <class Scalar>
class OrthogonalMatrix {
 public:
  OrthogonalMatrix(std::size_t dim, std::vector<Scalar> entries)
      : dim_(dim), a_(std::move(entries)) {
    if (a_.size() != dim_ * dim_) {
      throw std::invalid_argument("orthogonal matrix: expected N*N entries");
    }
    if (!detail::orthogonality_ok(std::span<const Scalar>(a_), dim_)) {
      throw NonOrthogonalError();
    }
  }

  static OrthogonalMatrix identity(std::size_t dim) {
    std::vector<Scalar> a(dim * dim, Scalar(0));
    for (std::size_t i = 0; i < dim; ++i) {
      a[i * dim + i] = Scalar(1);
    }
    return OrthogonalMatrix(dim, std::move(a));
  }

  std::size_t dimension() const { return dim_; }
  const Scalar& operator()(std::size_t j, std::size_t i) const { return a_[j * dim_ + i]; }
  std::span<const Scalar> data() const { return a_; }

  /// y = A x
  std::vector<Scalar> apply(std::span<const Scalar> x) const {
    std::vector<Scalar> y(dim_, Scalar(0));
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t i = 0; i < dim_; ++i) {
        y[j] += a_[j * dim_ + i] * x[i];
      }
    }
    return y;
  }

  friend OrthogonalMatrix operator*(const OrthogonalMatrix& l, const OrthogonalMatrix& r) {
    const std::size_t n = l.dim_;
    std::vector<Scalar> out(n * n, Scalar(0));
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t k = 0; k < n; ++k) {
          out[p * n + q] += l(p, k) * r(k, q);
        }
      }
    }
    return OrthogonalMatrix(n, std::move(out));
  }

 private:
  std::size_t dim_;
  std::vector<Scalar> a_;
};

using RationalOrthogonal = OrthogonalMatrix<Rational>;
using RealOrthogonal = OrthogonalMatrix<double>;

/// Product of Pythagorean-triple Givens rotations in random coordinate
/// planes, with a random diagonal sign flip.
inline RationalOrthogonal random_rational_orthogonal(std::size_t dim, std::mt19937_64& rng,
                                                     int rotations = 4) {
  std::uniform_int_distribution<int> gen(1, 6);
  std::uniform_int_distribution<std::size_t> axis(0, dim - 1);
  RationalOrthogonal acc = RationalOrthogonal::identity(dim);
  if (dim >= 2) {
    for (int r = 0; r < rotations; ++r) {
      int p = gen(rng);
      int q = gen(rng);
      if (p == q) {
        ++p;
      }
      // (p^2 - q^2, 2pq, p^2 + q^2)
      Rational c = make_rational(p * p - q * q, p * p + q * q);
      Rational s = make_rational(2 * p * q, p * p + q * q);
      std::size_t i = axis(rng);
      std::size_t j = axis(rng);
      while (j == i) {
        j = axis(rng);
      }
      std::vector<Rational> g(dim * dim, Rational(0));
      for (std::size_t k = 0; k < dim; ++k) {
        g[k * dim + k] = 1;
      }
      g[i * dim + i] = c;
      g[j * dim + j] = c;
      g[i * dim + j] = -s;
      g[j * dim + i] = s;
      acc = RationalOrthogonal(dim, std::move(g)) * acc;
    }
  }
  std::vector<Rational> flip(dim * dim, Rational(0));
  std::bernoulli_distribution coin(0.5);
  for (std::size_t k = 0; k < dim; ++k) {
    flip[k * dim + k] = coin(rng) ? -1 : 1;
  }
  return RationalOrthogonal(dim, std::move(flip)) * acc;
}

/// Gram-Schmidt orthonormalization of a Gaussian random matrix.
inline RealOrthogonal random_real_orthogonal(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<double>> cols(dim, std::vector<double>(dim));
  for (auto& c : cols) {
    for (auto& v : c) {
      v = normal(rng);
    }
  }
  for (std::size_t k = 0; k < dim; ++k) {
    // two passes of modified Gram-Schmidt keep the residual near 1e-16
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < k; ++p) {
        double dot = 0.0;
        for (std::size_t r = 0; r < dim; ++r) {
          dot += cols[k][r] * cols[p][r];
        }
        for (std::size_t r = 0; r < dim; ++r) {
          cols[k][r] -= dot * cols[p][r];
        }
      }
    }
    double norm = 0.0;
    for (double v : cols[k]) {
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (double& v : cols[k]) {
      v /= norm;
    }
  }
  std::vector<double> a(dim * dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      a[j * dim + i] = cols[i][j];
    }
  }
  return RealOrthogonal(dim, std::move(a));
}

namespace detail {

/// Dense N^m expansion, index = sum_k i_k N^(m-1-k).
template <class Entry>
std::vector<Entry> to_dense(const DerivativeTensor<Entry>& t) {
  const std::size_t n = t.dimension();
  const std::size_t m = t.order();
  std::size_t total = 1;
  for (std::size_t k = 0; k < m; ++k) {
    total *= n;
  }
  std::vector<Entry> dense;
  dense.reserve(total);
  MultiIndex tuple(m);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t k = m; k-- > 0;) {
      tuple[k] = rest % n;
      rest /= n;
    }
    dense.push_back(t.at(tuple));
  }
  return dense;
}

inline RadialExpr times(const RadialExpr& e, const Rational& s) { return e * s; }
inline double times(double e, double s) { return e * s; }

}  // namespace detail

/// Tensor of u_A from the tensor of u. Numeric entries are the values of
/// d^m u at y = Ax and the result holds d^m u_A at x. Symbolic entries are
/// functions of y; they are composed with y = Ax so the result is again a
/// function of x.
template <class Entry, class Scalar>
DerivativeTensor<Entry> orthogonal_transform(const DerivativeTensor<Entry>& t,
                                             const OrthogonalMatrix<Scalar>& a) {
  const std::size_t n = t.dimension();
  const std::size_t m = t.order();
  if (a.dimension() != n) {
    throw ShapeMismatchError();
  }
  if (!detail::orthogonality_ok(a.data(), n)) {
    throw NonOrthogonalError();
  }
  std::vector<Entry> dense = detail::to_dense(t);
  if constexpr (std::is_same_v<Entry, RadialExpr>) {
    for (auto& e : dense) {
      e = e.substitute_orthogonal(a.data());
    }
  }
  // contract one tensor slot at a time: slot k index j_k -> i_k
  std::size_t stride = 1;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<Entry> next;
    next.reserve(dense.size());
    for (std::size_t flat = 0; flat < dense.size(); ++flat) {
      std::size_t i = (flat / stride) % n;
      std::size_t base = flat - i * stride;
      Entry acc = detail::zero_like(dense[0]);
      for (std::size_t j = 0; j < n; ++j) {
        const Scalar& c = a(j, i);
        if (c == Scalar(0)) {
          continue;
        }
        acc += detail::times(dense[base + j * stride], c);
      }
      next.push_back(std::move(acc));
    }
    dense = std::move(next);
    stride *= n;
  }
  std::vector<Entry> entries;
  for (const auto& key : sorted_multi_indices(n, m)) {
    std::size_t flat = 0;
    for (auto idx : key) {
      flat = flat * n + idx;
    }
    entries.push_back(dense[flat]);
  }
  return DerivativeTensor<Entry>(n, m, std::move(entries));
}

}  // namespace sobolev
