#pragma once

// Pointwise derivative tensors of radial profiles: s-jets of the profile fed
// through the chain-rule polynomials, then the Frobenius norm.

#include <sobolev/chain_rule.hpp>
#include <sobolev/closed_form.hpp>
#include <sobolev/jet.hpp>
#include <sobolev/profiles.hpp>
#include <sobolev/quadrature.hpp>

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sobolev {

/// ChainRuleTable flattened to floating-point monomials for fast evaluation.
class RadialTensorEvaluator {
 public:
  RadialTensorEvaluator(std::size_t dim, std::size_t order) : table_(dim, order) {
    for (std::size_t idx = 0; idx < table_.size(); ++idx) {
      mult_.push_back(multiplicity(table_.keys()[idx], dim).get_d());
      std::vector<Term> terms;
      const auto& p = table_.polynomials(idx);
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (const auto& [e, c] : p[i].terms()) {
          terms.push_back({order - i, c.get_d(), e});
        }
      }
      terms_.push_back(std::move(terms));
    }
  }

  std::size_t dimension() const { return table_.dimension(); }
  std::size_t order() const { return table_.order(); }
  std::size_t size() const { return table_.size(); }
  const ChainRuleTable& table() const { return table_; }
  const std::vector<MultiIndex>& keys() const { return table_.keys(); }
  double multiplicity_at(std::size_t idx) const { return mult_.at(idx); }

  /// Tensor entries at x from s_derivs[k] = u^(k)(|x|^2/2), k = 0..m.
  template <class T>
  std::vector<T> entries(std::span<const T> s_derivs, std::span<const T> x) const {
    const std::size_t n = dimension();
    const std::size_t m = order();
    if (s_derivs.size() < m + 1 || x.size() != n) {
      throw std::invalid_argument("radial tensor: need m+1 s-derivatives and an N-point");
    }
    // powers[i][k] = x_i^k
    std::vector<std::vector<T>> powers(n, std::vector<T>(m + 1, T(1)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 1; k <= m; ++k) {
        powers[i][k] = powers[i][k - 1] * x[i];
      }
    }
    std::vector<T> out(size(), T(0));
    for (std::size_t idx = 0; idx < size(); ++idx) {
      T acc(0);
      for (const auto& t : terms_[idx]) {
        T mono(t.coeff);
        for (std::size_t i = 0; i < n; ++i) {
          if (t.exps[i] != 0) {
            mono *= powers[i][t.exps[i]];
          }
        }
        acc += s_derivs[t.s_order] * mono;
      }
      out[idx] = acc;
    }
    return out;
  }

  /// Sum over all N^m components of a_i b_i.
  template <class T>
  T contract(std::span<const T> a, std::span<const T> b) const {
    T acc(0);
    for (std::size_t idx = 0; idx < size(); ++idx) {
      acc += T(mult_[idx]) * a[idx] * b[idx];
    }
    return acc;
  }

 private:
  struct Term {
    std::size_t s_order;
    double coeff;
    Exponents exps;
  };

  ChainRuleTable table_;
  std::vector<double> mult_;
  std::vector<std::vector<Term>> terms_;
};

/// Shared read-only evaluator per (N, m).
inline std::shared_ptr<const RadialTensorEvaluator> evaluator_for(std::size_t dim, std::size_t order) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const RadialTensorEvaluator>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{dim, order}];
  if (!slot) {
    slot = std::make_shared<const RadialTensorEvaluator>(dim, order);
  }
  return slot;
}

/// Orders at or above this run the jets in Extended precision.
inline constexpr std::size_t kExtendedFromOrder = 4;

/// u^(k)(s), k = 0..order, from a jet carried one order higher as a guard.
template <class T>
std::vector<T> profile_s_derivatives(const RadialProfile& u, const T& r, std::size_t order) {
  Jet<T> j = u.jet(r, static_cast<int>(order) + 1);
  std::vector<T> d(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    d[k] = j.derivative(static_cast<int>(k));
  }
  return d;
}

/// d^m u at r * direction (direction is normalized).
template <class T>
std::vector<T> profile_tensor(const RadialTensorEvaluator& ev, const RadialProfile& u, double r,
                              std::span<const double> direction) {
  if (direction.size() != ev.dimension()) {
    throw std::invalid_argument("profile tensor: direction has wrong dimension");
  }
  double len = 0.0;
  for (double d : direction) {
    len += d * d;
  }
  len = std::sqrt(len);
  if (!(len > 0.0)) {
    throw std::invalid_argument("profile tensor: zero direction");
  }
  std::vector<T> x(direction.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = T(r) * T(direction[i]) / T(len);
  }
  auto d = profile_s_derivatives(u, T(r), ev.order());
  return ev.entries(std::span<const T>(d), std::span<const T>(x));
}

inline std::vector<double> first_axis(std::size_t dim) {
  std::vector<double> e(dim, 0.0);
  e.at(0) = 1.0;
  return e;
}

template <class T>
double radial_norm_as(const RadialTensorEvaluator& ev, const RadialProfile& u, double r,
                      std::span<const double> direction) {
  auto t = profile_tensor<T>(ev, u, r, direction);
  T sq = ev.contract(std::span<const T>(t), std::span<const T>(t));
  using std::sqrt;
  return static_cast<double>(sqrt(sq));
}

/// |d^m u|(r * direction) for a radial profile.
inline double radial_derivative_norm(const RadialProfile& u, std::size_t dim, std::size_t order, double r,
                                     std::span<const double> direction) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("radial norm: need r > 0");
  }
  auto ev = evaluator_for(dim, order);
  return order >= kExtendedFromOrder ? radial_norm_as<Extended>(*ev, u, r, direction)
                                     : radial_norm_as<double>(*ev, u, r, direction);
}

/// |d^N u|(r e_1).
inline double radial_grad_norm(const RadialProfile& u, std::size_t dim, double r) {
  auto e = first_axis(dim);
  return radial_derivative_norm(u, dim, dim, r, e);
}

inline double radial_grad_norm(const RadialProfile& u, std::size_t dim, double r,
                               std::span<const double> direction) {
  return radial_derivative_norm(u, dim, dim, r, direction);
}

/// Breakpoints {0} + seams below the cut + {cut}.
inline std::vector<double> radial_breakpoints(const RadialProfile& u, double cut) {
  std::vector<double> br{0.0};
  for (double s : u.seams()) {
    if (s > br.back() && s < cut) {
      br.push_back(s);
    }
  }
  br.push_back(cut);
  return br;
}

struct NormIntegral {
  double value;  // omega_{N-1} int |d^N u| r^(N-1) dr
  double error;
  QuadratureResult quadrature;
};

/// int over R^N of |d^N u|, reduced to one radial integral up to `cut`
/// (the support radius when finite).
inline NormIntegral norm_integral(const RadialProfile& u, std::size_t dim, double tol, double cut = 0.0) {
  if (cut <= 0.0) {
    cut = u.support_radius();
  }
  if (!std::isfinite(cut)) {
    throw std::invalid_argument("norm integral: profile has unbounded support; give a cut-off radius");
  }
  auto br = radial_breakpoints(u, cut);
  const int pw = static_cast<int>(dim) - 1;
  auto q = integrate_piecewise(
      [&](double r) { return radial_grad_norm(u, dim, r) * std::pow(r, pw); }, br, tol);
  require_converged(q, "norm integral of " + u.id());
  double omega = static_cast<double>(sphere_area(static_cast<unsigned>(dim - 1)).value);
  return {omega * q.value, omega * q.error_estimate, q};
}

struct ExtremalRatio {
  std::size_t dim;
  double eps;
  double numerator;        // int |d^N u_eps|
  double numerator_error;
  double denominator;      // u_eps(0)
  double ratio;
  double ratio_error;
  std::size_t evaluations;
};

inline ExtremalRatio extremal_ratio(std::size_t dim, double eps, double tol) {
  RadialProfile u = make_profile(profiles::Extremal(eps));
  NormIntegral n = norm_integral(u, dim, tol);
  double den = u.value_at_origin();
  return {dim, eps, n.value, n.error, den, n.value / den, n.error / den, n.quadrature.evaluations};
}

}  // namespace sobolev
