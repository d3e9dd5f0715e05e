#pragma once

// Numerical certificates for radial test functions v:
//   * the pairing  int |x|^N (d^N v).(d^N log|x|) dx = -ell_N omega_{N-1} v(0);
//   * v(0) <= K_N int |d^N v|, with the margin it leaves;
//   * pointwise Cauchy-Schwarz for the pairing integrand.

#include <sobolev/closed_form.hpp>
#include <sobolev/profiles.hpp>
#include <sobolev/quadrature.hpp>
#include <sobolev/radial_norm.hpp>
#include <sobolev/tensor.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sobolev {

/// Defaults for the relative quadrature tolerance by order.
inline double default_tolerance(std::size_t dim) { return dim <= 3 ? 1e-10 : 1e-8; }

/// r^N d^N log|x| at r*d equals d^N log|x| at d (homogeneity of degree -N),
/// so the kernel is evaluated once per direction.
class LogKernel {
 public:
  LogKernel(std::size_t dim, std::span<const double> direction)
      : ev_(evaluator_for(dim, dim)), dir_(direction.begin(), direction.end()) {
    double len = 0.0;
    for (double d : dir_) {
      len += d * d;
    }
    len = std::sqrt(len);
    for (double& d : dir_) {
      d /= len;
    }
    SymbolicTensor t = log_derivative_tensor(dim, dim);
    values_ = evaluate_tensor(t, dir_).entries();
  }

  const RadialTensorEvaluator& evaluator() const { return *ev_; }
  const std::vector<double>& direction() const { return dir_; }
  const std::vector<double>& values() const { return values_; }

  /// g(r) = r^N (d^N v)(r d) . (d^N log)(r d).
  double pairing(const RadialProfile& v, double r) const {
    return ev_->dimension() >= kExtendedFromOrder ? pairing_as<Extended>(v, r) : pairing_as<double>(v, r);
  }

  /// |r^N d^N log|| = sqrt(ell_N).
  double kernel_norm() const {
    return std::sqrt(ev_->contract(std::span<const double>(values_), std::span<const double>(values_)));
  }

 private:
  template <class T>
  double pairing_as(const RadialProfile& v, double r) const {
    auto t = profile_tensor<T>(*ev_, v, r, dir_);
    std::vector<T> k(values_.begin(), values_.end());
    return static_cast<double>(ev_->contract(std::span<const T>(t), std::span<const T>(k)));
  }

  std::shared_ptr<const RadialTensorEvaluator> ev_;
  std::vector<double> dir_;
  std::vector<double> values_;
};

struct WeakIdentityReport {
  std::size_t dim;
  std::string profile;
  double lhs;
  double rhs;
  double relative_error;  // absolute error when rhs = 0
  double quadrature_error;
  std::size_t evaluations;
  bool converged;
};

inline WeakIdentityReport weak_identity_check(std::size_t dim, const RadialProfile& v, double tol) {
  if (dim < 2 || dim > 6) {
    throw std::invalid_argument("weak identity: need 2 <= N <= 6");
  }
  double cut = v.support_radius();
  if (!std::isfinite(cut)) {
    throw std::invalid_argument("weak identity: test profile must have compact support");
  }
  LogKernel kernel(dim, first_axis(dim));
  auto br = radial_breakpoints(v, cut);
  const int pw = static_cast<int>(dim) - 1;
  auto q = integrate_piecewise([&](double r) { return kernel.pairing(v, r) * std::pow(r, pw); }, br, tol);
  require_converged(q, "weak identity for " + v.id());
  double omega = static_cast<double>(sphere_area(static_cast<unsigned>(dim - 1)).value);
  double ell = ell_closed_form(dim, dim).value.get_d();
  double v0 = v.value_at_origin();
  WeakIdentityReport rep{dim, v.id(), omega * q.value, v0 == 0.0 ? 0.0 : -ell * omega * v0, 0.0,
                         omega * q.error_estimate, q.evaluations, q.converged};
  double diff = std::abs(rep.lhs - rep.rhs);
  rep.relative_error = rep.rhs == 0.0 ? diff : diff / std::abs(rep.rhs);
  return rep;
}

class InequalityViolation : public std::logic_error {
 public:
  explicit InequalityViolation(const std::string& what) : std::logic_error(what) {}
};

struct InequalityReport {
  std::size_t dim;
  std::string profile;
  double lhs;     // v(0)
  double rhs;     // K_N int |d^N v|
  double slack;   // K_N * quadrature error
  double margin;  // (rhs - lhs) / rhs
  /// margin still positive after removing the quadrature slack
  bool strict() const { return rhs - slack - lhs > 0.0; }
};

/// v must peak at the origin; `cut` bounds the integral for profiles
/// without compact support.
inline InequalityReport embedding_inequality_check(std::size_t dim, const RadialProfile& v, double tol,
                                                   double cut = 0.0) {
  if (dim == 0 || dim > 6) {
    throw std::invalid_argument("inequality check: need 1 <= N <= 6");
  }
  double v0 = v.value_at_origin();
  if (!std::isfinite(v0)) {
    throw std::invalid_argument("inequality check: v(0) must be finite");
  }
  double top = cut > 0.0 ? cut : v.support_radius();
  for (int k = 1; k <= 256; ++k) {
    double r = top * k / 256.0;
    if (std::abs(v.value(r)) > std::abs(v0) * (1 + 1e-12)) {
      throw std::invalid_argument("inequality check: " + v.id() + " does not peak at the origin");
    }
  }
  NormIntegral n = norm_integral(v, dim, tol, cut);
  double kn = static_cast<double>(best_constant(dim).kn);
  InequalityReport rep{dim, v.id(), std::abs(v0), kn * n.value, kn * n.error, 0.0};
  rep.margin = (rep.rhs - rep.lhs) / rep.rhs;
  if (rep.lhs > rep.rhs + rep.slack) {
    throw InequalityViolation("embedding inequality violated by " + v.id() + ": v(0) = " +
                              std::to_string(rep.lhs) + " > " + std::to_string(rep.rhs));
  }
  return rep;
}

struct CauchySchwarzReport {
  std::size_t samples;
  double worst_ratio;  // max |g| / (|d^N v| |r^N d^N log|)
  bool holds;
};

inline CauchySchwarzReport cauchy_schwarz_check(std::size_t dim, const RadialProfile& v,
                                                std::span<const double> radii, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CauchySchwarzReport rep{0, 0.0, true};
  for (double r : radii) {
    std::vector<double> d(dim);
    for (double& x : d) {
      x = normal(rng);
    }
    LogKernel kernel(dim, d);
    double g = kernel.pairing(v, r);
    double bound = radial_grad_norm(v, dim, r, kernel.direction()) * kernel.kernel_norm();
    ++rep.samples;
    if (bound > 0.0) {
      rep.worst_ratio = std::max(rep.worst_ratio, std::abs(g) / bound);
    } else if (g != 0.0) {
      rep.worst_ratio = std::numeric_limits<double>::infinity();
    }
  }
  rep.holds = rep.worst_ratio <= 1.0 + 1e-12;
  return rep;
}

/// The test corpus used by the strictness and weak-identity suites.
inline std::vector<RadialProfile> peaked_corpus() {
  using namespace profiles;
  return {
      make_profile(Bump(1.0)),
      make_profile(Bump(1.0, 3.0)),
      make_profile(Bump(1.0, 0.5)),
      make_profile(Plateau(1.5)),
      make_profile(GaussianCutoff(1.0, 4.0)),
      make_profile(GaussianCutoff(3.0, 2.0)),
      make_profile(LorentzianCutoff(3.0)),
      make_profile(MollifiedExp(0.5, 6.0)),
      make_profile(Dilated(make_profile(Bump(1.0)), 3.0)),
      make_profile(Extremal(1e-2)),
  };
}

}  // namespace sobolev
