#pragma once

// Radial profiles u(|x|) evaluated as jets in s = |x|^2 / 2, plus the
// smooth step used for every cutoff:
//
//   phi(t) = psi(2t-1) / (psi(2t-1) + psi(2-2t)),  psi(t) = exp(-1/t) for t > 0,
//
// which is 0 on [0, 1/2], 1 on [1, inf) and flat to all orders at both ends.

#include <sobolev/jet.hpp>
#include <sobolev/quadrature.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sobolev {

/// About 34 significant digits; used where high-order jets lose double precision.
using Extended = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<34>,
                                               boost::multiprecision::et_off>;

template <class T>
Jet<T> psi(const Jet<T>& t) {
  if (!(t.value() > T(0))) {
    return t.zero_like();
  }
  return exp(-(T(1) / t));
}

/// phi applied to a jet.
template <class T>
Jet<T> smooth_step(const Jet<T>& t) {
  Jet<T> a = psi(T(2) * t - T(1));
  if (a.is_zero()) {
    return t.zero_like();
  }
  Jet<T> b = psi(T(2) - T(2) * t);
  if (b.is_zero()) {
    return Jet<T>::constant(t.base(), T(1), t.order());
  }
  return a / (a + b);
}

inline double smooth_step(double t) {
  return smooth_step(Jet<double>::constant(t, t, 0)).value();
}

/// Jet in t of phi(t / delta): 0 below delta/2, 1 above delta.
inline Jet<double> smooth_cutoff(double t, double delta, int order) {
  if (!(t >= 0.0) || !(delta > 0.0) || order < 0) {
    throw std::invalid_argument("smooth_cutoff: need t >= 0, delta > 0, order >= 0");
  }
  return smooth_step(Jet<double>::variable(t, order) * (1.0 / delta));
}

/// The jets s and r = sqrt(2s) at a radius r0 > 0.
template <class T>
struct RadialVariables {
  Jet<T> s;
  Jet<T> r;

  RadialVariables(const T& r0, int order)
      : s(Jet<T>::variable(r0 * r0 / T(2), order)), r(sqrt(T(2) * s)) {}
};

/// 1 - phi(r / outer): equal to 1 for r <= outer/2, 0 for r >= outer.
template <class T>
Jet<T> outer_cutoff(const Jet<T>& r, double outer) {
  return T(1) - smooth_step(r * T(1.0 / outer));
}

/// Type-erased radial profile. A model supplies
///   template <class T> Jet<T> s_jet(const T& r, int order) const;  // r > 0
///   double origin_value() const;  double support() const;
///   std::vector<double> seams() const;  std::string name() const;
class RadialProfile {
 public:
  template <class Impl>
  explicit RadialProfile(Impl impl) : self_(std::make_shared<Model<Impl>>(std::move(impl))) {}

  /// Jet of the profile in s at s = r^2/2.
  Jet<double> jet(double r, int order) const {
    check_radius(r > 0.0);
    return self_->jet_double(r, order);
  }
  Jet<Extended> jet(const Extended& r, int order) const {
    check_radius(r > 0);
    return self_->jet_extended(r, order);
  }

  double value(double r) const { return r == 0.0 ? value_at_origin() : jet(r, 0).value(); }
  double value_at_origin() const { return self_->origin_value(); }
  /// Radius beyond which the profile vanishes; infinity if none.
  double support_radius() const { return self_->support(); }
  /// Radii where the profile is only piecewise analytic.
  std::vector<double> seams() const { return self_->seams(); }
  std::string id() const { return self_->name(); }

 private:
  static void check_radius(bool ok) {
    if (!ok) {
      throw std::invalid_argument("profile jets need r > 0");
    }
  }

  struct Concept {
    virtual ~Concept() = default;
    virtual Jet<double> jet_double(double r, int order) const = 0;
    virtual Jet<Extended> jet_extended(const Extended& r, int order) const = 0;
    virtual double origin_value() const = 0;
    virtual double support() const = 0;
    virtual std::vector<double> seams() const = 0;
    virtual std::string name() const = 0;
  };

  template <class Impl>
  struct Model final : Concept {
    explicit Model(Impl i) : impl(std::move(i)) {}
    Jet<double> jet_double(double r, int order) const override { return impl.s_jet(r, order); }
    Jet<Extended> jet_extended(const Extended& r, int order) const override {
      return impl.s_jet(r, order);
    }
    double origin_value() const override { return impl.origin_value(); }
    double support() const override { return impl.support(); }
    std::vector<double> seams() const override { return impl.seams(); }
    std::string name() const override { return impl.name(); }
    Impl impl;
  };

  std::shared_ptr<const Concept> self_;
};

namespace profiles {

inline std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline void require(bool ok, const char* what) {
  if (!ok) {
    throw std::invalid_argument(what);
  }
}

/// -log r = -(1/2) log(2s); singular at 0.
struct Log {
  template <class T>
  Jet<T> s_jet(const T& r, int order) const {
    RadialVariables<T> v(r, order);
    return T(-0.5) * log(T(2) * v.s);
  }
  double origin_value() const { return kInf; }
  double support() const { return kInf; }
  std::vector<double> seams() const { return {}; }
  std::string name() const { return "log"; }
};

/// sum_k a_k s^k.
struct SPolynomial {
  std::vector<double> coeffs;

  template <class T>
  Jet<T> s_jet(const T& r, int order) const {
    RadialVariables<T> v(r, order);
    Jet<T> acc = v.s.zero_like();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      acc = acc * v.s;
      acc += T(*it);
    }
    return acc;
  }
  double origin_value() const { return coeffs.empty() ? 0.0 : coeffs.front(); }
  double support() const { return kInf; }
  std::vector<double> seams() const { return {}; }
  std::string name() const {
    std::string out = "s-poly(";
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      out += (k ? "," : "") + fmt(coeffs[k]);
    }
    return out + ")";
  }
};

/// exp(p (1 - R^2/(R^2 - r^2))) on B_R, 0 outside; p = 1 is the classic bump.
struct Bump {
  double radius = 1.0;
  double power = 1.0;

  Bump(double radius_, double power_ = 1.0) : radius(radius_), power(power_) {
    require(radius > 0.0 && power > 0.0, "bump: need R > 0 and p > 0");
  }
  template <class T>
  Jet<T> s_jet(const T& r, int order) const {
    if (!(r < T(radius))) {
      return Jet<T>::constant(r * r / T(2), T(0), order);
    }
    RadialVariables<T> v(r, order);
    T r2(radius * radius);
    Jet<T> gap = r2 - T(2) * v.s;
    return exp(T(power) * (T(1) - r2 / gap));
  }
  double origin_value() const { return 1.0; }
  double support() const { return radius; }
  std::vector<double> seams() const { return {radius}; }
  std::string name() const {
    return power == 1.0 ? "bump(R=" + fmt(radius) + ")"
                        : "bump^" + fmt(power) + "(R=" + fmt(radius) + ")";
  }
};

/// 1 - phi(r/R): 1 on B_{R/2}, 0 outside B_R.
struct Plateau {
  double radius;

  explicit Plateau(double radius_) : radius(radius_) { require(radius > 0.0, "plateau: need R > 0"); }
  template <class T>
  Jet<T> s_jet(const T& r, int order) const {
    RadialVariables<T> v(r, order);
    return outer_cutoff(v.r, radius);
  }
  double origin_value() const { return 1.0; }
  double support() const { return radius; }
  std::vector<double> seams() const { return {radius / 2, radius}; }
  std::string name() const { return "plateau(R=" + fmt(radius) + ")"; }
};

/// exp(-a r^2) (1 - phi(r/R)).
struct GaussianCutoff {
  double a;
  double radius;

  GaussianCutoff(double a_, double radius_) : a(a_), radius(radius_) {
    require(a > 0.0 && radius > 0.0, "gaussian: need a > 0 and R > 0");
  }
  template <class T>
  Jet<T> s_jet(const T& r, int order) const {
    RadialVariables<T> v(r, order);
    return exp(T(-2 * a) * v.s) * outer_cutoff(v.r, radius);
  }
  double origin_value() const { return 1.0; }
  double support() const { return radius; }
  std::vector<double> seams() const { return {radius / 2, radius}; }
  std::string name() const { return "gaussian(a=" + fmt(a) + ",R=" + fmt(radius) + ")"; }
};

/// (1 + r^2)^-1 (1 - phi(r/R)).
struct LorentzianCutoff {
  double radius;

  explicit LorentzianCutoff(double radius_) : radius(radius_) {
    require(radius > 0.0, "lorentzian: need R > 0");
  }
  template <class T>
  Jet<T> s_jet(const T& r, int order) const {
    RadialVariables<T> v(r, order);
    return outer_cutoff(v.r, radius) / (T(1) + T(2) * v.s);
  }
  double origin_value() const { return 1.0; }
  double support() const { return radius; }
  std::vector<double> seams() const { return {radius / 2, radius}; }
  std::string name() const { return "lorentzian(R=" + fmt(radius) + ")"; }
};

/// Bump in r centred at c with half-width w; vanishes near the origin when w < c.
struct AnnulusBump {
  double center;
  double width;

  AnnulusBump(double center_, double width_) : center(center_), width(width_) {
    require(width > 0.0 && width < center, "annulus: need 0 < w < c");
  }
  template <class T>
  Jet<T> s_jet(const T& r, int order) const {
    T d = (r - T(center)) / T(width);
    if (!(d * d < T(1))) {
      return Jet<T>::constant(r * r / T(2), T(0), order);
    }
    RadialVariables<T> v(r, order);
    Jet<T> t = (v.r - T(center)) * T(1.0 / width);
    return exp(T(1) - T(1) / (T(1) - t * t));
  }
  double origin_value() const { return 0.0; }
  double support() const { return center + width; }
  std::vector<double> seams() const { return {center - width, center + width}; }
  std::string name() const { return "annulus(c=" + fmt(center) + ",w=" + fmt(width) + ")"; }
};

/// exp(delta - sqrt(delta^2 + r^2)) (1 - phi(r/R)): a smoothed e^-|x|.
struct MollifiedExp {
  double delta;
  double radius;

  MollifiedExp(double delta_, double radius_) : delta(delta_), radius(radius_) {
    require(delta > 0.0 && radius > 0.0, "mollified exp: need delta > 0 and R > 0");
  }
  template <class T>
  Jet<T> s_jet(const T& r, int order) const {
    RadialVariables<T> v(r, order);
    Jet<T> root = sqrt(T(delta * delta) + T(2) * v.s);
    return exp(T(delta) - root) * outer_cutoff(v.r, radius);
  }
  double origin_value() const { return 1.0; }
  double support() const { return radius; }
  std::vector<double> seams() const { return {radius / 2, radius}; }
  std::string name() const { return "mollified-exp(d=" + fmt(delta) + ",R=" + fmt(radius) + ")"; }
};

/// e^-r itself; not smooth at the origin.
struct RawExp {
  template <class T>
  Jet<T> s_jet(const T& r, int order) const {
    RadialVariables<T> v(r, order);
    return exp(-v.r);
  }
  double origin_value() const { return 1.0; }
  double support() const { return kInf; }
  std::vector<double> seams() const { return {}; }
  std::string name() const { return "exp(-r)"; }
};

/// v(lambda x).
struct Dilated {
  RadialProfile base;
  double lambda;

  Dilated(RadialProfile base_, double lambda_) : base(std::move(base_)), lambda(lambda_) {
    require(lambda > 0.0, "dilation: need lambda > 0");
  }
  template <class T>
  Jet<T> s_jet(const T& r, int order) const {
    Jet<T> inner = base.jet(T(r * T(lambda)), order);
    // u(lambda^2 s): the k-th coefficient picks up lambda^(2k)
    std::vector<T> c = inner.coefficients();
    T f(1);
    for (auto& ck : c) {
      ck *= f;
      f *= T(lambda * lambda);
    }
    return Jet<T>(r * r / T(2), std::move(c));
  }
  double origin_value() const { return base.value_at_origin(); }
  double support() const { return base.support_radius() / lambda; }
  std::vector<double> seams() const {
    std::vector<double> out = base.seams();
    for (auto& s : out) {
      s /= lambda;
    }
    return out;
  }
  std::string name() const { return base.id() + "@x" + fmt(lambda); }
};

/// u_eps = zeta f_eps with zeta(r) = 1 - phi(r/2) and
///   f_eps(r) = -log eps + int_{r/eps}^1 phi(t)/t dt   (r <= eps),
///   f_eps(r) = -log r                                 (r >= eps),
/// so f_eps' = -phi(r/eps)/r and u_eps(0) = log(1/eps) + int_{1/2}^1 phi(t)/t dt.
struct Extremal {
  double eps;
  double plateau_integral;

  explicit Extremal(double eps_) : eps(eps_), plateau_integral(0.0) {
    require(eps > 0.0 && eps < 0.25, "extremal profile: need 0 < eps < 1/4");
    plateau_integral = tail(0.5);
  }

  /// int_t^1 phi(tau)/tau dtau for t in [1/2, 1].
  static double tail(double t) {
    if (t >= 1.0) {
      return 0.0;
    }
    auto q = integrate_adaptive([](double tau) { return smooth_step(tau) / tau; }, t, 1.0, 1e-15);
    return require_converged(q, "extremal profile").value;
  }

  double f_value(double r) const {
    if (r >= eps) {
      return -std::log(r);
    }
    return -std::log(eps) + tail(std::max(r / eps, 0.5));
  }

  template <class T>
  Jet<T> s_jet(const T& r, int order) const {
    const double rd = static_cast<double>(r);
    if (rd >= 2.0) {
      return Jet<T>::constant(r * r / T(2), T(0), order);
    }
    if (rd <= eps / 2) {
      return Jet<T>::constant(r * r / T(2), T(origin_value()), order);
    }
    RadialVariables<T> v(r, order);
    // df/ds = f'(r) / r = -phi(r/eps) / (2s)
    Jet<T> slope = -smooth_step(v.r * T(1.0 / eps)) / (T(2) * v.s);
    Jet<T> f = slope.integrate(T(f_value(rd)));
    if (rd <= 1.0) {
      return f;
    }
    return f * outer_cutoff(v.r, 2.0);
  }
  double origin_value() const { return -std::log(eps) + plateau_integral; }
  double support() const { return 2.0; }
  std::vector<double> seams() const { return {eps / 2, eps, 1.0, 2.0}; }
  std::string name() const { return "extremal(eps=" + fmt(eps) + ")"; }
};

}  // namespace profiles

template <class Impl>
RadialProfile make_profile(Impl impl) {
  return RadialProfile(std::move(impl));
}

}  // namespace sobolev
