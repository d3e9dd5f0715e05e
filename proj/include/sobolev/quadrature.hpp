#pragma once

// Globally adaptive 1-D integration with the 21-point Gauss-Kronrod rule.
// The panel with the largest error estimate |K21 - G10| is bisected until
// the summed estimate drops below tol * max(1, |value|).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sobolev {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::size_t kDefaultMaxPanels = 5000;

namespace detail {

// QUADPACK qk21 nodes and weights
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fc = f(center);
  double kronrod = kWgk[10] * fc;
  double gauss = 0.0;
  for (std::size_t j = 0; j < 10; ++j) {
    double dx = half * kXgk[j];
    double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) {
      gauss += kWg[j / 2] * sum;
    }
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

inline double neumaier_sum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace detail

/// Integrate over consecutive panels [b_0, b_1], [b_1, b_2], ...; the
/// breakpoints are where the integrand is known to be only piecewise smooth.
template <class F>
QuadratureResult integrate_piecewise(F&& f, std::span<const double> breakpoints, double tol,
                                     std::size_t max_panels = kDefaultMaxPanels) {
  if (breakpoints.size() < 2) {
    throw std::invalid_argument("integrate: need at least two breakpoints");
  }
  for (std::size_t k = 1; k < breakpoints.size(); ++k) {
    if (!(breakpoints[k - 1] < breakpoints[k])) {
      throw std::invalid_argument("integrate: breakpoints must be strictly increasing");
    }
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("integrate: tolerance must be positive");
  }
  constexpr std::size_t kEvalsPerPanel = 21;
  std::priority_queue<detail::Panel> heap;
  std::vector<detail::Panel> done;
  QuadratureResult res;
  for (std::size_t k = 1; k < breakpoints.size(); ++k) {
    heap.push(detail::gauss_kronrod21(f, breakpoints[k - 1], breakpoints[k]));
    res.evaluations += kEvalsPerPanel;
  }

  auto totals = [&]() {
    std::vector<double> values;
    std::vector<double> errors;
    auto copy = heap;
    while (!copy.empty()) {
      values.push_back(copy.top().value);
      errors.push_back(copy.top().error);
      copy.pop();
    }
    for (const auto& p : done) {
      values.push_back(p.value);
      errors.push_back(p.error);
    }
    // fixed order independent of heap internals
    std::sort(values.begin(), values.end());
    return std::pair{detail::neumaier_sum(values), detail::neumaier_sum(errors)};
  };

  double run_value = 0.0;
  double run_error = 0.0;
  {
    auto copy = heap;
    while (!copy.empty()) {
      run_value += copy.top().value;
      run_error += copy.top().error;
      copy.pop();
    }
  }
  while (true) {
    bool exhausted = heap.empty() || heap.size() + done.size() >= max_panels;
    if (run_error <= tol * std::max(1.0, std::abs(run_value)) || exhausted) {
      // running sums drift; the verdict uses a fresh compensated total
      auto [value, error] = totals();
      res.value = value;
      res.error_estimate = error;
      run_value = value;
      run_error = error;
      if (error <= tol * std::max(1.0, std::abs(value))) {
        res.converged = true;
        return res;
      }
      if (exhausted) {
        return res;
      }
    }
    detail::Panel worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // panel cannot be split further in double precision
      done.push_back(worst);
      continue;
    }
    auto left = detail::gauss_kronrod21(f, worst.a, mid);
    auto right = detail::gauss_kronrod21(f, mid, worst.b);
    run_value += left.value + right.value - worst.value;
    run_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    res.evaluations += 2 * kEvalsPerPanel;
  }
}

template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double tol,
                                    std::size_t max_panels = kDefaultMaxPanels) {
  std::array<double, 2> ends{a, b};
  return integrate_piecewise(std::forward<F>(f), ends, tol, max_panels);
}

inline const QuadratureResult& require_converged(const QuadratureResult& r, const std::string& what) {
  if (!r.converged) {
    throw QuadratureError(what + ": quadrature did not converge (error estimate " +
                          std::to_string(r.error_estimate) + ")");
  }
  return r;
}

}  // namespace sobolev
