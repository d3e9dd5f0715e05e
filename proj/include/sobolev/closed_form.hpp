#pragma once

// Closed-form constants: ell_N^m via its explicit combinatorial sum, unit
// sphere areas, and the sharp embedding constant
// K_N = 1 / (sqrt(ell_N) * omega_{N-1}).

#include <sobolev/certificates.hpp>
#include <sobolev/rational.hpp>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sobolev {

/// 50 significant decimal digits.
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

class OracleMismatchError : public std::logic_error {
 public:
  explicit OracleMismatchError(const std::string& what) : std::logic_error(what) {}
};

/// Falling factorial nu (nu-1) ... (nu-k+1); empty product for k = 0.
inline Rational pochhammer(const Rational& nu, unsigned k) {
  Rational out(1);
  for (unsigned j = 0; j < k; ++j) {
    out *= nu - j;
  }
  return out;
}

enum class EllMethod { closed_form, symbolic_oracle };

inline const char* to_string(EllMethod m) {
  return m == EllMethod::closed_form ? "closed-form" : "symbolic-oracle";
}

struct EllValue {
  std::size_t dim;
  std::size_t order;
  Rational value;
  EllMethod method;
};

inline EllValue ell_closed_form(std::size_t dim, std::size_t order) {
  if (dim == 0 || order == 0) {
    throw std::invalid_argument("ell_closed_form: need N >= 1 and m >= 1");
  }
  const long m = static_cast<long>(order);
  const Rational half_shift = make_rational(static_cast<long>(dim) - 3, 2);
  Rational total(0);
  for (long l = 0; l <= m / 2; ++l) {
    Rational inner(0);
    for (long n = (m + 1) / 2; n <= m - l; ++n) {
      Rational term = pow(Rational(2), 2 * n - m + l);
      term *= make_rational(n % 2 == 0 ? 1 : -1, 2 * n);
      term *= Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(m - n)));
      term *= Rational(binomial(static_cast<unsigned>(m - n), static_cast<unsigned>(l)));
      inner += term;
    }
    Rational weight(factorial(static_cast<unsigned>(m - 2 * l)) * factorial(static_cast<unsigned>(l)));
    weight *= pochhammer(half_shift + l, static_cast<unsigned>(l));
    total += weight * inner * inner;
  }
  total *= Rational(factorial(static_cast<unsigned>(m)));
  return {dim, order, total, EllMethod::closed_form};
}

inline EllValue ell_oracle(std::size_t dim, std::size_t order) {
  return {dim, order, ell_symbolic(dim, order), EllMethod::symbolic_oracle};
}

/// omega_m = coefficient * pi^pi_power, always exact:
///   m = 2k-1: 2 pi^k / (k-1)!
///   m = 2k:   2^(2k+1) k! pi^k / (2k)!
struct SphereArea {
  unsigned sphere_dim;
  Rational coefficient;
  unsigned pi_power;
  HighPrecision value;

  std::string exact_form() const {
    std::string c = to_string(coefficient);
    if (pi_power == 0) {
      return c;
    }
    std::string out = (coefficient == 1 ? std::string() : c + "*") + "pi";
    if (pi_power > 1) {
      out += "^" + std::to_string(pi_power);
    }
    return out;
  }
};

inline SphereArea sphere_area(unsigned m) {
  SphereArea s{m, Rational(0), 0, HighPrecision(0)};
  if (m % 2 == 1) {
    unsigned k = (m + 1) / 2;
    s.coefficient = make_rational(Integer(2), factorial(k - 1));
    s.pi_power = k;
  } else {
    unsigned k = m / 2;
    Integer num = factorial(k);
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), 2 * k + 1);
    s.coefficient = make_rational(num, factorial(2 * k));
    s.pi_power = k;
  }
  HighPrecision pi = boost::math::constants::pi<HighPrecision>();
  s.value = HighPrecision(s.coefficient.get_num().get_str()) /
            HighPrecision(s.coefficient.get_den().get_str()) * pow(pi, s.pi_power);
  return s;
}

struct BestConstant {
  std::size_t dim;
  Rational ell;
  SphereArea omega;
  HighPrecision kn;

  /// (sqrt(ell) * omega)^-1 spelled out exactly.
  std::string description() const {
    return "1/(sqrt(" + to_string(ell) + ")*" + omega.exact_form() + ")";
  }
};

inline HighPrecision to_high_precision(const Rational& q) {
  return HighPrecision(q.get_num().get_str()) / HighPrecision(q.get_den().get_str());
}

/// K_N with ell_N cross-checked between the closed form and the symbolic
/// oracle; disagreement throws.
inline BestConstant best_constant(std::size_t dim) {
  if (dim == 0 || dim > 6) {
    throw std::invalid_argument("best_constant: need 1 <= N <= 6");
  }
  Rational closed = ell_closed_form(dim, dim).value;
  Rational oracle = ell_symbolic(dim, dim);
  if (closed != oracle) {
    throw OracleMismatchError("ell_" + std::to_string(dim) + ": closed form " + to_string(closed) +
                              " != symbolic " + to_string(oracle));
  }
  SphereArea omega = sphere_area(static_cast<unsigned>(dim - 1));
  HighPrecision kn = 1 / (sqrt(to_high_precision(closed)) * omega.value);
  return {dim, closed, omega, kn};
}

/// Decimal rendering with `digits` significant digits.
inline std::string format_significant(const HighPrecision& v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::showpoint << v;
  return os.str();
}

}  // namespace sobolev
