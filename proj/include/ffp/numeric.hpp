#pragma once

// Scalar kinds used throughout the library and the small amount of generic
// arithmetic glue needed to write algorithms once for all of them.
//
//   Rational   exact, arbitrary precision (GMP mpq)
//   HighFloat  binary floating point with a runtime decimal-digit precision (MPFR)
//   double     binary64
//
// and std::complex<> over the two floating kinds for unit-circle polynomials.
// Nothing converts between kinds implicitly: use from_integer / from_rational /
// convert_scalar.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace ffp {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using HighFloat = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

inline constexpr unsigned kDefaultDigits = 50;

enum class ScalarKind { ExactRational, HighPrecisionFloat, Binary64 };

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class S>
inline constexpr bool is_complex_v = is_complex<S>::value;

template <class S>
struct real_type {
  using type = S;
};
template <class T>
struct real_type<std::complex<T>> {
  using type = T;
};
template <class S>
using real_t = typename real_type<S>::type;

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

template <class S>
inline constexpr bool is_floating_v =
    std::is_same_v<real_t<S>, double> || std::is_same_v<real_t<S>, HighFloat>;

template <class S>
constexpr ScalarKind scalar_kind() {
  if constexpr (is_exact_v<S>) {
    return ScalarKind::ExactRational;
  } else if constexpr (std::is_same_v<real_t<S>, HighFloat>) {
    return ScalarKind::HighPrecisionFloat;
  } else {
    return ScalarKind::Binary64;
  }
}

template <class S>
S from_rational(const Rational& q) {
  if constexpr (is_complex_v<S>) {
    return S(from_rational<real_t<S>>(q));
  } else if constexpr (std::is_same_v<S, double>) {
    return q.template convert_to<double>();
  } else {
    return S(q);
  }
}

template <class S>
S from_integer(const Integer& z) {
  if constexpr (is_complex_v<S>) {
    return S(from_integer<real_t<S>>(z));
  } else if constexpr (std::is_same_v<S, double>) {
    return z.template convert_to<double>();
  } else {
    return S(z);
  }
}

template <class S>
S from_int(long long v) {
  return from_integer<S>(Integer(v));
}

/// Float-to-float conversion between real kinds (double <-> HighFloat).
template <class To, class From>
To convert_scalar(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (is_complex_v<To>) {
    if constexpr (is_complex_v<From>) {
      return To(convert_scalar<real_t<To>>(x.real()), convert_scalar<real_t<To>>(x.imag()));
    } else {
      return To(convert_scalar<real_t<To>>(x));
    }
  } else if constexpr (std::is_same_v<To, double>) {
    return x.template convert_to<double>();
  } else {
    return To(x);
  }
}

template <class S>
real_t<S> magnitude(const S& x) {
  using std::abs;
  return abs(x);
}

/// Exponentiation by squaring; exact for Rational.
template <class S>
S ipow(S base, unsigned long long e) {
  S result = from_int<S>(1);
  while (e != 0) {
    if (e & 1ULL) result *= base;
    e >>= 1ULL;
    if (e != 0) base *= base;
  }
  return result;
}

/// Integer power allowing negative exponents (base must be nonzero then).
template <class S>
S ipow_signed(const S& base, long long e) {
  if (e >= 0) return ipow(base, static_cast<unsigned long long>(e));
  return from_int<S>(1) / ipow(base, static_cast<unsigned long long>(-e));
}

Integer factorial(unsigned n);
Integer binomial(long long n, long long k);
/// n! / prod(k_i!), zero when any k_i is negative or the parts do not sum to n.
Integer multinomial(long long n, const std::vector<long long>& parts);

/// Parses "3", "-3/4", "0.125" or "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);
/// Shortest round-trip decimal of a double, read back as an exact rational.
Rational rational_from_double(double x);
bool is_integer(const Rational& q);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);
std::string to_string(double x, unsigned digits);
std::string to_string(const HighFloat& x, unsigned digits);

/// Sets the default MPFR precision for newly created HighFloat values and
/// restores the previous value on destruction. Precision is thread local.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : saved_(HighFloat::default_precision()) {
    HighFloat::default_precision(digits);
  }
  ~PrecisionScope() { HighFloat::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

/// Neumaier (improved Kahan-Babuska) summation for floating kinds; a plain
/// accumulator for exact kinds. Complex values are compensated per component.
template <class S>
class CompensatedSum {
 public:
  CompensatedSum() : sum_(from_int<S>(0)), carry_(from_int<S>(0)) {}

  void add(const S& x) {
    if constexpr (is_exact_v<S>) {
      sum_ += x;
    } else if constexpr (is_complex_v<S>) {
      add_real(re_sum_, re_carry_, x.real());
      add_real(im_sum_, im_carry_, x.imag());
    } else {
      add_real(sum_, carry_, x);
    }
  }

  S value() const {
    if constexpr (is_exact_v<S>) {
      return sum_;
    } else if constexpr (is_complex_v<S>) {
      return S(re_sum_ + re_carry_, im_sum_ + im_carry_);
    } else {
      return sum_ + carry_;
    }
  }

 private:
  template <class R>
  static void add_real(R& sum, R& carry, const R& x) {
    using std::abs;
    R t = sum + x;
    if (abs(sum) >= abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }

  S sum_;
  S carry_;
  real_t<S> re_sum_{0}, re_carry_{0}, im_sum_{0}, im_carry_{0};
};

}  // namespace ffp
