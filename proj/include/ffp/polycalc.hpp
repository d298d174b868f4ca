#pragma once

// Monic polynomials p(x) = sum_{i=0}^d a_i x^{d-i}, a_0 = 1, in either
// coefficient form or with an attached root multiset, and the finite free
// convolutions acting on them.
//
// Normalized coefficients: at_i(p) = (-1)^i a_i / C(d, i).

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ffp/errors.hpp"
#include "ffp/numeric.hpp"

namespace ffp {

enum class RootFlavor { Real, Nonnegative, UnitCircle };

/// Roots as real numbers, or as angles theta in [-pi, pi) for the unit-circle flavor.
template <class Real>
struct RootData {
  RootFlavor flavor = RootFlavor::Real;
  std::vector<Real> values;
};

template <class Real>
Real pi_value() {
  if constexpr (std::is_same_v<Real, double>) {
    return std::numbers::pi;
  } else {
    return boost::math::constants::pi<Real>();
  }
}

namespace detail {

/// Coefficients of prod (x - r_k) as a_0..a_d.
template <class S>
std::vector<S> expand_roots(const std::vector<S>& roots) {
  std::vector<S> a{from_int<S>(1)};
  for (const S& r : roots) {
    a.push_back(from_int<S>(0));
    for (std::size_t j = a.size() - 1; j >= 1; --j) a[j] -= r * a[j - 1];
  }
  return a;
}

/// Binary64 expansion carried in double-double so that cancellation in the
/// elementary symmetric sums does not cost the low-order bits.
inline std::vector<double> expand_roots_compensated(const std::vector<double>& roots) {
  std::vector<double> hi{1.0};
  std::vector<double> lo{0.0};
  for (double r : roots) {
    hi.push_back(0.0);
    lo.push_back(0.0);
    for (std::size_t j = hi.size() - 1; j >= 1; --j) {
      const double p = r * hi[j - 1];
      const double pe = std::fma(r, hi[j - 1], -p) + r * lo[j - 1];
      const double s = hi[j] - p;
      const double bb = s - hi[j];
      const double se = (hi[j] - (s - bb)) + (-p - bb);
      const double low = lo[j] + se - pe;
      hi[j] = s + low;
      lo[j] = low - (hi[j] - s);
    }
  }
  return hi;
}

template <class S>
S binomial_as(int d, int i) {
  return from_integer<S>(binomial(d, i));
}

template <class S>
bool is_one(const S& x) {
  return x == from_int<S>(1);
}

}  // namespace detail

template <class S>
class MonicPoly {
 public:
  using Scalar = S;
  using Real = real_t<S>;

  /// a_0..a_d with a_0 = 1.
  static MonicPoly from_coeffs(std::vector<S> a) {
    if (a.size() < 2) throw InvalidInput("monic polynomial needs degree >= 1");
    if (!detail::is_one(a[0])) throw InvalidInput("leading coefficient a_0 must be 1");
    return MonicPoly(std::move(a), std::nullopt);
  }

  /// Built from at_0..at_d (at_0 = 1).
  static MonicPoly from_normalized(const std::vector<S>& at, int d) {
    if (d < 1) throw InvalidInput("degree must be at least 1");
    if (static_cast<int>(at.size()) != d + 1) {
      throw InvalidInput("expected " + std::to_string(d + 1) + " normalized coefficients");
    }
    if (!detail::is_one(at[0])) throw InvalidInput("normalized coefficient at_0 must be 1");
    std::vector<S> a(at.size());
    for (int i = 0; i <= d; ++i) {
      S v = at[static_cast<std::size_t>(i)] * detail::binomial_as<S>(d, i);
      a[static_cast<std::size_t>(i)] = (i % 2 == 0) ? v : S(-v);
    }
    return MonicPoly(std::move(a), std::nullopt);
  }

  static MonicPoly from_roots(std::vector<Real> roots, RootFlavor flavor = RootFlavor::Real) {
    if (roots.empty()) throw InvalidInput("monic polynomial needs degree >= 1");
    if (flavor == RootFlavor::UnitCircle) return from_angles(std::move(roots));
    if (flavor == RootFlavor::Nonnegative) {
      for (const auto& r : roots) {
        if (r < 0) throw InvalidInput("nonnegative-root polynomial has a negative root");
      }
    }
    std::vector<S> a;
    if constexpr (std::is_same_v<S, double>) {
      a = detail::expand_roots_compensated(roots);
    } else {
      std::vector<S> rs;
      rs.reserve(roots.size());
      for (const auto& r : roots) rs.push_back(S(r));
      a = detail::expand_roots(rs);
    }
    return MonicPoly(std::move(a), RootData<Real>{flavor, std::move(roots)});
  }

  /// Unit-circle polynomial prod (z - e^{i theta_k}); theta_k in [-pi, pi).
  static MonicPoly from_angles(std::vector<Real> angles) {
    if constexpr (!is_complex_v<S>) {
      throw InvalidInput("unit-circle polynomials need a complex scalar kind");
    } else {
      if (angles.empty()) throw InvalidInput("monic polynomial needs degree >= 1");
      const Real pi = pi_value<Real>();
      std::vector<S> rs;
      for (const auto& th : angles) {
        if (th < -pi || th >= pi) throw InvalidInput("angles must lie in [-pi, pi)");
        using std::cos;
        using std::sin;
        rs.emplace_back(cos(th), sin(th));
      }
      return MonicPoly(detail::expand_roots(rs), RootData<Real>{RootFlavor::UnitCircle, std::move(angles)});
    }
  }

  int degree() const { return static_cast<int>(a_.size()) - 1; }
  const std::vector<S>& coeffs() const { return a_; }
  const S& coeff(int i) const { return a_[static_cast<std::size_t>(i)]; }
  bool has_roots() const { return roots_.has_value(); }
  const RootData<Real>& roots() const {
    if (!roots_) throw InvalidInput("polynomial has no root representation; extract roots first");
    return *roots_;
  }

  /// Horner evaluation at x.
  template <class T>
  T operator()(const T& x) const {
    T acc = T(a_[0]);
    for (std::size_t i = 1; i < a_.size(); ++i) acc = acc * x + T(a_[i]);
    return acc;
  }

 private:
  MonicPoly(std::vector<S> a, std::optional<RootData<Real>> roots)
      : a_(std::move(a)), roots_(std::move(roots)) {}

  std::vector<S> a_;
  std::optional<RootData<Real>> roots_;
};

/// at_0..at_d
template <class S>
std::vector<S> normalized_coeffs(const MonicPoly<S>& p) {
  const int d = p.degree();
  std::vector<S> at(static_cast<std::size_t>(d + 1));
  for (int i = 0; i <= d; ++i) {
    S v = p.coeff(i) / detail::binomial_as<S>(d, i);
    at[static_cast<std::size_t>(i)] = (i % 2 == 0) ? v : S(-v);
  }
  return at;
}

/// Converts coefficients (and the root data, when present) to another scalar kind.
template <class To, class From>
MonicPoly<To> convert_poly(const MonicPoly<From>& p) {
  static_assert(is_complex_v<To> || !is_complex_v<From>, "cannot drop an imaginary part");
  auto conv = [](const auto& x, auto tag) {
    using Target = typename decltype(tag)::type;
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Rational>) {
      return from_rational<Target>(x);
    } else {
      return convert_scalar<Target>(x);
    }
  };
  if (p.has_roots()) {
    const auto& rd = p.roots();
    std::vector<real_t<To>> vals;
    for (const auto& v : rd.values) vals.push_back(conv(v, std::type_identity<real_t<To>>{}));
    if (rd.flavor != RootFlavor::UnitCircle) return MonicPoly<To>::from_roots(std::move(vals), rd.flavor);
    if constexpr (is_complex_v<To>) return MonicPoly<To>::from_angles(std::move(vals));
  }
  std::vector<To> a;
  for (const auto& c : p.coeffs()) a.push_back(conv(c, std::type_identity<To>{}));
  a[0] = from_int<To>(1);
  return MonicPoly<To>::from_coeffs(std::move(a));
}

/// D_c(p)(x) = c^d p(x/c)
template <class S>
MonicPoly<S> dilate(const MonicPoly<S>& p, const S& c) {
  if (c == from_int<S>(0)) throw InvalidInput("dilation factor must be nonzero");
  if constexpr (!is_complex_v<S>) {
    if (p.has_roots() && p.roots().flavor != RootFlavor::UnitCircle) {
      std::vector<real_t<S>> rs;
      for (const auto& r : p.roots().values) rs.push_back(r * c);
      RootFlavor flavor = p.roots().flavor;
      if (c < 0) flavor = RootFlavor::Real;
      return MonicPoly<S>::from_roots(std::move(rs), flavor);
    }
  }
  std::vector<S> a = p.coeffs();
  S power = from_int<S>(1);
  for (std::size_t i = 1; i < a.size(); ++i) {
    power *= c;
    a[i] *= power;
  }
  return MonicPoly<S>::from_coeffs(std::move(a));
}

/// Roots lambda -> lambda^alpha for nonnegative roots, with 0^alpha = 0.
template <class S>
MonicPoly<S> phi_alpha(const MonicPoly<S>& p, const S& alpha) {
  static_assert(!is_complex_v<S>, "phi_alpha acts on real nonnegative roots");
  if constexpr (is_exact_v<S>) {
    throw InvalidInput("root powers are not exact; use a floating scalar kind");
  } else {
    if (!(alpha > 0)) throw InvalidInput("phi_alpha needs alpha > 0");
    if (!p.has_roots()) {
      throw InvalidInput("phi_alpha needs the root representation; extract roots first");
    }
    std::vector<S> rs;
    for (const auto& r : p.roots().values) {
      if (r < 0) throw InvalidInput("phi_alpha needs nonnegative roots");
      using std::pow;
      rs.push_back(r == 0 ? S(0) : S(pow(r, alpha)));
    }
    return MonicPoly<S>::from_roots(std::move(rs), RootFlavor::Nonnegative);
  }
}

/// Angles theta -> c theta for unit-circle polynomials, c in (0, 1).
template <class S>
MonicPoly<S> phi_c_unitary(const MonicPoly<S>& p, const real_t<S>& c) {
  static_assert(is_complex_v<S>, "phi_c acts on unit-circle polynomials");
  if (!(c > 0 && c < 1)) throw InvalidInput("phi_c needs c in (0, 1)");
  if (!p.has_roots() || p.roots().flavor != RootFlavor::UnitCircle) {
    throw InvalidInput("phi_c needs the angle representation of a unit-circle polynomial");
  }
  std::vector<real_t<S>> angles;
  for (const auto& th : p.roots().values) angles.push_back(th * c);
  return MonicPoly<S>::from_angles(std::move(angles));
}

namespace detail {

template <class S>
void require_same_degree(const MonicPoly<S>& p, const MonicPoly<S>& q) {
  if (p.degree() != q.degree()) {
    throw InvalidInput("degree mismatch: " + std::to_string(p.degree()) + " vs " + std::to_string(q.degree()));
  }
}

}  // namespace detail

/// at_k(p + q) = sum_{i+j=k} C(k,i) at_i(p) at_j(q)
template <class S>
MonicPoly<S> boxplus(const MonicPoly<S>& p, const MonicPoly<S>& q) {
  detail::require_same_degree(p, q);
  const int d = p.degree();
  const auto ap = normalized_coeffs(p);
  const auto aq = normalized_coeffs(q);
  std::vector<S> at(static_cast<std::size_t>(d + 1), from_int<S>(0));
  for (int k = 0; k <= d; ++k) {
    CompensatedSum<S> acc;
    for (int i = 0; i <= k; ++i) {
      acc.add(detail::binomial_as<S>(k, i) * ap[static_cast<std::size_t>(i)] * aq[static_cast<std::size_t>(k - i)]);
    }
    at[static_cast<std::size_t>(k)] = acc.value();
  }
  at[0] = from_int<S>(1);
  return MonicPoly<S>::from_normalized(at, d);
}

/// at_i(p x q) = at_i(p) at_i(q)
template <class S>
MonicPoly<S> boxtimes(const MonicPoly<S>& p, const MonicPoly<S>& q) {
  detail::require_same_degree(p, q);
  auto at = normalized_coeffs(p);
  const auto aq = normalized_coeffs(q);
  for (std::size_t i = 0; i < at.size(); ++i) at[i] *= aq[i];
  at[0] = from_int<S>(1);
  return MonicPoly<S>::from_normalized(at, p.degree());
}

/// at_i(p^{x m}) = at_i(p)^m, m >= 1
template <class S>
MonicPoly<S> boxtimes_pow(const MonicPoly<S>& p, unsigned long long m) {
  if (m < 1) throw InvalidInput("boxtimes power needs m >= 1");
  auto at = normalized_coeffs(p);
  for (auto& v : at) v = ipow(v, m);
  at[0] = from_int<S>(1);
  return MonicPoly<S>::from_normalized(at, p.degree());
}

enum class LimitClass { AllZero, ZeroWithAtom, DeltaOne, Divergent };

inline const char* to_string(LimitClass c) {
  switch (c) {
    case LimitClass::AllZero: return "AllZero";
    case LimitClass::ZeroWithAtom: return "ZeroWithAtom";
    case LimitClass::DeltaOne: return "DeltaOne";
    case LimitClass::Divergent: return "Divergent";
  }
  return "?";
}

template <class S>
real_t<S> default_tolerance() {
  if constexpr (is_exact_v<S>) {
    return Rational(0);
  } else if constexpr (std::is_same_v<real_t<S>, double>) {
    return 1e-12;
  } else {
    using std::pow;
    const auto digits = static_cast<int>(real_t<S>::default_precision());
    return pow(real_t<S>(10), -(digits - 5));
  }
}

/// Classifies the limit of p^{x m} as m grows, for p with nonnegative roots.
template <class S>
LimitClass boxtimes_limit_class(const MonicPoly<S>& p, const S& tol = default_tolerance<S>()) {
  static_assert(!is_complex_v<S>, "classification is for nonnegative-root polynomials");
  const auto at = normalized_coeffs(p);
  auto cmp_one = [&](const S& x) {
    using std::abs;
    if (abs(x - S(1)) <= tol) return 0;
    return x < S(1) ? -1 : 1;
  };
  const int c1 = cmp_one(at[1]);
  if (c1 < 0) return LimitClass::AllZero;
  if (c1 > 0) return LimitClass::Divergent;
  if (p.degree() == 1) return LimitClass::DeltaOne;
  return cmp_one(at[2]) < 0 ? LimitClass::ZeroWithAtom : LimitClass::DeltaOne;
}

/// The limit polynomial of a convergent class: x^d, x^d - d x^{d-1} or (x-1)^d.
template <class S>
MonicPoly<S> boxtimes_limit_poly(LimitClass c, int d) {
  std::vector<S> at(static_cast<std::size_t>(d + 1), from_int<S>(0));
  at[0] = from_int<S>(1);
  switch (c) {
    case LimitClass::AllZero:
      break;
    case LimitClass::ZeroWithAtom:
      at[1] = from_int<S>(1);
      break;
    case LimitClass::DeltaOne:
      for (auto& v : at) v = from_int<S>(1);
      break;
    case LimitClass::Divergent:
      throw InvalidInput("the boxtimes powers diverge; no limit polynomial");
  }
  return MonicPoly<S>::from_normalized(at, d);
}

struct InequalityReport {
  bool newton_holds = true;
  /// Indices i (1..d-1) where at_{i+1} at_{i-1} = at_i^2.
  std::vector<int> newton_equalities;
  bool maclaurin_checked = false;
  bool maclaurin_holds = true;
  std::vector<int> maclaurin_equalities;
  /// Every inequality is tight, which happens exactly when all roots coincide.
  bool all_equal = false;
  /// Trailing at_i that vanish (one per zero root).
  int trailing_zeros = 0;
};

/// Newton's inequalities for real-rooted p and, when every at_i >= 0,
/// Maclaurin's chain at_1 >= at_2^{1/2} >= ... checked as at_i^{i+1} >= at_{i+1}^i.
template <class S>
InequalityReport newton_maclaurin_check(const MonicPoly<S>& p, const S& tol = default_tolerance<S>()) {
  static_assert(!is_complex_v<S>, "inequalities are for real-rooted polynomials");
  using std::abs;
  const int d = p.degree();
  const auto at = normalized_coeffs(p);
  InequalityReport rep;
  auto scaled_tol = [&](const S& a, const S& b) {
    S scale = abs(a) > abs(b) ? S(abs(a)) : S(abs(b));
    return S(tol * (scale > S(1) ? scale : S(1)));
  };
  for (int i = 1; i <= d - 1; ++i) {
    const S lhs = at[static_cast<std::size_t>(i + 1)] * at[static_cast<std::size_t>(i - 1)];
    const S rhs = at[static_cast<std::size_t>(i)] * at[static_cast<std::size_t>(i)];
    const S slack = scaled_tol(lhs, rhs);
    if (lhs > rhs + slack) rep.newton_holds = false;
    if (abs(lhs - rhs) <= slack) rep.newton_equalities.push_back(i);
  }
  bool nonnegative = true;
  for (const auto& v : at) {
    if (v < S(0) && abs(v) > tol) nonnegative = false;
  }
  if (nonnegative) {
    rep.maclaurin_checked = true;
    for (int i = 1; i <= d - 1; ++i) {
      const S lhs = ipow(at[static_cast<std::size_t>(i)], static_cast<unsigned long long>(i + 1));
      const S rhs = ipow(at[static_cast<std::size_t>(i + 1)], static_cast<unsigned long long>(i));
      const S slack = scaled_tol(lhs, rhs);
      if (rhs > lhs + slack) rep.maclaurin_holds = false;
      if (abs(lhs - rhs) <= slack) rep.maclaurin_equalities.push_back(i);
    }
  }
  for (int i = d; i >= 1 && abs(at[static_cast<std::size_t>(i)]) <= tol; --i) ++rep.trailing_zeros;
  rep.all_equal = static_cast<int>(rep.newton_equalities.size()) == d - 1;
  return rep;
}

/// m_0..m_N of the empirical root distribution. Uses the stored roots when
/// present, otherwise Newton's identities on the coefficients.
template <class S>
std::vector<S> empirical_moments(const MonicPoly<S>& p, int N) {
  if (N < 0) throw InvalidInput("moment order must be nonnegative");
  const int d = p.degree();
  const S dd = from_int<S>(d);
  std::vector<S> m(static_cast<std::size_t>(N + 1), from_int<S>(0));
  m[0] = from_int<S>(1);
  if (p.has_roots() && !is_exact_v<S>) {
    const auto& rd = p.roots();
    for (const auto& v : rd.values) {
      S root;
      if (rd.flavor == RootFlavor::UnitCircle) {
        if constexpr (is_complex_v<S>) {
          using std::cos;
          using std::sin;
          root = S(cos(v), sin(v));
        }
      } else {
        root = S(v);
      }
      S power = from_int<S>(1);
      for (int n = 1; n <= N; ++n) {
        power *= root;
        m[static_cast<std::size_t>(n)] += power;
      }
    }
    for (int n = 1; n <= N; ++n) m[static_cast<std::size_t>(n)] /= dd;
    return m;
  }
  // Power sums: P_k = -(k a_k + sum_{i=1}^{k-1} a_i P_{k-i}), a_i = 0 for i > d.
  std::vector<S> ps(static_cast<std::size_t>(N + 1), from_int<S>(0));
  for (int k = 1; k <= N; ++k) {
    S acc = k <= d ? S(from_int<S>(k) * p.coeff(k)) : from_int<S>(0);
    for (int i = 1; i < k && i <= d; ++i) acc += p.coeff(i) * ps[static_cast<std::size_t>(k - i)];
    ps[static_cast<std::size_t>(k)] = -acc;
    m[static_cast<std::size_t>(k)] = ps[static_cast<std::size_t>(k)] / dd;
  }
  return m;
}

}  // namespace ffp
