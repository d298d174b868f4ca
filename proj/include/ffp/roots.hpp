#pragma once

// Simultaneous root finding (Aberth-Ehrlich) for coefficient-form polynomials.

#include <algorithm>
#include <complex>
#include <vector>

#include "ffp/errors.hpp"
#include "ffp/numeric.hpp"
#include "ffp/polycalc.hpp"

namespace ffp {

inline constexpr int kAberthMaxIterations = 200;

namespace detail {

template <class R, class S>
std::complex<R> to_complex(const S& x) {
  if constexpr (std::is_same_v<S, Rational>) {
    return std::complex<R>(from_rational<R>(x));
  } else if constexpr (is_complex_v<S>) {
    return std::complex<R>(convert_scalar<R>(x.real()), convert_scalar<R>(x.imag()));
  } else {
    return std::complex<R>(convert_scalar<R>(x));
  }
}

template <class R>
R root_tolerance() {
  if constexpr (std::is_same_v<R, double>) {
    return 1e-13;
  } else {
    using std::pow;
    const auto digits = static_cast<int>(R::default_precision());
    return pow(R(10), -(digits - 5));
  }
}

/// |p(z)| / sum |a_i| |z|^{d-i}, with p(z) and p'(z) returned through the arguments.
template <class R>
R backward_error(const std::vector<std::complex<R>>& a, const std::vector<R>& abs_a,
                 const std::complex<R>& z, std::complex<R>& value, std::complex<R>& deriv) {
  using std::abs;
  value = a[0];
  deriv = std::complex<R>(R(0));
  R scale = abs_a[0];
  const R az = abs(z);
  for (std::size_t i = 1; i < a.size(); ++i) {
    deriv = deriv * z + value;
    value = value * z + a[i];
    scale = scale * az + abs_a[i];
  }
  if (scale == R(0)) return R(0);
  return abs(value) / scale;
}

}  // namespace detail

/// Roots of p in the floating kind R (double or HighFloat), polished by Newton steps.
template <class R, class S>
std::vector<std::complex<R>> roots_of(const MonicPoly<S>& p) {
  using C = std::complex<R>;
  using std::abs;
  using std::cos;
  using std::pow;
  using std::sin;
  const int d = p.degree();
  std::vector<C> a;
  for (const auto& c : p.coeffs()) a.push_back(detail::to_complex<R>(c));
  std::vector<R> abs_a;
  for (const auto& c : a) abs_a.push_back(abs(c));

  const C center = -a[1] / C(R(d));
  if (d == 1) return {center};

  // Taylor shift to the centroid; the initial circle radius bounds the shifted roots.
  std::vector<C> b = a;
  for (int i = 0; i < d; ++i) {
    for (int j = 1; j <= d - i; ++j) b[static_cast<std::size_t>(j)] += center * b[static_cast<std::size_t>(j - 1)];
  }
  // b[i] is now the x^{d-i} coefficient of p(x + center).
  R radius(0);
  for (int i = 1; i <= d; ++i) {
    const R ratio = abs(b[static_cast<std::size_t>(i)]) / from_integer<R>(binomial(d, i));
    if (ratio == R(0)) continue;
    const R r = pow(ratio, R(1) / R(i));
    if (r > radius) radius = r;
  }
  if (radius == R(0)) return std::vector<C>(static_cast<std::size_t>(d), center);

  const R two_pi = R(2) * pi_value<R>();
  std::vector<C> z(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const R angle = two_pi * R(k) / R(d) + R(0.4);
    z[static_cast<std::size_t>(k)] = center + C(radius * cos(angle), radius * sin(angle));
  }

  const R tol = detail::root_tolerance<R>();
  std::vector<C> best = z;
  R best_err(-1);
  C value, deriv;
  std::vector<C> values(static_cast<std::size_t>(d)), derivs(static_cast<std::size_t>(d));
  std::vector<R> errs(static_cast<std::size_t>(d));
  for (int iter = 0; iter <= kAberthMaxIterations; ++iter) {
    R worst(0);
    for (int k = 0; k < d; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      errs[ku] = detail::backward_error(a, abs_a, z[ku], values[ku], derivs[ku]);
      worst = std::max(worst, errs[ku]);
    }
    if (best_err < R(0) || worst < best_err) {
      best_err = worst;
      best = z;
    }
    if (worst <= tol || iter == kAberthMaxIterations) break;
    for (int k = 0; k < d; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      if (errs[ku] <= tol) continue;
      const C ratio = values[ku] / derivs[ku];
      C repulsion(R(0));
      for (int j = 0; j < d; ++j) {
        if (j != k) repulsion += C(R(1)) / (z[ku] - z[static_cast<std::size_t>(j)]);
      }
      const C step = ratio / (C(R(1)) - ratio * repulsion);
      if (std::isfinite(static_cast<double>(abs(step)))) z[ku] -= step;
    }
  }
  if (best_err > tol) {
    throw NonConvergence("Aberth iteration did not converge within " + std::to_string(kAberthMaxIterations) +
                             " iterations",
                         static_cast<double>(best_err));
  }

  // Newton polishing: keep a step only if it lowers the backward error.
  for (auto& zk : best) {
    for (int pass = 0; pass < 3; ++pass) {
      const R err = detail::backward_error(a, abs_a, zk, value, deriv);
      if (deriv == C(R(0))) break;
      const C trial = zk - value / deriv;
      C v2, d2;
      if (detail::backward_error(a, abs_a, trial, v2, d2) < err) zk = trial; else break;
    }
  }
  std::sort(best.begin(), best.end(), [](const C& x, const C& y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  });
  return best;
}

}  // namespace ffp
