#pragma once

// Free cumulants and moments of the limit laws, plus a truncated power
// series type used to recover cumulants from S-transforms by Lagrange inversion.

#include <cmath>
#include <string>
#include <vector>

#include "ffp/errors.hpp"
#include "ffp/numeric.hpp"
#include "ffp/partitions.hpp"

namespace ffp {

/// exp for floating kinds; for Rational only exp(0) = 1 is representable.
template <class S>
S exp_of(const S& x) {
  if constexpr (is_exact_v<S>) {
    if (x != 0) throw InvalidInput("exp of a nonzero rational is not exact; use a floating kind");
    return Rational(1);
  } else {
    using std::exp;
    return exp(x);
  }
}

/// c_0 + c_1 z + ... + c_N z^N, arithmetic truncated at order N.
template <class S>
class PowerSeries {
 public:
  explicit PowerSeries(int order) : c_(static_cast<std::size_t>(check(order) + 1), from_int<S>(0)) {}
  PowerSeries(int order, std::vector<S> coeffs) : c_(std::move(coeffs)) {
    c_.resize(static_cast<std::size_t>(check(order) + 1), from_int<S>(0));
  }

  static PowerSeries constant(const S& c, int order) {
    PowerSeries s(order);
    s.c_[0] = c;
    return s;
  }
  /// The series z.
  static PowerSeries variable(int order) {
    PowerSeries s(order);
    if (order >= 1) s.c_[1] = from_int<S>(1);
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const S& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  S& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const std::vector<S>& coeffs() const { return c_; }

  PowerSeries operator+(const PowerSeries& o) const {
    PowerSeries r(std::min(order(), o.order()));
    for (int k = 0; k <= r.order(); ++k) r[k] = (*this)[k] + o[k];
    return r;
  }
  PowerSeries operator-(const PowerSeries& o) const {
    PowerSeries r(std::min(order(), o.order()));
    for (int k = 0; k <= r.order(); ++k) r[k] = (*this)[k] - o[k];
    return r;
  }
  PowerSeries operator*(const PowerSeries& o) const {
    PowerSeries r(std::min(order(), o.order()));
    for (int i = 0; i <= r.order(); ++i) {
      if ((*this)[i] == from_int<S>(0)) continue;
      for (int j = 0; i + j <= r.order(); ++j) r[i + j] += (*this)[i] * o[j];
    }
    return r;
  }
  PowerSeries operator*(const S& s) const {
    PowerSeries r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
  }

  /// Multiplicative inverse; needs c_0 != 0.
  PowerSeries inverse() const {
    if (c_[0] == from_int<S>(0)) throw InvalidInput("series with zero constant term is not invertible");
    PowerSeries r(order());
    r[0] = from_int<S>(1) / c_[0];
    for (int n = 1; n <= order(); ++n) {
      S acc = from_int<S>(0);
      for (int k = 1; k <= n; ++k) acc += c_[static_cast<std::size_t>(k)] * r[n - k];
      r[n] = -acc * r[0];
    }
    return r;
  }

  /// Integer power, negative exponents through the inverse.
  PowerSeries pow(long long e) const {
    PowerSeries base = e < 0 ? inverse() : *this;
    unsigned long long u = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    PowerSeries result = constant(from_int<S>(1), order());
    while (u != 0) {
      if (u & 1ULL) result = result * base;
      u >>= 1ULL;
      if (u != 0) base = base * base;
    }
    return result;
  }

  /// exp(f): g_0 = e^{f_0}, n g_n = sum_{k=1}^n k f_k g_{n-k}.
  PowerSeries exp() const {
    PowerSeries g(order());
    g[0] = exp_of(c_[0]);
    for (int n = 1; n <= order(); ++n) {
      S acc = from_int<S>(0);
      for (int k = 1; k <= n; ++k) acc += from_int<S>(k) * c_[static_cast<std::size_t>(k)] * g[n - k];
      g[n] = acc / from_int<S>(n);
    }
    return g;
  }

  PowerSeries derivative() const {
    PowerSeries r(std::max(order() - 1, 0));
    for (int k = 1; k <= order(); ++k) r[k - 1] = from_int<S>(k) * c_[static_cast<std::size_t>(k)];
    return r;
  }

  /// f(g) for g with zero constant term, by Horner.
  PowerSeries compose(const PowerSeries& g) const {
    if (g[0] != from_int<S>(0)) throw InvalidInput("composition needs an inner series with g(0) = 0");
    const int n = std::min(order(), g.order());
    PowerSeries r = constant(c_[static_cast<std::size_t>(n)], n);
    PowerSeries inner(n, g.coeffs());
    for (int k = n - 1; k >= 0; --k) {
      r = r * inner;
      r[0] += c_[static_cast<std::size_t>(k)];
    }
    return r;
  }

  /// Compositional inverse g with f(g(z)) = z; needs f_0 = 0, f_1 != 0.
  PowerSeries reversion() const {
    if (c_[0] != from_int<S>(0) || order() < 1 || c_[1] == from_int<S>(0)) {
      throw InvalidInput("reversion needs f(0) = 0 and f'(0) != 0");
    }
    PowerSeries g(order());
    g[1] = from_int<S>(1) / c_[1];
    for (int k = 2; k <= order(); ++k) {
      const PowerSeries fg = compose(g);
      g[k] -= fg[k] * g[1];
    }
    return g;
  }

 private:
  static int check(int order) {
    if (order < 0) throw InvalidInput("series order must be nonnegative");
    return order;
  }

  std::vector<S> c_;
};

// ---------------------------------------------------------------------------
// Closed forms

/// (alpha n)^{n-1} / n!
template <class S>
S eta_cumulant(int n, const S& alpha) {
  if (n < 1) throw InvalidInput("cumulant order must be positive");
  return ipow(S(alpha * from_int<S>(n)), static_cast<unsigned long long>(n - 1)) /
         from_integer<S>(factorial(static_cast<unsigned>(n)));
}

/// exp(nt/2) (nt)^{n-1} / n!
template <class S>
S lambda_cumulant(int n, const S& t) {
  if (n < 1) throw InvalidInput("cumulant order must be positive");
  const S nt = from_int<S>(n) * t;
  return exp_of(S(nt / from_int<S>(2))) * ipow(nt, static_cast<unsigned long long>(n - 1)) /
         from_integer<S>(factorial(static_cast<unsigned>(n)));
}

/// exp(-nt/2) (-nt)^{n-1} / n!
template <class S>
S sigma_cumulant(int n, const S& t) {
  if (n < 1) throw InvalidInput("cumulant order must be positive");
  const S nt = from_int<S>(n) * t;
  return exp_of(S(-nt / from_int<S>(2))) * ipow(S(-nt), static_cast<unsigned long long>(n - 1)) /
         from_integer<S>(factorial(static_cast<unsigned>(n)));
}

/// exp(nt/2) sum_{k=0}^{n-1} n^{k-1}/k! C(n, k+1) t^k
template <class S>
S lambda_moment(int n, const S& t) {
  if (n < 1) throw InvalidInput("moment order must be positive");
  S sum = from_int<S>(0);
  for (int k = 0; k <= n - 1; ++k) {
    S term = from_integer<S>(binomial(n, k + 1)) * ipow(t, static_cast<unsigned long long>(k)) /
             from_integer<S>(factorial(static_cast<unsigned>(k)));
    term *= ipow_signed(from_int<S>(n), k - 1);
    sum += term;
  }
  return exp_of(S(from_int<S>(n) * t / from_int<S>(2))) * sum;
}

/// (-1)^{n-1} 2^n e^{-2nt} sum_{k=1}^{n-1} (-t)^k/k! (2n)^{k-1} C(n-2, k-1); e^{-2t} at n = 1.
template <class S>
S pi_cumulant(int n, const S& t) {
  if (n < 1) throw InvalidInput("cumulant order must be positive");
  const S decay = exp_of(S(-from_int<S>(2 * n) * t));
  if (n == 1) return decay;
  S sum = from_int<S>(0);
  for (int k = 1; k <= n - 1; ++k) {
    S term = ipow(S(-t), static_cast<unsigned long long>(k)) / from_integer<S>(factorial(static_cast<unsigned>(k)));
    term *= from_integer<S>(ipow(Integer(2 * n), static_cast<unsigned long long>(k - 1)) * binomial(n - 2, k - 1));
    sum += term;
  }
  S sign_pow = from_integer<S>(ipow(Integer(2), static_cast<unsigned long long>(n)));
  if ((n - 1) % 2 != 0) sign_pow = -sign_pow;
  return sign_pow * decay * sum;
}

/// (-1)^{n-1} / (t^{n-1} (n-1)!) sum_{pi in P(n)} exp(-t kappa2 sum_V C(|V|,2)) mu(pi, 1_n)
template <class S>
S sy_limit_t(int n, const S& t, const S& kappa2) {
  if (n < 1) throw InvalidInput("cumulant order must be positive");
  if (!(t > from_int<S>(0))) throw InvalidInput("sy_limit_t needs t > 0");
  CompensatedSum<S> acc;
  for (const auto& type : *enumerate_by_type(n)) {
    long long pairs = 0;
    for (std::size_t i = 0; i < type.counts.size(); ++i) {
      const long long size = static_cast<long long>(i) + 1;
      pairs += type.counts[i] * size * (size - 1) / 2;
    }
    S term = exp_of(S(-t * kappa2 * from_int<S>(pairs)));
    term *= from_integer<S>(type.multiplicity * mobius_to_top(type.blocks));
    acc.add(term);
  }
  S scale = ipow(t, static_cast<unsigned long long>(n - 1)) * from_integer<S>(factorial(static_cast<unsigned>(n - 1)));
  if ((n - 1) % 2 != 0) scale = -scale;
  return acc.value() / scale;
}

/// (kappa2 n)^{n-1} / n!
template <class S>
S sy_limit_zero(int n, const S& kappa2) {
  return eta_cumulant(n, kappa2);
}

// ---------------------------------------------------------------------------
// Lagrange inversion

enum class LimitLaw { Lambda, Sigma, Pi, Identity };

/// Truncated S-transform of lambda_t, sigma_t, Pi_t or delta_1.
template <class S>
PowerSeries<S> s_transform_series(LimitLaw law, const S& t, int order) {
  if (order < 1) throw InvalidInput("series order must be at least 1");
  const auto z = PowerSeries<S>::variable(order);
  const auto one = PowerSeries<S>::constant(from_int<S>(1), order);
  const auto half = PowerSeries<S>::constant(from_int<S>(1) / from_int<S>(2), order);
  switch (law) {
    case LimitLaw::Lambda:
      return ((z + half) * S(-t)).exp();
    case LimitLaw::Sigma:
      return ((z + half) * t).exp();
    case LimitLaw::Pi:
      return ((z + half).inverse() * t).exp();
    case LimitLaw::Identity:
      return one;
  }
  return one;
}

/// kappa_n = (1/n) [z^{n-1}] S(z)^{-n}, n = 1..N.
template <class S>
std::vector<S> lagrange_cumulants(const PowerSeries<S>& s, int N) {
  if (N < 1) throw InvalidInput("need at least one cumulant");
  if (s[0] == from_int<S>(0)) throw InvalidInput("S(0) must be nonzero");
  if (s.order() < N - 1) throw InvalidInput("series order too small for the requested cumulants");
  PowerSeries<S> trunc(N - 1, s.coeffs());
  std::vector<S> out;
  for (int n = 1; n <= N; ++n) out.push_back(trunc.pow(-n)[n - 1] / from_int<S>(n));
  return out;
}

/// m_n = sum_{sigma in NC(n)} prod_{V in sigma} kappa_{|V|}, n = 1..N.
template <class S>
std::vector<S> nc_moments_from_cumulants(const std::vector<S>& kappa, int N, int cap = kDefaultNoncrossingCap) {
  if (N < 1) throw InvalidInput("need at least one moment");
  if (N > cap) throw CapExceeded("non-crossing enumeration limited to n <= " + std::to_string(cap));
  if (static_cast<int>(kappa.size()) < N) throw InvalidInput("need kappa_1..kappa_N");
  std::vector<S> m;
  for (int n = 1; n <= N; ++n) {
    S total = from_int<S>(0);
    for (const auto& sigma : enumerate_noncrossing(n, cap)) {
      S term = from_int<S>(1);
      for (int size : sigma.block_sizes()) term *= kappa[static_cast<std::size_t>(size - 1)];
      total += term;
    }
    m.push_back(total);
  }
  return m;
}

}  // namespace ffp
