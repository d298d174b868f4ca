#pragma once

// Coefficient extraction for the r/s polynomials built from polynomials with
// zero constant term, evaluated exactly over the rationals.

#include <cmath>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "ffp/errors.hpp"
#include "ffp/numeric.hpp"
#include "ffp/partitions.hpp"

namespace ffp {

/// f(x) = c_1 x + ... + c_m x^m with c_m != 0.
class ZeroConstPoly {
 public:
  /// coeffs[j-1] is the coefficient of x^j. Trailing zeros are trimmed.
  explicit ZeroConstPoly(std::vector<Rational> coeffs);

  /// g_m(x) = x^m
  static ZeroConstPoly monomial(int m);
  /// c_m(x) = binom(x, m) = x(x-1)...(x-m+1)/m!
  static ZeroConstPoly binomial_basis(int m);

  int degree() const { return static_cast<int>(coeffs_.size()); }
  const Rational& lead() const { return coeffs_.back(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational operator()(const Rational& x) const;

  ZeroConstPoly operator+(const ZeroConstPoly& o) const;

 private:
  std::vector<Rational> coeffs_;
};

/// sum_{l=1}^n C(n,l) (-1)^{n-l} prod_i f_i(l)
Rational r_coeff(std::span<const ZeroConstPoly> fs, int n);

/// sum over pi in P(n) of prod_i (sum_{V in pi} f_i(|V|)) * mu(pi, 1_n)
Rational s_bruteforce(std::span<const ZeroConstPoly> fs, int n, int cap = kDefaultPartitionCap);

/// The same coefficient obtained from the r polynomials by Moebius inversion over P(k).
Rational s_via_r_inversion(std::span<const ZeroConstPoly> fs, int n, int cap = kDefaultPartitionCap);

struct NoClosedForm {
  bool operator==(const NoClosedForm&) const = default;
};
using ClosedFormValue = std::variant<Rational, NoClosedForm>;

/// (n-1)! n^{k-1} prod m_i lead(f_i) at n = M-(k-1), zero above, NoClosedForm below.
ClosedFormValue s_closed_form(std::span<const ZeroConstPoly> fs, int n);

/// Coefficients a_1..a_m with f = sum_j a_j binom(x, j).
std::vector<Rational> binomial_expand(const ZeroConstPoly& f);

/// sum over pi in P(n) of prod_{V in pi} derivs[|V|-1]. R needs + and *.
template <class R>
R faa_di_bruno_sum(std::span<const R> derivs, int n, const R& zero, int cap = kDefaultPartitionCap) {
  if (n < 1) throw InvalidInput("derivative order must be positive");
  if (static_cast<int>(derivs.size()) < n) throw InvalidInput("need derivatives u^(1)..u^(n)");
  R total = zero;
  std::vector<int> sizes;
  for_each_partition(
      n,
      [&](const std::vector<int>& rgs, int blocks) {
        sizes.assign(static_cast<std::size_t>(blocks), 0);
        for (int label : rgs) ++sizes[static_cast<std::size_t>(label)];
        R term = derivs[static_cast<std::size_t>(sizes[0] - 1)];
        for (int b = 1; b < blocks; ++b) term = term * derivs[static_cast<std::size_t>(sizes[static_cast<std::size_t>(b)] - 1)];
        total = total + term;
      },
      cap);
  return total;
}

/// n-th derivative of exp(u(z)) at z0 from u(z0) and u'(z0)..u^(n)(z0).
template <class S>
S faa_di_bruno_exp(std::span<const S> derivs, const S& u0, int n, int cap = kDefaultPartitionCap) {
  S base = faa_di_bruno_sum<S>(derivs, n, from_int<S>(0), cap);
  if constexpr (is_exact_v<S>) {
    if (u0 != 0) throw InvalidInput("exp(u(z0)) is irrational unless u(z0) = 0");
    return base;
  } else {
    using std::exp;
    return base * exp(u0);
  }
}

/// Both sides of sum_{pi in P(n-1), |pi|=k} prod_V |V|! / (n-1)! = C(n-2,k-1)/k!.
std::pair<Rational, Rational> composition_identity(int n, int k, int cap = kDefaultPartitionCap);

}  // namespace ffp
