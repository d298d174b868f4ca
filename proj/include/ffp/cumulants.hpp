#pragma once

// Finite free cumulants
//
//   kappa_n = (-d)^{n-1}/(n-1)! * sum_{pi in P(n)} at_pi(p) mu(pi, 1_n),
//   at_pi = prod_{V in pi} at_{|V|},
//
// their inverse, the multiplicative cumulant formula, and the special
// polynomial families defined through their normalized coefficients.

#include <algorithm>
#include <cmath>
#include <vector>

#include "ffp/errors.hpp"
#include "ffp/numeric.hpp"
#include "ffp/partitions.hpp"
#include "ffp/polycalc.hpp"

namespace ffp {

/// kappa_1..kappa_n of a degree-d polynomial (n <= d; complete when n == d).
template <class S>
struct CumulantVector {
  int d = 0;
  std::vector<S> kappa;

  const S& operator[](int n) const { return kappa.at(static_cast<std::size_t>(n - 1)); }
  int size() const { return static_cast<int>(kappa.size()); }
};

namespace detail {

template <class S>
S power_product(const std::vector<S>& base, const std::vector<int>& counts) {
  S term = from_int<S>(1);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] != 0) term *= ipow(base[i + 1], static_cast<unsigned long long>(counts[i]));
  }
  return term;
}

template <class S>
S cumulant_prefactor(int d, int n) {
  // (-d)^{n-1}/(n-1)!
  Integer num = ipow(Integer(-d), static_cast<unsigned long long>(n - 1));
  return from_integer<S>(num) / from_integer<S>(factorial(static_cast<unsigned>(n - 1)));
}

inline void require_order(int n, int d) {
  if (n < 1 || n > d) {
    throw InvalidInput("cumulant order n must satisfy 1 <= n <= d = " + std::to_string(d));
  }
}

}  // namespace detail

/// kappa_n from at_0..at_d, summing over block-size types of P(n).
template <class S>
S cumulant_from_normalized(const std::vector<S>& at, int d, int n) {
  detail::require_order(n, d);
  if (n == 1) return at[1];
  CompensatedSum<S> acc;
  for (const auto& type : *enumerate_by_type(n)) {
    S term = detail::power_product(at, type.counts);
    term *= from_integer<S>(type.multiplicity * mobius_to_top(type.blocks));
    acc.add(term);
  }
  return detail::cumulant_prefactor<S>(d, n) * acc.value();
}

template <class S>
CumulantVector<S> finite_cumulants(const MonicPoly<S>& p, int n_max = -1) {
  const int d = p.degree();
  if (n_max < 0) n_max = d;
  detail::require_order(n_max, d);
  const auto at = normalized_coeffs(p);
  CumulantVector<S> out{d, {}};
  for (int n = 1; n <= n_max; ++n) out.kappa.push_back(cumulant_from_normalized(at, d, n));
  return out;
}

/// The same cumulant by the literal sum over every partition of P(n).
template <class S>
S finite_cumulant_by_enumeration(const MonicPoly<S>& p, int n, int cap = kDefaultPartitionCap) {
  const int d = p.degree();
  detail::require_order(n, d);
  const auto at = normalized_coeffs(p);
  CompensatedSum<S> acc;
  for_each_partition(
      n,
      [&](const std::vector<int>& rgs, int blocks) {
        std::vector<int> sizes(static_cast<std::size_t>(blocks), 0);
        for (int label : rgs) ++sizes[static_cast<std::size_t>(label)];
        S term = from_integer<S>(mobius_to_top(blocks));
        for (int s : sizes) term *= at[static_cast<std::size_t>(s)];
        acc.add(term);
      },
      cap);
  return detail::cumulant_prefactor<S>(d, n) * acc.value();
}

/// at_n = sum_{sigma in P(n)} d^{|sigma|-n} mu(0_n, sigma) kappa_sigma, for n = 1..d.
template <class S>
MonicPoly<S> coeffs_from_cumulants(const CumulantVector<S>& kappa) {
  const int d = kappa.d;
  if (d < 1 || kappa.size() != d) {
    throw InvalidInput("inverting cumulants needs exactly d values kappa_1..kappa_d");
  }
  std::vector<S> kv{from_int<S>(0)};
  kv.insert(kv.end(), kappa.kappa.begin(), kappa.kappa.end());
  const S dd = from_int<S>(d);
  std::vector<S> at(static_cast<std::size_t>(d + 1), from_int<S>(0));
  at[0] = from_int<S>(1);
  for (int n = 1; n <= d; ++n) {
    CompensatedSum<S> acc;
    for (const auto& type : *enumerate_by_type(n)) {
      Integer weight = type.multiplicity;
      for (std::size_t i = 0; i < type.counts.size(); ++i) {
        if (type.counts[i] != 0) {
          weight *= ipow(mobius_to_top(static_cast<int>(i + 1)), static_cast<unsigned long long>(type.counts[i]));
        }
      }
      S term = detail::power_product(kv, type.counts) * from_integer<S>(weight);
      term /= ipow(dd, static_cast<unsigned long long>(n - type.blocks));
      acc.add(term);
    }
    at[static_cast<std::size_t>(n)] = acc.value();
  }
  return MonicPoly<S>::from_normalized(at, d);
}

namespace detail {

/// sum_{sigma <= pi} d^{|sigma|-n} mu(0_n, sigma) kappa_sigma, literally over sigma in P(n).
template <class S>
S refined_sum(const SetPartition& pi, const std::vector<SetPartition>& all, const std::vector<S>& kv, int d) {
  const int n = pi.ground_size();
  const S dd = from_int<S>(d);
  S total = from_int<S>(0);
  for (const auto& sigma : all) {
    if (!is_refinement(sigma, pi)) continue;
    const auto sizes = sigma.block_sizes();
    S term = from_integer<S>(mobius_from_bottom(sizes));
    for (int s : sizes) term *= kv[static_cast<std::size_t>(s)];
    term /= ipow(dd, static_cast<unsigned long long>(n - sigma.block_count()));
    total += term;
  }
  return total;
}

template <class S>
std::vector<std::vector<S>> cumulant_tables(const std::vector<MonicPoly<S>>& ps, int n) {
  if (ps.empty()) throw InvalidInput("at least one polynomial is required");
  const int d = ps.front().degree();
  for (const auto& p : ps) {
    if (p.degree() != d) throw InvalidInput("all factors must share the degree d");
  }
  require_order(n, d);
  std::vector<std::vector<S>> tables;
  for (const auto& p : ps) {
    auto k = finite_cumulants(p, n);
    std::vector<S> kv{from_int<S>(0)};
    kv.insert(kv.end(), k.kappa.begin(), k.kappa.end());
    tables.push_back(std::move(kv));
  }
  return tables;
}

}  // namespace detail

/// kappa_n of p_1 x ... x p_m from the cumulants of the factors:
/// (-d)^{n-1}/(n-1)! sum_pi prod_i (sum_{sigma_i <= pi} ...) mu(pi, 1_n).
template <class S>
S boxtimes_cumulants(const std::vector<MonicPoly<S>>& ps, int n, int cap = kDefaultPartitionCap) {
  const auto kv = detail::cumulant_tables(ps, n);
  const int d = ps.front().degree();
  const auto all = enumerate_partitions(n, cap);
  CompensatedSum<S> acc;
  for (const auto& pi : all) {
    S term = from_integer<S>(mobius_to_top(pi.block_count()));
    for (const auto& k : kv) term *= detail::refined_sum(pi, all, k, d);
    acc.add(term);
  }
  return detail::cumulant_prefactor<S>(d, n) * acc.value();
}

inline constexpr int kJoinSumMaxFactors = 3;
inline constexpr int kJoinSumMaxOrder = 6;

/// The same value as a sum over tuples (sigma_1..sigma_m) whose join is 1_n.
template <class S>
S boxtimes_cumulants_join(const std::vector<MonicPoly<S>>& ps, int n) {
  if (static_cast<int>(ps.size()) > kJoinSumMaxFactors || n > kJoinSumMaxOrder) {
    throw CapExceeded("join-sum path limited to m <= 3 factors and n <= 6");
  }
  const auto kv = detail::cumulant_tables(ps, n);
  const int d = ps.front().degree();
  const S dd = from_int<S>(d);
  const auto all = enumerate_partitions(n);
  const std::size_t b = all.size();

  // weight[i][s] = d^{|sigma_s|-n} mu(0_n, sigma_s) kappa_{sigma_s}(p_i)
  std::vector<std::vector<S>> weight(ps.size(), std::vector<S>(b));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t s = 0; s < b; ++s) {
      const auto sizes = all[s].block_sizes();
      S w = from_integer<S>(mobius_from_bottom(sizes));
      for (int len : sizes) w *= kv[i][static_cast<std::size_t>(len)];
      w /= ipow(dd, static_cast<unsigned long long>(n - all[s].block_count()));
      weight[i][s] = w;
    }
  }
  std::vector<std::size_t> join_index(b * b);
  for (std::size_t x = 0; x < b; ++x) {
    for (std::size_t y = 0; y < b; ++y) {
      const auto j = join(all[x], all[y]);
      join_index[x * b + y] = static_cast<std::size_t>(std::find(all.begin(), all.end(), j) - all.begin());
    }
  }
  const std::size_t top = static_cast<std::size_t>(
      std::find(all.begin(), all.end(), SetPartition::coarsest(n)) - all.begin());
  CompensatedSum<S> acc;
  const std::size_t m = ps.size();
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    std::size_t j = idx[0];
    S term = weight[0][idx[0]];
    for (std::size_t i = 1; i < m; ++i) {
      j = join_index[j * b + idx[i]];
      term *= weight[i][idx[i]];
    }
    if (j == top) acc.add(term);
    std::size_t pos = m;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < b) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
    if (done) break;
  }
  return detail::cumulant_prefactor<S>(d, n) * acc.value();
}

// ---------------------------------------------------------------------------
// Special polynomials

/// at_0..at_upto of the normalized Laguerre polynomial: (d lambda)_i / d^i,
/// with the falling factorial (x)_i = x (x-1) ... (x-i+1).
template <class S>
std::vector<S> laguerre_hat_normalized(int d, const S& lambda, int upto) {
  if (d < 1) throw InvalidInput("degree must be at least 1");
  if (!(lambda > from_int<S>(0))) throw InvalidInput("Laguerre parameter lambda must be positive");
  const S dd = from_int<S>(d);
  std::vector<S> at{from_int<S>(1)};
  S acc = from_int<S>(1);
  for (int i = 1; i <= upto; ++i) {
    acc *= (dd * lambda - from_int<S>(i - 1)) / dd;
    at.push_back(acc);
  }
  return at;
}

template <class S>
MonicPoly<S> laguerre_hat(int d, const S& lambda) {
  return MonicPoly<S>::from_normalized(laguerre_hat_normalized(d, lambda, d), d);
}

/// at_k = exp(sign * t k (d-k) / 2d), k = 0..upto
template <class S>
std::vector<S> exp_family_normalized(int d, const S& t, int sign, int upto) {
  static_assert(is_floating_v<S> && !is_complex_v<S>, "exponential families need a real floating kind");
  if (d < 1) throw InvalidInput("degree must be at least 1");
  if (t < S(0)) throw InvalidInput("time parameter t must be nonnegative");
  using std::exp;
  std::vector<S> at{from_int<S>(1)};
  const S two_d = from_int<S>(2 * d);
  for (int k = 1; k <= upto; ++k) {
    const S e = t * from_int<S>(static_cast<long long>(k) * (d - k)) / two_d;
    at.push_back(exp(sign > 0 ? S(e) : S(-e)));
  }
  return at;
}

/// Unitary Hermite H_d(z; t): at_k = exp(-t k (d-k) / 2d).
template <class S>
MonicPoly<S> hermite_unitary(int d, const S& t) {
  return MonicPoly<S>::from_normalized(exp_family_normalized(d, t, -1, d), d);
}

/// I_d(x; t): at_k = exp(t k (d-k) / 2d).
template <class S>
MonicPoly<S> exp_poly(int d, const S& t) {
  return MonicPoly<S>::from_normalized(exp_family_normalized(d, t, +1, d), d);
}

/// at_k = (1 - 2k/d)^m, k = 0..upto
template <class S>
std::vector<S> laguerre_unitary_normalized(int d, long long m, int upto) {
  if (d < 1) throw InvalidInput("degree must be at least 1");
  if (m < 0) throw InvalidInput("Laguerre power m must be nonnegative");
  std::vector<S> at{from_int<S>(1)};
  const S dd = from_int<S>(d);
  for (int k = 1; k <= upto; ++k) {
    at.push_back(ipow(S(from_int<S>(1) - from_int<S>(2 * k) / dd), static_cast<unsigned long long>(m)));
  }
  return at;
}

/// Unitary Laguerre L_{d,m}.
template <class S>
MonicPoly<S> laguerre_unitary(int d, long long m) {
  return MonicPoly<S>::from_normalized(laguerre_unitary_normalized<S>(d, m, d), d);
}

}  // namespace ffp
