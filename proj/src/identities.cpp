#include "ffp/identities.hpp"

#include <numeric>

namespace ffp {

ZeroConstPoly::ZeroConstPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) throw InvalidInput("polynomial in C[x]_0 must be nonzero");
}

ZeroConstPoly ZeroConstPoly::monomial(int m) {
  if (m < 1) throw InvalidInput("monomial degree must be positive");
  std::vector<Rational> c(static_cast<std::size_t>(m), Rational(0));
  c.back() = 1;
  return ZeroConstPoly(std::move(c));
}

ZeroConstPoly ZeroConstPoly::binomial_basis(int m) {
  if (m < 1) throw InvalidInput("binomial basis index must be positive");
  // Expand x(x-1)...(x-m+1); poly[j] is the coefficient of x^j.
  std::vector<Rational> poly{Rational(0), Rational(1)};
  for (int r = 1; r < m; ++r) {
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= poly[j] * r;
    }
    poly = std::move(next);
  }
  const Rational scale{factorial(static_cast<unsigned>(m))};
  std::vector<Rational> c(poly.begin() + 1, poly.end());
  for (auto& v : c) v /= scale;
  return ZeroConstPoly(std::move(c));
}

Rational ZeroConstPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (acc + *it) * x;
  return acc;
}

ZeroConstPoly ZeroConstPoly::operator+(const ZeroConstPoly& o) const {
  std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (std::size_t j = 0; j < coeffs_.size(); ++j) c[j] += coeffs_[j];
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[j] += o.coeffs_[j];
  return ZeroConstPoly(std::move(c));
}

namespace {

void require_nonempty(std::span<const ZeroConstPoly> fs) {
  if (fs.empty()) throw InvalidInput("at least one polynomial is required");
}

/// table[i][s-1] = f_i(s) for s = 1..n
std::vector<std::vector<Rational>> value_table(std::span<const ZeroConstPoly> fs, int n) {
  std::vector<std::vector<Rational>> table;
  for (const auto& f : fs) {
    std::vector<Rational> row;
    for (int s = 1; s <= n; ++s) row.push_back(f(Rational(s)));
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace

Rational r_coeff(std::span<const ZeroConstPoly> fs, int n) {
  require_nonempty(fs);
  if (n < 1) throw InvalidInput("derivative order n must be positive");
  Rational total = 0;
  for (int l = 1; l <= n; ++l) {
    Rational term{binomial(n, l)};
    if ((n - l) % 2 != 0) term = -term;
    for (const auto& f : fs) term *= f(Rational(l));
    total += term;
  }
  return total;
}

Rational s_bruteforce(std::span<const ZeroConstPoly> fs, int n, int cap) {
  require_nonempty(fs);
  if (n < 1) throw InvalidInput("derivative order n must be positive");
  const auto table = value_table(fs, n);
  const std::size_t k = fs.size();
  Rational total = 0;
  std::vector<int> sizes;
  for_each_partition(
      n,
      [&](const std::vector<int>& rgs, int blocks) {
        sizes.assign(static_cast<std::size_t>(blocks), 0);
        for (int label : rgs) ++sizes[static_cast<std::size_t>(label)];
        Rational term{mobius_to_top(blocks)};
        for (std::size_t i = 0; i < k; ++i) {
          Rational inner = 0;
          for (int s : sizes) inner += table[i][static_cast<std::size_t>(s - 1)];
          term *= inner;
        }
        total += term;
      },
      cap);
  return total;
}

Rational s_via_r_inversion(std::span<const ZeroConstPoly> fs, int n, int cap) {
  require_nonempty(fs);
  if (n < 1) throw InvalidInput("derivative order n must be positive");
  const int k = static_cast<int>(fs.size());
  if (k > 20) throw CapExceeded("Moebius inversion over P(k) needs k <= 20");

  // r_{|V|}[f_V](z) truncated at z^n, stored as ordinary coefficients, for every
  // nonempty subset V of the polynomial indices.
  const std::uint32_t subsets = std::uint32_t{1} << k;
  std::vector<std::vector<Rational>> r_poly(subsets);
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    std::vector<ZeroConstPoly> chosen;
    for (int i = 0; i < k; ++i) {
      if (mask & (std::uint32_t{1} << i)) chosen.push_back(fs[static_cast<std::size_t>(i)]);
    }
    auto& poly = r_poly[mask];
    poly.assign(static_cast<std::size_t>(n + 1), Rational(0));
    for (int j = 1; j <= n; ++j) {
      poly[static_cast<std::size_t>(j)] =
          r_coeff(chosen, j) / Rational(factorial(static_cast<unsigned>(j)));
    }
  }

  std::vector<Rational> s_poly(static_cast<std::size_t>(n + 1), Rational(0));
  for (PartitionEnumerator it(k, cap); !it.done(); it.advance()) {
    std::vector<std::uint32_t> block_masks(static_cast<std::size_t>(it.block_count()), 0);
    for (int i = 0; i < k; ++i) {
      block_masks[static_cast<std::size_t>(it.rgs()[static_cast<std::size_t>(i)])] |= std::uint32_t{1} << i;
    }
    std::vector<Rational> prod(static_cast<std::size_t>(n + 1), Rational(0));
    prod[0] = 1;
    for (auto mask : block_masks) {
      const auto& factor = r_poly[mask];
      std::vector<Rational> next(static_cast<std::size_t>(n + 1), Rational(0));
      for (int a = 0; a <= n; ++a) {
        if (prod[static_cast<std::size_t>(a)] == 0) continue;
        for (int b = 1; a + b <= n; ++b) {
          next[static_cast<std::size_t>(a + b)] += prod[static_cast<std::size_t>(a)] * factor[static_cast<std::size_t>(b)];
        }
      }
      prod = std::move(next);
    }
    const Rational mu{mobius_to_top(it.block_count())};
    for (int j = 0; j <= n; ++j) s_poly[static_cast<std::size_t>(j)] += mu * prod[static_cast<std::size_t>(j)];
  }
  return s_poly[static_cast<std::size_t>(n)] * Rational(factorial(static_cast<unsigned>(n)));
}

ClosedFormValue s_closed_form(std::span<const ZeroConstPoly> fs, int n) {
  require_nonempty(fs);
  if (n < 1) throw InvalidInput("derivative order n must be positive");
  const long long k = static_cast<long long>(fs.size());
  long long m_total = 0;
  for (const auto& f : fs) m_total += f.degree();
  const long long top = m_total - (k - 1);
  if (n > top) return Rational(0);
  if (n < top) return NoClosedForm{};
  Rational value{factorial(static_cast<unsigned>(n - 1))};
  value *= Rational(ipow(Integer(n), static_cast<unsigned long long>(k - 1)));
  for (const auto& f : fs) value *= Rational(f.degree()) * f.lead();
  return value;
}

std::vector<Rational> binomial_expand(const ZeroConstPoly& f) {
  // a_j is the j-th forward difference of f at 0.
  const int m = f.degree();
  std::vector<Rational> values;
  for (int i = 0; i <= m; ++i) values.push_back(f(Rational(i)));
  std::vector<Rational> out;
  for (int j = 1; j <= m; ++j) {
    Rational a = 0;
    for (int i = 0; i <= j; ++i) {
      Rational term = Rational(binomial(j, i)) * values[static_cast<std::size_t>(i)];
      a += (j - i) % 2 == 0 ? term : Rational(-term);
    }
    out.push_back(a);
  }
  return out;
}

std::pair<Rational, Rational> composition_identity(int n, int k, int cap) {
  if (n < 2 || k < 1 || k > n - 1) {
    throw InvalidInput("composition identity needs 1 <= k <= n-1");
  }
  Integer sum = 0;
  std::vector<int> sizes;
  for_each_partition(
      n - 1,
      [&](const std::vector<int>& rgs, int blocks) {
        if (blocks != k) return;
        sizes.assign(static_cast<std::size_t>(blocks), 0);
        for (int label : rgs) ++sizes[static_cast<std::size_t>(label)];
        Integer prod = 1;
        for (int s : sizes) prod *= factorial(static_cast<unsigned>(s));
        sum += prod;
      },
      cap);
  Rational left = Rational(sum) / Rational(factorial(static_cast<unsigned>(n - 1)));
  Rational right = Rational(binomial(n - 2, k - 1)) / Rational(factorial(static_cast<unsigned>(k)));
  return {left, right};
}

}  // namespace ffp
