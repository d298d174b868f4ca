#include "doctest.h"
#include "ffp/cumulants.hpp"
#include "ffp/errors.hpp"
#include "ffp/polycalc.hpp"
#include "ffp/roots.hpp"
#include "oracles.hpp"

using namespace ffp;
using Q = Rational;
using QPoly = MonicPoly<Rational>;

namespace {

QPoly random_poly(oracle::RandomRationals& rng, int d) {
  std::vector<Q> a{1};
  for (int i = 1; i <= d; ++i) a.push_back(rng.next());
  return QPoly::from_coeffs(a);
}

QPoly random_rooted(oracle::RandomRationals& rng, int d, bool positive) {
  std::vector<Q> r;
  for (int i = 0; i < d; ++i) r.push_back(positive ? Q(rng.integer(1, 20), rng.integer(1, 4)) : rng.next());
  return QPoly::from_roots(r, positive ? RootFlavor::Nonnegative : RootFlavor::Real);
}

}  // namespace

TEST_CASE("normalized coefficients") {
  auto at = normalized_coeffs(QPoly::from_roots(std::vector<Q>(5, Q(1))));
  for (const auto& v : at) CHECK(v == 1);
  at = normalized_coeffs(QPoly::from_coeffs({1, -6, 0, 0, 0, 0, 0}));
  CHECK(at[1] == 1);
  for (int i = 2; i <= 6; ++i) CHECK(at[static_cast<std::size_t>(i)] == 0);
  CHECK(normalized_coeffs(QPoly::from_coeffs({1, -4, 2})) == std::vector<Q>{1, 2, 2});
  CHECK_THROWS_AS(QPoly::from_normalized({2, 1}, 1), InvalidInput);
  CHECK_THROWS_AS(QPoly::from_coeffs({2, 1}), InvalidInput);
  oracle::RandomRationals rng(1);
  for (int d = 1; d <= 8; ++d) {
    const auto p = random_poly(rng, d);
    CHECK(QPoly::from_normalized(normalized_coeffs(p), d).coeffs() == p.coeffs());
  }
}

TEST_CASE("dilation") {
  const auto p = QPoly::from_coeffs({1, -4, 2});
  CHECK(dilate(p, Q(1)).coeffs() == p.coeffs());
  CHECK(dilate(QPoly::from_coeffs({1, -1}), Q(2)).coeffs() == std::vector<Q>{1, -2});
  CHECK(dilate(p, Q(1, 2)).coeffs() == std::vector<Q>{1, -2, Q(1, 2)});
  CHECK_THROWS_AS(dilate(p, Q(0)), InvalidInput);
  oracle::RandomRationals rng(4);
  for (int d = 1; d <= 6; ++d) {
    const auto q = random_poly(rng, d);
    const Q c = rng.nonzero(), c2 = rng.nonzero();
    const auto a = normalized_coeffs(q), b = normalized_coeffs(dilate(q, c));
    for (int i = 0; i <= d; ++i) CHECK(b[static_cast<std::size_t>(i)] == ipow(c, static_cast<unsigned long long>(i)) * a[static_cast<std::size_t>(i)]);
    CHECK(dilate(dilate(q, c), c2).coeffs() == dilate(q, Q(c * c2)).coeffs());
  }
}

TEST_CASE("root power maps") {
  const auto p = QPoly::from_roots({4, 9}, RootFlavor::Nonnegative);
  CHECK_THROWS_AS(phi_alpha(p, Q(1)), InvalidInput);
  const auto ph = convert_poly<double>(p);
  CHECK(phi_alpha(ph, 1.0).coeff(1) == doctest::Approx(-13));
  const auto half = phi_alpha(ph, 0.5);
  CHECK(half.coeff(1) == doctest::Approx(-5));
  CHECK(half.coeff(2) == doctest::Approx(6));
  const auto z = phi_alpha(MonicPoly<double>::from_roots({0.0, 4.0}, RootFlavor::Nonnegative), 0.5);
  CHECK(z.coeff(2) == doctest::Approx(0));
  CHECK_THROWS_AS(phi_alpha(MonicPoly<double>::from_coeffs({1, -3, 2}), 0.5), InvalidInput);

  using C = std::complex<double>;
  const double sigma = 0.7;
  const auto u = MonicPoly<C>::from_angles({sigma, -sigma});
  const auto v = phi_c_unitary(u, 1.0 / std::sqrt(100.0));
  CHECK(v.roots().values[0] == doctest::Approx(sigma / 10));
  CHECK(v.roots().values[1] == doctest::Approx(-sigma / 10));
  CHECK(v.coeff(1).real() == doctest::Approx(-2 * std::cos(sigma / 10)));
  CHECK_THROWS_AS(MonicPoly<C>::from_angles({4.0}), InvalidInput);
  CHECK_THROWS_AS(MonicPoly<double>::from_angles({0.1}), InvalidInput);
}

TEST_CASE("additive convolution") {
  const auto p = QPoly::from_coeffs({1, -2, 0});
  CHECK(boxplus(p, p).coeffs() == std::vector<Q>{1, -4, 2});
  oracle::RandomRationals rng(8);
  for (int d = 1; d <= 6; ++d) {
    const auto a = random_poly(rng, d), b = random_poly(rng, d), c = random_poly(rng, d);
    std::vector<Q> xd(static_cast<std::size_t>(d + 1), Q(0));
    xd[0] = 1;
    CHECK(boxplus(a, QPoly::from_coeffs(xd)).coeffs() == a.coeffs());
    CHECK(boxplus(a, b).coeffs() == boxplus(b, a).coeffs());
    CHECK(boxplus(boxplus(a, b), c).coeffs() == boxplus(a, boxplus(b, c)).coeffs());
  }
  CHECK_THROWS_AS(boxplus(random_poly(rng, 2), random_poly(rng, 3)), InvalidInput);
}

TEST_CASE("additive convolution preserves real roots") {
  oracle::RandomRationals rng(21);
  for (int d : {3, 8, 14, 20}) {
    std::vector<double> r1, r2;
    for (int i = 0; i < d; ++i) {
      r1.push_back(rng.real(-3, 3));
      r2.push_back(rng.real(-2, 5));
    }
    const auto p = MonicPoly<double>::from_roots(r1), q = MonicPoly<double>::from_roots(r2);
    for (const auto& z : roots_of<double>(boxplus(p, q))) CHECK(std::abs(z.imag()) <= 1e-8);
  }
}

TEST_CASE("multiplicative convolution") {
  oracle::RandomRationals rng(9);
  for (int d = 1; d <= 6; ++d) {
    const auto a = random_poly(rng, d), b = random_poly(rng, d);
    const auto ab = normalized_coeffs(boxtimes(a, b));
    const auto na = normalized_coeffs(a), nb = normalized_coeffs(b);
    for (int i = 0; i <= d; ++i) CHECK(ab[static_cast<std::size_t>(i)] == na[static_cast<std::size_t>(i)] * nb[static_cast<std::size_t>(i)]);
    CHECK(boxtimes(a, QPoly::from_roots(std::vector<Q>(static_cast<std::size_t>(d), Q(1)))).coeffs() == a.coeffs());
    CHECK(boxtimes_pow(a, 1).coeffs() == a.coeffs());
    auto acc = a;
    for (unsigned m = 2; m <= 5; ++m) {
      acc = boxtimes(acc, a);
      CHECK(boxtimes_pow(a, m).coeffs() == acc.coeffs());
    }
  }
  const auto l = laguerre_hat<Q>(2, Q(1));
  CHECK(normalized_coeffs(boxtimes(l, l)) == std::vector<Q>{1, 1, Q(1, 4)});
}

TEST_CASE("multiplicative power limit classification") {
  CHECK(boxtimes_limit_class(QPoly::from_roots(std::vector<Q>(4, Q(1)))) == LimitClass::DeltaOne);
  CHECK(boxtimes_limit_class(QPoly::from_roots({0, 1})) == LimitClass::AllZero);
  CHECK(boxtimes_limit_class(QPoly::from_coeffs({1, -2, 0})) == LimitClass::ZeroWithAtom);
  CHECK(boxtimes_limit_class(QPoly::from_roots({1, 2})) == LimitClass::Divergent);
  CHECK(boxtimes_limit_poly<Q>(LimitClass::ZeroWithAtom, 3).coeffs() == std::vector<Q>{1, -3, 0, 0});
  CHECK(boxtimes_limit_poly<Q>(LimitClass::AllZero, 2).coeffs() == std::vector<Q>{1, 0, 0});
  CHECK(boxtimes_limit_poly<Q>(LimitClass::DeltaOne, 2).coeffs() == std::vector<Q>{1, -2, 1});
  CHECK_THROWS_AS(boxtimes_limit_poly<Q>(LimitClass::Divergent, 2), InvalidInput);
}

TEST_CASE("root finding") {
  const auto r = roots_of<double>(MonicPoly<double>::from_coeffs({1, -4, 2}));
  REQUIRE(r.size() == 2);
  CHECK(r[0].real() == doctest::Approx(2 - std::sqrt(2.0)));
  CHECK(r[1].real() == doctest::Approx(2 + std::sqrt(2.0)));
  for (const auto& z : roots_of<double>(MonicPoly<double>::from_coeffs({1, -3, 3, -1}))) CHECK(std::abs(z - 1.0) <= 1e-4);
  for (const auto& z : roots_of<double>(hermite_unitary<double>(2, 1.0))) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-10);
  oracle::RandomRationals rng(13);
  std::vector<double> rs;
  for (int i = 0; i < 5; ++i) rs.push_back(1.0 + i + 0.3 * rng.real(0, 1));
  const auto found = roots_of<double>(MonicPoly<double>::from_roots(rs));
  for (std::size_t i = 0; i < rs.size(); ++i) CHECK(std::abs(found[i].real() - rs[i]) <= 1e-10 * rs[i]);
  {
    // Real roots at these degrees are too ill-conditioned for binary64 coefficients.
    PrecisionScope wide(60);
    for (int d : {20, 50}) {
      std::vector<HighFloat> hs;
      for (int i = 0; i < d; ++i) hs.push_back(HighFloat(1.0 + i + 0.3 * rng.real(0, 1)));
      const auto got = roots_of<HighFloat>(MonicPoly<HighFloat>::from_roots(hs));
      for (std::size_t i = 0; i < hs.size(); ++i) CHECK(abs(HighFloat(got[i].real() - hs[i])) <= HighFloat(1e-10) * hs[i]);
    }
  }
  PrecisionScope scope(40);
  const auto hr = roots_of<HighFloat>(MonicPoly<HighFloat>::from_coeffs({HighFloat(1), HighFloat(-4), HighFloat(2)}));
  CHECK(abs(HighFloat(hr[0].real() - (2 - sqrt(HighFloat(2))))) < HighFloat("1e-30"));
}

TEST_CASE("Newton and Maclaurin inequalities") {
  const auto eq = newton_maclaurin_check(QPoly::from_roots(std::vector<Q>(5, Q(3))), Q(0));
  CHECK(eq.newton_holds);
  CHECK(eq.all_equal);
  CHECK(eq.maclaurin_equalities.size() == 4);
  oracle::RandomRationals rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = random_rooted(rng, 5, true);
    const auto rep = newton_maclaurin_check(p, Q(0));
    CHECK(rep.newton_holds);
    CHECK(rep.maclaurin_checked);
    CHECK(rep.maclaurin_holds);
    const auto& roots = p.roots().values;
    const bool distinct = std::set<Q>(roots.begin(), roots.end()).size() > 1;
    if (distinct) CHECK(rep.newton_equalities.empty());
  }
  const auto z = newton_maclaurin_check(QPoly::from_roots({0, 0, 2, 3}), Q(0));
  CHECK(z.trailing_zeros == 2);
  CHECK(newton_maclaurin_check(random_rooted(rng, 6, false), Q(0)).newton_holds);
}

TEST_CASE("empirical moments") {
  for (const auto& m : empirical_moments(QPoly::from_roots(std::vector<Q>(4, Q(1))), 5)) CHECK(m == 1);
  const auto m = empirical_moments(QPoly::from_coeffs({1, -4, 2}), 3);
  CHECK(m[1] == 2);
  CHECK(m[2] == 6);
  CHECK(m[3] == 20);
  const auto md = empirical_moments(MonicPoly<double>::from_roots({2 - std::sqrt(2.0), 2 + std::sqrt(2.0)}), 2);
  CHECK(md[2] == doctest::Approx(6));
  using C = std::complex<double>;
  const auto mu = empirical_moments(MonicPoly<C>::from_angles({0.3, -0.3}), 2);
  CHECK(mu[0] == C(1));
  CHECK(mu[1].real() == doctest::Approx(std::cos(0.3)));
}
