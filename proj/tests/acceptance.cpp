// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ffp/cumulants.hpp"
#include "ffp/experiment.hpp"
#include "ffp/freelimits.hpp"
#include "ffp/identities.hpp"
#include "ffp/partitions.hpp"
#include "ffp/polycalc.hpp"
#include "oracles.hpp"

using namespace ffp;
using Q = Rational;
using HF = HighFloat;
using json = nlohmann::json;

namespace {

int failures = 0;

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void run(int id, const char* name, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = std::string("exception: ") + e.what();
  }
  const double secs = seconds_since(t0);
  std::printf("%s %2d %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", id, name, secs, c.detail.empty() ? "" : " -- ",
              c.detail.c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

ZeroConstPoly random_poly(oracle::RandomRationals& rng, int deg) {
  std::vector<Q> c;
  for (int j = 1; j < deg; ++j) c.push_back(rng.next());
  c.push_back(rng.nonzero());
  return ZeroConstPoly(c);
}

MonicPoly<Q> random_monic(oracle::RandomRationals& rng, int d) {
  std::vector<Q> a{1};
  for (int i = 1; i <= d; ++i) a.push_back(rng.next());
  return MonicPoly<Q>::from_coeffs(a);
}

/// Multisets of sizes in 1..max_size with up to max_k entries, nondecreasing.
std::vector<std::vector<int>> size_vectors(int max_k, int max_size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int lo) {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_k) return;
    for (int m = lo; m <= max_size; ++m) {
      cur.push_back(m);
      rec(m);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

/// Compositions of total into exactly parts positive parts.
std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (static_cast<int>(cur.size()) == parts) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int v = 1; v <= left - (parts - static_cast<int>(cur.size()) - 1); ++v) {
      cur.push_back(v);
      rec(left - v);
      cur.pop_back();
    }
  };
  if (parts >= 1) rec(total);
  return out;
}

ResultTable experiment(const json& j) { return run_experiment(parse_config(j)); }

double row_value(const ResultRow& r) { return std::stod(r.value); }

const RateFit* rate_for(const ResultTable& t, int n) {
  for (const auto& f : t.rates) {
    if (f.n == n) return &f;
  }
  return nullptr;
}

/// Absolute errors per d for a fixed n, in grid order.
std::vector<double> errors_for(const ResultTable& t, int n) {
  std::vector<double> e;
  for (const auto& r : t.rows) {
    if (r.n == n) e.push_back(r.abs_error);
  }
  return e;
}

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) return false;
  }
  return true;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

void limit_protocol(Check& c, const std::string& kind, const std::vector<int>& ds, int n_max, int n_rel,
                    double rel_tol, double rate_tol) {
  const auto t0 = std::chrono::steady_clock::now();
  json j{{"kind", kind}, {"d", ds}, {"t", 1}, {"n_max", n_max}, {"precision", 50}};
  const auto table = experiment(j);
  const double secs = seconds_since(t0);
  c.require(secs < 60, "runtime " + std::to_string(secs) + "s");
  for (int n = 1; n <= n_max; ++n) {
    const auto e = errors_for(table, n);
    c.require(strictly_decreasing(e), "error not decreasing along d at n=" + std::to_string(n));
    const auto* f = rate_for(table, n);
    c.require(f && std::abs(f->slope + 1) <= rate_tol,
              "rate at n=" + std::to_string(n) + " is " + (f ? std::to_string(f->slope) : "missing"));
  }
  for (const auto& r : table.rows) {
    if (r.d == ds.back() && r.n <= n_rel) {
      c.require(r.rel_error <= rel_tol, "relative error " + std::to_string(r.rel_error) + " at n=" + std::to_string(r.n));
    }
  }
}

}  // namespace

int main() {
  run(1, "partition-sum identity: brute force equals closed form, zero band", [](Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    oracle::RandomRationals rng(2024);
    for (int inst = 0; inst < 20; ++inst) {
      const int k = 1 + inst % 3;
      std::vector<ZeroConstPoly> fs;
      int M = 0;
      for (int i = 0; i < k; ++i) {
        const int deg = rng.integer(1, 3);
        M += deg;
        fs.push_back(random_poly(rng, deg));
      }
      const int top = M - (k - 1);
      const auto closed = s_closed_form(fs, top);
      c.require(std::holds_alternative<Rational>(closed) && s_bruteforce(fs, top) == std::get<Rational>(closed),
                "mismatch at instance " + std::to_string(inst));
      for (int n = top + 1; n <= 8; ++n) {
        c.require(s_bruteforce(fs, n) == 0, "nonzero above the top degree at instance " + std::to_string(inst));
      }
    }
    c.require(seconds_since(t0) < 60, "runtime over 60s");
  });

  run(2, "binomial and square special values at n = k+1", [](Check& c) {
    for (int k = 1; k <= 6; ++k) {
      const int n = k + 1;
      const Q base = Q(factorial(static_cast<unsigned>(n - 1)) * ipow(Integer(n), static_cast<unsigned long long>(k - 1)));
      const std::vector<ZeroConstPoly> ch(static_cast<std::size_t>(k), ZeroConstPoly::binomial_basis(2));
      const std::vector<ZeroConstPoly> sq(static_cast<std::size_t>(k), ZeroConstPoly::monomial(2));
      c.require(s_bruteforce(ch, n) == base, "binomial family at k=" + std::to_string(k));
      c.require(s_bruteforce(sq, n) == base * Q(ipow(Integer(2), static_cast<unsigned long long>(k))),
                "square family at k=" + std::to_string(k));
    }
  });

  run(3, "counting oracles", [](Check& c) {
    for (const auto& sizes : size_vectors(3, 3)) {
      std::vector<ZeroConstPoly> basis;
      for (int m : sizes) basis.push_back(ZeroConstPoly::binomial_basis(m));
      for (int n = 1; n <= 8; ++n) {
        c.require(Q(count_R(n, sizes)) == r_coeff(basis, n), "covering count");
        c.require(Q(count_S(n, sizes)) == s_bruteforce(basis, n), "essential count");
      }
      int M = 0;
      for (int m : sizes) M += m;
      const int parts = M - (static_cast<int>(sizes.size()) - 1);
      for (int L = parts; L <= 8; ++L) {
        for (const auto& lengths : compositions(L, parts)) {
          c.require(count_T(sizes, lengths) == count_T_closed(sizes, lengths), "interval-augmented count");
        }
      }
    }
    for (int M = 1; M <= 8; ++M) {
      for (int k = 1; k <= M; ++k) {
        for (const auto& sizes : compositions(M, k)) {
          c.require(Q(count_join_full(sizes)) == count_join_full_closed(sizes), "join-full count");
        }
      }
    }
  });

  run(4, "cumulant algebra", [](Check& c) {
    oracle::RandomRationals rng(99);
    for (int i = 0; i < 50; ++i) {
      const int d = 1 + i % 8;
      const auto p = random_monic(rng, d), q = random_monic(rng, d);
      const Q cc = rng.nonzero();
      const auto kp = finite_cumulants(p), kq = finite_cumulants(q);
      c.require(coeffs_from_cumulants(kp).coeffs() == p.coeffs(), "round trip");
      const auto ks = finite_cumulants(boxplus(p, q));
      const auto kd = finite_cumulants(dilate(p, cc));
      for (int n = 1; n <= d; ++n) {
        c.require(ks[n] == kp[n] + kq[n], "linearization");
        c.require(kd[n] == ipow(cc, static_cast<unsigned long long>(n)) * kp[n], "dilation law");
      }
    }
    for (int d = 1; d <= 8; ++d) {
      std::vector<Q> a(static_cast<std::size_t>(d + 1), Q(0));
      a[0] = 1;
      a[1] = -d;
      const auto kv = finite_cumulants(MonicPoly<Q>::from_coeffs(a));
      const auto kl = finite_cumulants(laguerre_hat(d, Q(7, 3)));
      for (int n = 1; n <= d; ++n) {
        c.require(kv[n] == ipow(Q(d), static_cast<unsigned long long>(n - 1)), "x^d - d x^{d-1} values");
        c.require(kl[n] == Q(7, 3), "normalized Laguerre values");
      }
    }
    for (int d = 2; d <= 6; ++d) {
      for (int m = 1; m <= 5; ++m) {
        const auto kv = finite_cumulants(boxtimes_pow(laguerre_hat(d, Q(1)), static_cast<unsigned long long>(m)));
        const Q r1 = ipow(Q(d - 1, d), static_cast<unsigned long long>(m));
        const Q r2 = ipow(Q((d - 1) * (d - 2), d * d), static_cast<unsigned long long>(m));
        c.require(kv[2] == Q(d) * (1 - r1), "kappa_2 of Laguerre powers");
        if (d >= 3) c.require(kv[3] == Q(d * d) * (1 - Q(3, 2) * r1 + Q(1, 2) * r2), "kappa_3 of Laguerre powers");
      }
    }
  });

  run(5, "multiplicative cumulant formula equals cumulants of the product", [](Check& c) {
    oracle::RandomRationals rng(5);
    for (int d = 1; d <= 6; ++d) {
      for (int m = 1; m <= 3; ++m) {
        std::vector<MonicPoly<Q>> ps;
        for (int i = 0; i < m; ++i) ps.push_back(random_monic(rng, d));
        auto prod = ps[0];
        for (int i = 1; i < m; ++i) prod = boxtimes(prod, ps[static_cast<std::size_t>(i)]);
        const auto direct = finite_cumulants(prod);
        for (int n = 1; n <= std::min(d, 5); ++n) {
          c.require(boxtimes_cumulants(ps, n) == direct[n], "partition formula");
          c.require(boxtimes_cumulants_join(ps, n) == direct[n], "join formula");
        }
      }
    }
  });

  run(6, "Lagrange inversion, non-crossing moments, composition identity", [](Check& c) {
    PrecisionScope scope(50);
    const HF tol30("1e-30"), tol25("1e-25");
    for (const char* ts : {"0.1", "1", "2"}) {
      const HF t(ts);
      for (auto law : {LimitLaw::Lambda, LimitLaw::Sigma, LimitLaw::Pi}) {
        const auto k = lagrange_cumulants(s_transform_series(law, t, 8), 8);
        for (int n = 1; n <= 8; ++n) {
          const HF ref = law == LimitLaw::Lambda ? lambda_cumulant(n, t)
                         : law == LimitLaw::Sigma ? sigma_cumulant(n, t)
                                                  : pi_cumulant(n, t);
          c.require(abs(HF(k[static_cast<std::size_t>(n - 1)] - ref)) <= tol30,
                    std::string("series vs closed form at t=") + ts + ", n=" + std::to_string(n));
        }
      }
      std::vector<HF> kappa;
      for (int n = 1; n <= 6; ++n) kappa.push_back(lambda_cumulant(n, t));
      const auto mom = nc_moments_from_cumulants(kappa, 6);
      for (int n = 1; n <= 6; ++n) {
        c.require(abs(HF(mom[static_cast<std::size_t>(n - 1)] - lambda_moment(n, t))) <= tol25,
                  std::string("moment at t=") + ts);
      }
    }
    for (int n = 2; n <= 9; ++n) {
      for (int k = 1; k <= n - 1; ++k) {
        const auto [lhs, rhs] = composition_identity(n, k);
        c.require(lhs == rhs, "composition identity");
      }
    }
  });

  run(7, "unitary Hermite limit", [](Check& c) { limit_protocol(c, "hermite", {50, 100, 200, 400}, 4, 3, 0.02, 0.2); });

  run(8, "exponential-family limit", [](Check& c) { limit_protocol(c, "fms", {50, 100, 200, 400}, 4, 3, 0.02, 0.2); });

  run(9, "unitary Laguerre limit", [](Check& c) { limit_protocol(c, "laguerre", {100, 200, 400}, 3, 3, 0.05, 0.3); });

  run(10, "additive-multiplicative mixing limits in both regimes", [](Check& c) {
    const auto zero = experiment(json{{"kind", "sy"}, {"d", {100, 400, 1600}}, {"m_rule", "sqrt"}, {"n_max", 3}});
    for (int n = 1; n <= 3; ++n) {
      c.require(nonincreasing(errors_for(zero, n)), "regime zero not improving at n=" + std::to_string(n));
    }
    for (const auto& r : zero.rows) {
      if (r.d == 1600) c.require(r.rel_error <= 0.15, "regime zero relative error at n=" + std::to_string(r.n));
      const double ref = std::pow(r.n, r.n - 1) / std::tgamma(r.n + 1.0);
      c.require(std::abs(std::stod(r.reference) - ref) <= 1e-12, "regime zero reference");
    }
    const auto ratio = experiment(json{{"kind", "sy"}, {"d", 400}, {"m", 400}, {"n_max", 3}, {"regime", "ratio"}});
    for (const auto& r : ratio.rows) {
      c.require(r.rel_error <= 0.05, "regime t relative error at n=" + std::to_string(r.n));
      // The t -> -t variant of the limit must be clearly worse.
      if (r.n >= 2) {
        const double alt = r.n == 2 ? std::expm1(1.0) : (std::exp(3.0) - 3 * std::exp(1.0) + 2) / 2;
        c.require(std::abs(row_value(r) - alt) > 10 * r.abs_error, "sign variant not excluded");
      }
    }
  });

  run(11, "central limit and law of large numbers", [](Check& c) {
    const double s = 1.0;
    const auto mult = experiment(json{{"kind", "multclt"}, {"d", 2}, {"m", 1000000}});
    const auto uni = experiment(json{{"kind", "uclt"}, {"d", 2}, {"m", 1000000}});
    const auto lln = experiment(json{{"kind", "lln"}, {"d", 2}, {"alpha", "0.5"}, {"m", 1000000}});
    for (const auto& r : mult.rows) c.require(r.abs_error <= 1e-6, "cosh target");
    for (const auto& r : uni.rows) c.require(r.abs_error <= 1e-6, "cos target");
    for (const auto& r : lln.rows) c.require(r.abs_error <= 1e-6, "law of large numbers target");
    c.require(std::abs(std::stod(mult.rows[0].reference) - std::exp(s * s / 2)) < 1e-12, "d=2 target value");

    oracle::RandomRationals rng(77);
    const Q a(rng.integer(11, 30), 10), b(rng.integer(11, 30), 10);
    const json roots{a.str(), Q(1 / a).str(), b.str(), Q(1 / b).str(), "1"};
    std::vector<Q> th;
    Q sum = 0;
    for (int i = 0; i < 4; ++i) {
      th.push_back(Q(rng.integer(-20, 20), 20));
      sum += th.back();
    }
    th.push_back(-sum);
    json angles = json::array();
    for (const auto& x : th) angles.push_back(x.str());
    for (const auto& [kind, poly] : {std::pair<std::string, json>{"multclt", json{{"roots", roots}}},
                                     std::pair<std::string, json>{"uclt", json{{"angles", angles}}}}) {
      const auto table = experiment(json{{"kind", kind}, {"poly", poly}, {"m", {100, 1000, 10000}}});
      std::vector<double> dist;
      long long cur = -1;
      for (const auto& r : table.rows) {
        if (r.m != cur) {
          dist.push_back(0);
          cur = r.m;
        }
        dist.back() = std::max(dist.back(), r.abs_error);
      }
      c.require(dist.size() == 3 && strictly_decreasing(dist), kind + " distance not decreasing along m");
    }
  });

  run(12, "multiplicative power limit classification", [](Check& c) {
    using D = MonicPoly<double>;
    const std::vector<std::pair<LimitClass, D>> cases{
        {LimitClass::AllZero, D::from_roots({0.25, 0.5, 0.75}, RootFlavor::Nonnegative)},
        {LimitClass::ZeroWithAtom, D::from_coeffs({1, -3, 0, 0})},
        {LimitClass::DeltaOne, D::from_roots({1, 1, 1}, RootFlavor::Nonnegative)},
        {LimitClass::Divergent, D::from_roots({0.5, 1.5, 2.5}, RootFlavor::Nonnegative)},
    };
    for (const auto& [expected, p] : cases) {
      const auto cls = boxtimes_limit_class(p);
      c.require(cls == expected, std::string("classified as ") + to_string(cls));
      if (expected == LimitClass::Divergent) {
        c.require(normalized_coeffs(boxtimes_pow(p, 1000))[1] > 1e8, "divergent branch stays bounded");
        continue;
      }
      const auto target = normalized_coeffs(boxtimes_limit_poly<double>(expected, 3));
      double prev = 1e300;
      for (unsigned long long m : {1ULL, 10ULL, 100ULL, 1000ULL}) {
        const auto at = normalized_coeffs(boxtimes_pow(p, m));
        double dist = 0;
        for (std::size_t i = 0; i < at.size(); ++i) dist = std::max(dist, std::abs(at[i] - target[i]));
        c.require(dist <= prev, "distance grew at m=" + std::to_string(m));
        prev = dist;
        if (m == 1000) c.require(dist <= 1e-8, std::string("not converged for ") + to_string(expected));
      }
    }
  });

  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
