#include "ffp/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "ffp/cumulants.hpp"
#include "ffp/errors.hpp"
#include "ffp/freelimits.hpp"
#include "ffp/polycalc.hpp"
#include "ffp/roots.hpp"

namespace ffp {

namespace {

const std::map<std::string, ExperimentKind>& kind_table() {
  static const std::map<std::string, ExperimentKind> table{
      {"sy", ExperimentKind::SY},       {"multclt", ExperimentKind::MultCLT}, {"lln", ExperimentKind::LLN},
      {"uclt", ExperimentKind::UnitaryCLT}, {"fms", ExperimentKind::FMS},   {"hermite", ExperimentKind::Hermite},
      {"laguerre", ExperimentKind::Laguerre}};
  return table;
}

bool is_clt_kind(ExperimentKind k) {
  return k == ExperimentKind::MultCLT || k == ExperimentKind::LLN || k == ExperimentKind::UnitaryCLT;
}

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string sci(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::scientific, 6);
  return std::string(buf, ptr);
}

std::string decimal_text(const Rational& q) {
  if (is_integer(q)) return to_string(numerator(q));
  return shortest(q.convert_to<double>());
}

template <class T>
std::vector<T> scalar_or_array(const nlohmann::json& v, const char* key, T (*read)(const nlohmann::json&)) {
  std::vector<T> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(read(e));
  } else {
    out.push_back(read(v));
  }
  if (out.empty()) throw InvalidInput(std::string("grid '") + key + "' is empty");
  return out;
}

int read_int(const nlohmann::json& v) {
  if (!v.is_number_integer()) throw InvalidInput("expected an integer, got " + v.dump());
  return v.get<int>();
}

long long read_ll(const nlohmann::json& v) {
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (x != std::floor(x) || x < 0 || x > 9e18) throw InvalidInput("expected a nonnegative integer, got " + v.dump());
    return static_cast<long long>(x);
  }
  if (!v.is_number_integer()) throw InvalidInput("expected an integer, got " + v.dump());
  return v.get<long long>();
}

Rational read_rational(const nlohmann::json& v) { return json_to_rational(v); }

std::string read_string(const nlohmann::json& v, const char* key) {
  if (!v.is_string()) throw InvalidInput(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

ExperimentKind parse_kind(const std::string& name) {
  const auto& table = kind_table();
  auto it = table.find(name);
  if (it == table.end()) throw InvalidInput("unknown experiment kind '" + name + "'");
  return it->second;
}

std::string kind_name(ExperimentKind kind) {
  for (const auto& [name, k] : kind_table()) {
    if (k == kind) return name;
  }
  return "?";
}

double cancellation_digits(int n, int d) { return (n - 1) * std::log10(static_cast<double>(d)); }

ExperimentConfig parse_config(const nlohmann::json& j, unsigned fallback_precision) {
  if (!j.is_object()) throw InvalidInput("experiment config must be a JSON object");
  static const std::set<std::string> known{"kind",  "d",       "m",      "m_rule", "t",         "sigma",
                                           "alpha", "regime",  "kappa2", "n_max",  "precision", "poly",
                                           "format", "out"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw InvalidInput("unknown config key '" + it.key() + "'");
  }
  ExperimentConfig cfg;
  if (!j.contains("kind")) throw InvalidInput("config needs 'kind'");
  cfg.kind = parse_kind(read_string(j["kind"], "kind"));
  if (j.contains("d")) cfg.d = scalar_or_array<int>(j["d"], "d", read_int);
  if (j.contains("m")) cfg.m = scalar_or_array<long long>(j["m"], "m", read_ll);
  if (j.contains("t")) cfg.t = scalar_or_array<Rational>(j["t"], "t", read_rational);
  if (j.contains("m_rule")) cfg.m_rule = read_string(j["m_rule"], "m_rule");
  if (j.contains("regime")) cfg.regime = read_string(j["regime"], "regime");
  if (j.contains("sigma")) cfg.sigma = json_to_rational(j["sigma"]);
  if (j.contains("alpha")) cfg.alpha = json_to_rational(j["alpha"]);
  if (j.contains("kappa2")) cfg.kappa2 = json_to_rational(j["kappa2"]);
  if (j.contains("n_max")) cfg.n_max = read_int(j["n_max"]);
  cfg.precision = fallback_precision;
  if (j.contains("precision")) {
    const int p = read_int(j["precision"]);
    if (p < 1) throw InvalidInput("precision must be positive");
    cfg.precision = static_cast<unsigned>(p);
  }
  if (j.contains("poly")) cfg.poly = parse_poly_literal(j["poly"]);
  if (j.contains("format")) cfg.format = read_string(j["format"], "format");
  if (j.contains("out")) cfg.out = read_string(j["out"], "out");

  if (cfg.precision < 15) throw InvalidInput("precision must be at least 15 digits");
  if (cfg.format != "csv" && cfg.format != "json") throw InvalidInput("format must be csv or json");
  if (!cfg.m_rule.empty() && cfg.m_rule != "sqrt" && cfg.m_rule != "ratio") {
    throw InvalidInput("m_rule must be 'sqrt' or 'ratio'");
  }
  if (!cfg.regime.empty() && cfg.regime != "ratio" && cfg.regime != "zero") {
    throw InvalidInput("regime must be 'ratio' or 'zero'");
  }
  for (int d : cfg.d) {
    if (d < 1) throw InvalidInput("degrees must be positive");
  }
  for (long long m : cfg.m) {
    if (m < 1) throw InvalidInput("m values must be positive");
  }
  for (const auto& t : cfg.t) {
    if (t < 0) throw InvalidInput("t values must be nonnegative");
  }

  const bool user_poly = cfg.poly.has_value();
  if (user_poly) {
    if (cfg.kind == ExperimentKind::FMS || cfg.kind == ExperimentKind::Hermite || cfg.kind == ExperimentKind::Laguerre) {
      throw InvalidInput("kind '" + kind_name(cfg.kind) + "' uses a fixed polynomial family; 'poly' is not accepted");
    }
    if (cfg.poly->form == LiteralForm::Cumulants && is_clt_kind(cfg.kind)) {
      throw InvalidInput("CLT and LLN inputs need roots or angles");
    }
    if (cfg.d.empty()) cfg.d = {cfg.poly->degree};
    if (cfg.d.size() != 1 || cfg.d[0] != cfg.poly->degree) {
      throw InvalidInput("grid 'd' must equal the degree of the supplied polynomial");
    }
  }
  if (cfg.d.empty()) throw InvalidInput("grid 'd' is empty");

  switch (cfg.kind) {
    case ExperimentKind::SY:
      if (cfg.m_rule.empty() && cfg.m.empty()) throw InvalidInput("sy needs an 'm' grid or an 'm_rule'");
      if (cfg.m_rule == "ratio" && cfg.t.empty()) throw InvalidInput("m_rule 'ratio' needs a 't' grid");
      if (cfg.regime.empty()) cfg.regime = (cfg.m_rule == "ratio" || !cfg.t.empty()) ? "ratio" : "zero";
      break;
    case ExperimentKind::MultCLT:
    case ExperimentKind::LLN:
    case ExperimentKind::UnitaryCLT:
      if (cfg.m.empty()) throw InvalidInput("grid 'm' is empty");
      for (int d : cfg.d) {
        if (d < 2 && !user_poly) throw InvalidInput("the default CLT input needs d >= 2");
      }
      break;
    case ExperimentKind::FMS:
    case ExperimentKind::Hermite:
    case ExperimentKind::Laguerre:
      if (cfg.t.empty()) throw InvalidInput("grid 't' is empty");
      break;
  }
  const int min_d = *std::min_element(cfg.d.begin(), cfg.d.end());
  if (cfg.n_max == 0) cfg.n_max = is_clt_kind(cfg.kind) ? min_d : std::min(4, min_d);
  if (cfg.n_max < 1 || cfg.n_max > min_d) {
    throw InvalidInput("n_max must satisfy 1 <= n_max <= min d = " + std::to_string(min_d));
  }
  if (!is_clt_kind(cfg.kind) && cfg.n_max > kDefaultPartitionCap) {
    throw CapExceeded("cumulant order limited to n <= " + std::to_string(kDefaultPartitionCap));
  }
  return cfg;
}

namespace {

template <class R>
class Runner {
 public:
  Runner(const ExperimentConfig& cfg, ResultTable& table)
      : cfg_(cfg), table_(table), digits_(std::is_same_v<R, double> ? 17U : cfg.precision) {}

  void run() {
    switch (cfg_.kind) {
      case ExperimentKind::SY: run_sy(); break;
      case ExperimentKind::MultCLT: run_mult(false); break;
      case ExperimentKind::LLN: run_mult(true); break;
      case ExperimentKind::UnitaryCLT: run_unitary(); break;
      case ExperimentKind::FMS:
      case ExperimentKind::Hermite:
      case ExperimentKind::Laguerre: run_family(); break;
    }
  }

 private:
  R rat(const Rational& q) const { return from_rational<R>(q); }
  std::string fmt(const R& x) const {
    if constexpr (std::is_same_v<R, double>) {
      return to_string(x, digits_);
    } else {
      return to_string(x, digits_);
    }
  }
  static double to_d(const R& x) {
    if constexpr (std::is_same_v<R, double>) {
      return x;
    } else {
      return x.template convert_to<double>();
    }
  }

  double working_digits() const { return std::is_same_v<R, double> ? 15.95 : static_cast<double>(cfg_.precision); }

  void check_budget(int n, int d) {
    const double need = cancellation_digits(n, d);
    if (working_digits() < need) {
      throw PrecisionInfeasible("kappa_" + std::to_string(n) + " at d=" + std::to_string(d) + " needs about " +
                                    shortest(std::ceil(need + 15)) + " digits; working precision is " +
                                    shortest(working_digits()),
                                need + 15);
    }
    if (working_digits() < need + 15) {
      warn("precision below the recommended " + shortest(std::ceil(need + 15)) + " digits for n=" +
           std::to_string(n) + ", d=" + std::to_string(d));
    }
  }

  void warn(const std::string& msg) {
    if (std::find(table_.warnings.begin(), table_.warnings.end(), msg) == table_.warnings.end()) {
      table_.warnings.push_back(msg);
    }
  }

  void add_row(int d, long long m, const std::string& t_text, double t_value, int n, const R& value,
               const R& reference, const std::string& series) {
    using std::abs;
    ResultRow row;
    row.kind = kind_name(cfg_.kind);
    row.d = d;
    row.m = m;
    row.t = t_text;
    row.t_value = t_value;
    row.n = n;
    row.value = fmt(value);
    row.reference = fmt(reference);
    const R err = abs(value - reference);
    row.abs_error = to_d(err);
    row.rel_error = reference == R(0) ? row.abs_error : to_d(R(err / abs(reference)));
    row.reference_abs = to_d(R(abs(reference)));
    row.series = series;
    table_.rows.push_back(std::move(row));
  }

  void add_complex_row(int d, long long m, int n, const std::complex<R>& value, const R& reference,
                       const std::string& series) {
    using std::abs;
    ResultRow row;
    row.kind = kind_name(cfg_.kind);
    row.d = d;
    row.m = m;
    row.n = n;
    row.value = fmt(value.real());
    row.value_imag = fmt(value.imag());
    row.reference = fmt(reference);
    const R err = abs(value - std::complex<R>(reference));
    row.abs_error = to_d(err);
    row.rel_error = reference == R(0) ? row.abs_error : to_d(R(err / abs(reference)));
    row.reference_abs = to_d(R(abs(reference)));
    row.series = series;
    table_.rows.push_back(std::move(row));
  }

  // --- SY -------------------------------------------------------------------

  std::vector<std::pair<long long, std::string>> sy_m_values(int d) const {
    std::vector<std::pair<long long, std::string>> out;
    if (cfg_.m_rule == "sqrt") {
      long long m = 1;
      while (m * m < d) ++m;
      out.emplace_back(m, "m=ceil(sqrt(d))");
    } else if (cfg_.m_rule == "ratio") {
      for (const auto& t : cfg_.t) {
        const Rational x = t * d + Rational(1, 2);
        const long long m = static_cast<long long>(numerator(x) / denominator(x));
        if (m < 1) throw InvalidInput("m = round(t d) must be at least 1");
        out.emplace_back(m, "m=round(t*d),t=" + decimal_text(t));
      }
    } else {
      for (long long m : cfg_.m) out.emplace_back(m, "m=" + std::to_string(m));
    }
    return out;
  }

  void run_sy() {
    for (int d : cfg_.d) {
      std::vector<R> at;
      R kappa2 = R(1);
      if (cfg_.poly) {
        at = sy_user_family(d, kappa2);
      } else {
        at = laguerre_hat_normalized<R>(d, R(1), cfg_.n_max);
      }
      if (cfg_.kappa2) kappa2 = rat(*cfg_.kappa2);
      for (const auto& [m, series] : sy_m_values(d)) {
        std::vector<R> atm;
        for (const auto& v : at) atm.push_back(ipow(v, static_cast<unsigned long long>(m)));
        const Rational ratio(m, d);
        const R ratio_r = rat(ratio);
        for (int n = 1; n <= cfg_.n_max; ++n) {
          check_budget(n, d);
          const R value = cumulant_from_normalized(atm, d, n) / ipow(from_int<R>(m), static_cast<unsigned long long>(n - 1));
          const R reference = cfg_.regime == "ratio" ? sy_limit_t(n, ratio_r, kappa2) : sy_limit_zero(n, kappa2);
          add_row(d, m, decimal_text(ratio), ratio.convert_to<double>(), n, value, reference, series);
        }
      }
    }
  }

  std::vector<R> sy_user_family(int d, R& kappa2) {
    const auto& lit = *cfg_.poly;
    // kappa_1 = at_1 = 1, exactly when the literal is exact.
    if (lit.exact && lit.form != LiteralForm::Angles) {
      const auto exact_at = normalized_coeffs(build_poly<Rational>(lit));
      if (exact_at[1] != 1) throw InvalidInput("input polynomial violates kappa_1 = 1");
    }
    const auto p = build_poly<R>(lit);
    auto at = normalized_coeffs(p);
    using std::abs;
    if (!lit.exact && abs(R(at[1] - R(1))) > default_tolerance<R>() * R(1000)) {
      throw InvalidInput("input polynomial violates kappa_1 = 1");
    }
    // Nonnegative roots, checked numerically.
    if (p.has_roots()) {
      for (const auto& r : p.roots().values) {
        if (r < R(0)) throw InvalidInput("input polynomial has a negative root");
      }
    } else {
      const R tol = R(1e-8);
      for (const auto& z : roots_of<R>(p)) {
        if (z.real() < -tol || abs(z.imag()) > tol * (R(1) + abs(z))) {
          throw InvalidInput("input polynomial does not have nonnegative real roots");
        }
      }
    }
    if (d >= 2) kappa2 = cumulant_from_normalized(at, d, 2);
    table_.weak_convergence_unverified = true;
    warn("weak convergence of the supplied family is not checked");
    at.resize(static_cast<std::size_t>(cfg_.n_max + 1));
    return at;
  }

  // --- multiplicative CLT / LLN ---------------------------------------------

  /// Centered default exponents sigma * c_k with c_k proportional to 2k-d-1, mean c^2 = 1.
  std::vector<R> default_thetas(int d, const R& shift) const {
    using std::sqrt;
    const R scale = sqrt(R(from_int<R>(static_cast<long long>(d) * d - 1) / from_int<R>(3)));
    std::vector<R> th;
    for (int k = 1; k <= d; ++k) th.push_back(shift + rat(cfg_.sigma) * from_int<R>(2 * k - d - 1) / scale);
    return th;
  }

  std::vector<R> user_thetas_from_roots() const {
    const auto& lit = *cfg_.poly;
    std::vector<R> th;
    using std::log;
    if (lit.form == LiteralForm::Roots) {
      for (const auto& v : lit.values) {
        if (v <= 0) throw InvalidInput("roots must be positive to take logarithms");
        th.push_back(log(rat(v)));
      }
      return th;
    }
    if (lit.form == LiteralForm::Coeffs) {
      const auto p = build_poly<R>(lit);
      for (const auto& z : roots_of<R>(p)) {
        using std::abs;
        if (abs(z.imag()) > R(1e-8) || !(z.real() > R(0))) {
          throw InvalidInput("input polynomial needs positive real roots");
        }
        th.push_back(log(z.real()));
      }
      return th;
    }
    throw InvalidInput("multiplicative CLT input needs roots or coefficients");
  }

  // Hypothesis check, so loose enough for decimal-rounded input.
  static R centering_tolerance(const std::vector<R>& th) {
    using std::abs;
    R scale = R(1);
    for (const auto& x : th) scale = std::max(scale, R(abs(x)));
    return R(1e-10) * scale;
  }

  static R mean(const std::vector<R>& v) {
    CompensatedSum<R> s;
    for (const auto& x : v) s.add(x);
    return s.value() / from_int<R>(static_cast<long long>(v.size()));
  }
  static R mean_square(const std::vector<R>& v) {
    CompensatedSum<R> s;
    for (const auto& x : v) s.add(x * x);
    return s.value() / from_int<R>(static_cast<long long>(v.size()));
  }

  void run_mult(bool lln) {
    using std::abs;
    using std::exp;
    using std::sqrt;
    for (int d : cfg_.d) {
      const std::vector<R> th = cfg_.poly ? user_thetas_from_roots() : default_thetas(d, lln ? rat(cfg_.alpha) : R(0));
      const R mu = mean(th);
      std::vector<R> target;
      if (lln) {
        for (int k = 0; k <= d; ++k) target.push_back(exp(mu * from_int<R>(k)));
      } else {
        if (abs(mu) > centering_tolerance(th)) {
          throw InvalidInput("CLT input must be centered: mean log-root is " + fmt(mu));
        }
        const R s2 = mean_square(th);
        target = exp_family_normalized<R>(d, R(from_int<R>(d) * s2 / from_int<R>(d - 1)), +1, d);
      }
      for (long long m : cfg_.m) {
        const R scale = lln ? R(from_int<R>(1) / from_int<R>(m)) : R(from_int<R>(1) / sqrt(from_int<R>(m)));
        std::vector<R> roots;
        for (const auto& x : th) roots.push_back(exp(x * scale));
        const auto at = normalized_coeffs(MonicPoly<R>::from_roots(std::move(roots), RootFlavor::Nonnegative));
        for (int k = 1; k <= cfg_.n_max; ++k) {
          const R value = ipow(at[static_cast<std::size_t>(k)], static_cast<unsigned long long>(m));
          add_row(d, m, "", 0.0, k, value, target[static_cast<std::size_t>(k)], "d=" + std::to_string(d));
        }
      }
    }
  }

  // --- unitary CLT ----------------------------------------------------------

  void run_unitary() {
    using C = std::complex<R>;
    using std::abs;
    using std::sqrt;
    const R pi = pi_value<R>();
    for (int d : cfg_.d) {
      std::vector<R> th;
      if (cfg_.poly) {
        if (cfg_.poly->form != LiteralForm::Angles) throw InvalidInput("unitary CLT input needs 'angles'");
        for (const auto& v : cfg_.poly->values) th.push_back(rat(v));
      } else {
        th = default_thetas(d, R(0));
      }
      for (const auto& x : th) {
        if (x < -pi || x >= pi) throw InvalidInput("angles must lie in [-pi, pi); reduce sigma");
      }
      const R mu = mean(th);
      if (abs(mu) > centering_tolerance(th)) throw InvalidInput("unitary CLT input must be centered: mean angle is " + fmt(mu));
      const R s2 = mean_square(th);
      const auto target = exp_family_normalized<R>(d, R(from_int<R>(d) * s2 / from_int<R>(d - 1)), -1, d);
      const auto base = MonicPoly<C>::from_angles(th);
      for (long long m : cfg_.m) {
        const auto q = m == 1 ? base : phi_c_unitary(base, R(from_int<R>(1) / sqrt(from_int<R>(m))));
        const auto at = normalized_coeffs(q);
        for (int k = 1; k <= cfg_.n_max; ++k) {
          const C value = ipow(at[static_cast<std::size_t>(k)], static_cast<unsigned long long>(m));
          add_complex_row(d, m, k, value, target[static_cast<std::size_t>(k)], "d=" + std::to_string(d));
        }
      }
    }
  }

  // --- fixed families -------------------------------------------------------

  void run_family() {
    for (int d : cfg_.d) {
      for (const auto& t_q : cfg_.t) {
        const R t = rat(t_q);
        long long m = 0;
        std::vector<R> at;
        switch (cfg_.kind) {
          case ExperimentKind::FMS:
            at = exp_family_normalized<R>(d, t, +1, cfg_.n_max);
            break;
          case ExperimentKind::Hermite:
            at = exp_family_normalized<R>(d, t, -1, cfg_.n_max);
            break;
          default: {
            const Rational x = t_q * d + Rational(1, 2);
            m = static_cast<long long>(numerator(x) / denominator(x));
            at = laguerre_unitary_normalized<R>(d, m, cfg_.n_max);
            break;
          }
        }
        for (int n = 1; n <= cfg_.n_max; ++n) {
          check_budget(n, d);
          const R value = cumulant_from_normalized(at, d, n);
          R reference;
          switch (cfg_.kind) {
            case ExperimentKind::FMS: reference = lambda_cumulant(n, t); break;
            case ExperimentKind::Hermite: reference = sigma_cumulant(n, t); break;
            default: reference = pi_cumulant(n, t); break;
          }
          add_row(d, m, decimal_text(t_q), t_q.convert_to<double>(), n, value, reference, "t=" + decimal_text(t_q));
        }
      }
    }
  }

  const ExperimentConfig& cfg_;
  ResultTable& table_;
  unsigned digits_;
};

}  // namespace

ResultTable run_experiment(const ExperimentConfig& cfg) {
  ResultTable table;
  table.precision = cfg.precision;
  if (cfg.precision <= 16) {
    table.scalar_kind = "binary64";
    table.precision_floor = 1e-11;
    Runner<double>(cfg, table).run();
  } else {
    PrecisionScope scope(cfg.precision);
    table.scalar_kind = "mpfr" + std::to_string(cfg.precision);
    table.precision_floor = std::pow(10.0, -static_cast<double>(cfg.precision) + 5);
    Runner<HighFloat>(cfg, table).run();
  }
  std::stable_sort(table.rows.begin(), table.rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.d, a.m, a.t_value, a.series, a.n) < std::tie(b.d, b.m, b.t_value, b.series, b.n);
  });
  table.rates = fit_rate(table, is_clt_kind(cfg.kind) ? "m" : "d");
  return table;
}

std::vector<RateFit> fit_rate(const ResultTable& table, const std::string& axis) {
  if (axis != "d" && axis != "m") throw InvalidInput("rate axis must be d or m");
  std::map<std::tuple<std::string, int, std::string>, std::vector<const ResultRow*>> groups;
  for (const auto& row : table.rows) {
    groups[{row.kind, row.n, row.series}].push_back(&row);
  }
  std::vector<RateFit> fits;
  for (const auto& [key, rows] : groups) {
    RateFit fit;
    fit.kind = std::get<0>(key);
    fit.n = std::get<1>(key);
    fit.group = std::get<2>(key);
    fit.axis = axis;
    std::vector<double> xs, ys;
    for (const auto* row : rows) {
      const double x = axis == "d" ? row->d : static_cast<double>(row->m);
      if (row->abs_error <= table.precision_floor * std::max(1.0, row->reference_abs) || x <= 0) {
        ++fit.excluded;
        continue;
      }
      xs.push_back(std::log(x));
      ys.push_back(std::log(row->abs_error));
    }
    fit.points = static_cast<int>(xs.size());
    if (fit.excluded > 0) fit.note = std::to_string(fit.excluded) + " point(s) below the precision floor excluded";
    std::set<double> distinct(xs.begin(), xs.end());
    if (distinct.size() < 3) {
      fit.slope = std::nan("");
      fit.note += std::string(fit.note.empty() ? "" : "; ") + "fewer than 3 usable grid points";
    } else {
      const double n = static_cast<double>(xs.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
      }
      fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    fits.push_back(std::move(fit));
  }
  return fits;
}

std::string to_csv(const ResultTable& table) {
  std::ostringstream os;
  os << "kind,d,m,t,n,value,value_imag,reference,abs_error,rel_error\n";
  for (const auto& r : table.rows) {
    os << r.kind << ',' << r.d << ',' << r.m << ',' << r.t << ',' << r.n << ',' << r.value << ',' << r.value_imag
       << ',' << r.reference << ',' << sci(r.abs_error) << ',' << sci(r.rel_error) << '\n';
  }
  return os.str();
}

nlohmann::json to_json(const ResultTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    nlohmann::json row{{"kind", r.kind}, {"d", r.d},         {"m", r.m},
                       {"t", r.t},       {"n", r.n},         {"value", r.value},
                       {"reference", r.reference}, {"abs_error", r.abs_error}, {"rel_error", r.rel_error}};
    if (!r.value_imag.empty()) row["value_imag"] = r.value_imag;
    rows.push_back(std::move(row));
  }
  nlohmann::json rates = nlohmann::json::array();
  for (const auto& f : table.rates) {
    nlohmann::json rate{{"kind", f.kind}, {"n", f.n},           {"axis", f.axis},         {"group", f.group},
                        {"points", f.points}, {"excluded", f.excluded}, {"note", f.note}};
    rate["slope"] = std::isnan(f.slope) ? nlohmann::json(nullptr) : nlohmann::json(f.slope);
    rates.push_back(std::move(rate));
  }
  return nlohmann::json{{"rows", rows},
                        {"rates", rates},
                        {"metadata",
                         {{"precision", table.precision},
                          {"scalar_kind", table.scalar_kind},
                          {"precision_floor", table.precision_floor},
                          {"warnings", table.warnings},
                          {"weak_convergence_unverified", table.weak_convergence_unverified}}}};
}

}  // namespace ffp
