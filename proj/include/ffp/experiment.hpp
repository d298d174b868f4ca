#pragma once

// Finite-(d, m, t) experiments for the limit theorems, compared against the
// closed-form limits, with least-squares convergence rates.

#include <optional>
#include <string>
#include <vector>

#include "ffp/numeric.hpp"
#include "ffp/poly_io.hpp"
#include "json.hpp"

namespace ffp {

enum class ExperimentKind { SY, MultCLT, LLN, UnitaryCLT, FMS, Hermite, Laguerre };

ExperimentKind parse_kind(const std::string& name);
std::string kind_name(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::FMS;
  std::vector<int> d;
  std::vector<long long> m;
  /// "sqrt": m = ceil(sqrt d); "ratio": m = round(t d). Empty: the m grid.
  std::string m_rule;
  std::vector<Rational> t;
  Rational sigma = 1;
  Rational alpha = 0;
  /// Reference regime for sy: "ratio" (m/d -> t) or "zero" (m/d -> 0).
  std::string regime;
  std::optional<Rational> kappa2;
  int n_max = 0;  // 0: default
  unsigned precision = kDefaultDigits;
  std::optional<PolyLiteral> poly;
  std::string format = "csv";
  std::string out;
};

/// Parses and validates; unknown keys are rejected. fallback_precision is used
/// when the config does not set "precision".
ExperimentConfig parse_config(const nlohmann::json& j, unsigned fallback_precision = kDefaultDigits);

struct ResultRow {
  std::string kind;
  int d = 0;
  long long m = 0;
  std::string t;  // decimal text; empty when not applicable
  double t_value = 0;
  int n = 0;
  std::string value;
  std::string value_imag;  // empty for real-valued kinds
  std::string reference;
  double abs_error = 0;
  double rel_error = 0;
  double reference_abs = 0;
  /// Parameters held fixed along a rate fit, e.g. "t=1" or "d=5".
  std::string series;
};

struct RateFit {
  std::string kind;
  std::string axis;
  std::string group;  // fixed parameters of the fitted series, e.g. "n=2,t=1"
  int n = 0;
  double slope = 0;
  int points = 0;
  int excluded = 0;
  std::string note;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  std::vector<RateFit> rates;
  std::vector<std::string> warnings;
  unsigned precision = kDefaultDigits;
  std::string scalar_kind;
  bool weak_convergence_unverified = false;
  /// Absolute errors at or below this are treated as numerically zero.
  double precision_floor = 0;
};

ResultTable run_experiment(const ExperimentConfig& cfg);

/// Least-squares slope of log|error| against log(axis) per (kind, n, other fixed parameters).
std::vector<RateFit> fit_rate(const ResultTable& table, const std::string& axis);

/// Digits needed to resolve the cancellation in kappa_n at degree d, without margin.
double cancellation_digits(int n, int d);

std::string to_csv(const ResultTable& table);
nlohmann::json to_json(const ResultTable& table);

}  // namespace ffp
