#include "ffp/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "ffp/cumulants.hpp"
#include "ffp/errors.hpp"
#include "ffp/experiment.hpp"
#include "ffp/identities.hpp"
#include "ffp/partitions.hpp"
#include "ffp/poly_io.hpp"
#include "ffp/polycalc.hpp"

namespace ffp {

namespace {

struct Options {
  unsigned precision = kDefaultDigits;
  bool precision_set = false;
  std::string format = "csv";
  bool format_set = false;
  std::string out;
  int cap = -1;
};

/// A small table rendered as CSV or as a JSON array of objects.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render(const std::string& format) const {
    if (format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = r[i];
        arr.push_back(std::move(obj));
      }
      return arr.dump(2) + "\n";
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << '\n';
    }
    return os.str();
  }
};

void emit(const std::string& text, const Options& opt, std::ostream& out) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file '" + opt.out + "'");
  f << text;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (const auto& field : split_list(text)) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(field, &used);
      if (used != field.size()) throw std::invalid_argument(field);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InvalidInput(std::string("bad integer in ") + what + ": '" + field + "'");
    }
  }
  if (out.empty()) throw InvalidInput(std::string(what) + " is empty");
  return out;
}

std::vector<ZeroConstPoly> parse_fs(const std::string& text) {
  std::vector<ZeroConstPoly> fs;
  for (const auto& poly : split_list(text, ';')) {
    std::vector<Rational> c;
    for (const auto& field : split_list(poly)) c.push_back(parse_rational(field));
    fs.emplace_back(std::move(c));
  }
  if (fs.empty()) throw InvalidInput("--fs needs at least one polynomial");
  return fs;
}

int cap_or(const Options& opt, int fallback) { return opt.cap > 0 ? opt.cap : fallback; }

// --- scalar formatting -------------------------------------------------------

template <class S>
std::pair<std::string, std::string> parts(const S& x, unsigned digits) {
  if constexpr (std::is_same_v<S, Rational>) {
    return {to_string(x), ""};
  } else if constexpr (is_complex_v<S>) {
    return {to_string(x.real(), digits), to_string(x.imag(), digits)};
  } else {
    return {to_string(x, digits), ""};
  }
}

/// Runs f with the literals built in the kind chosen from the literals and the precision:
/// complex for angles, exact when every literal is exact, otherwise floating.
template <class F>
void with_kind(const std::vector<PolyLiteral>& lits, const Options& opt, F&& f) {
  bool angles = false;
  bool exact = true;
  for (const auto& l : lits) {
    angles = angles || l.form == LiteralForm::Angles;
    exact = exact && l.exact;
  }
  const bool low = opt.precision <= 16;
  auto run = [&]<class S>(std::type_identity<S>, unsigned digits) {
    std::vector<MonicPoly<S>> ps;
    for (const auto& l : lits) ps.push_back(build_poly<S>(l));
    f(ps, digits);
  };
  if (!angles && exact) {
    run(std::type_identity<Rational>{}, 0U);
  } else if (low) {
    if (angles) {
      run(std::type_identity<std::complex<double>>{}, 17U);
    } else {
      run(std::type_identity<double>{}, 17U);
    }
  } else {
    PrecisionScope scope(opt.precision);
    if (angles) {
      run(std::type_identity<std::complex<HighFloat>>{}, opt.precision);
    } else {
      run(std::type_identity<HighFloat>{}, opt.precision);
    }
  }
}

template <class S>
Table coeff_table(const MonicPoly<S>& p, unsigned digits) {
  Table t{{"i", "coeff", "coeff_imag", "normalized", "normalized_imag"}, {}};
  const auto at = normalized_coeffs(p);
  for (int i = 0; i <= p.degree(); ++i) {
    auto [c, ci] = parts(p.coeff(i), digits);
    auto [n, ni] = parts(at[static_cast<std::size_t>(i)], digits);
    t.rows.push_back({std::to_string(i), c, ci, n, ni});
  }
  return t;
}

// --- subcommands -----------------------------------------------------------

int cmd_partitions(int n, bool noncrossing, bool count_only, const Options& opt, std::ostream& out) {
  if (n < 1) throw InvalidInput("--n must be positive");
  const auto ps = noncrossing ? enumerate_noncrossing(n, cap_or(opt, kDefaultNoncrossingCap))
                              : enumerate_partitions(n, cap_or(opt, kDefaultPartitionCap));
  Table t;
  if (count_only) {
    t.header = {"n", "count"};
    t.rows.push_back({std::to_string(n), std::to_string(ps.size())});
  } else {
    t.header = {"index", "blocks", "partition"};
    for (std::size_t i = 0; i < ps.size(); ++i) {
      t.rows.push_back({std::to_string(i), std::to_string(ps[i].blocks().size()), to_string(ps[i])});
    }
  }
  emit(t.render(opt.format), opt, out);
  return 0;
}

int cmd_identity(const std::string& fs_text, int n, bool closed, const Options& opt, std::ostream& out) {
  const auto fs = parse_fs(fs_text);
  Table t{{"n", "s"}, {}};
  std::vector<std::string> row{std::to_string(n), to_string(s_bruteforce(fs, n, cap_or(opt, kDefaultPartitionCap)))};
  if (closed) {
    t.header.push_back("closed_form");
    const auto cf = s_closed_form(fs, n);
    if (const auto* v = std::get_if<Rational>(&cf)) {
      row.push_back(to_string(*v));
    } else {
      row.push_back("none");
    }
  }
  t.rows.push_back(std::move(row));
  emit(t.render(opt.format), opt, out);
  return 0;
}

int cmd_count(const std::string& which, const std::string& sizes_text, int n, const std::string& lengths_text,
              const Options& opt, std::ostream& out) {
  const auto sizes = parse_int_list(sizes_text, "--sizes");
  const int tuple_cap = cap_or(opt, kDefaultTupleCap);
  std::string brute, closed;
  if (which == "R" || which == "S") {
    if (n < 1) throw InvalidInput("count " + which + " needs --n");
    std::vector<ZeroConstPoly> basis;
    for (int m : sizes) basis.push_back(ZeroConstPoly::binomial_basis(m));
    if (which == "R") {
      brute = to_string(count_R(n, sizes, tuple_cap));
      closed = to_string(r_coeff(basis, n));
    } else {
      brute = to_string(count_S(n, sizes, tuple_cap));
      closed = to_string(s_bruteforce(basis, n, cap_or(opt, kDefaultPartitionCap)));
    }
  } else if (which == "T") {
    const auto lengths = parse_int_list(lengths_text, "--lengths");
    brute = to_string(count_T(sizes, lengths, tuple_cap));
    closed = to_string(count_T_closed(sizes, lengths));
  } else if (which == "joinfull") {
    brute = to_string(count_join_full(sizes, -1, cap_or(opt, kDefaultPartitionCap)));
    closed = to_string(count_join_full_closed(sizes));
  } else {
    throw InvalidInput("count needs one of R, S, T, joinfull");
  }
  Table t{{"count", "brute", "closed_form", "match"}, {{which, brute, closed, brute == closed ? "true" : "false"}}};
  emit(t.render(opt.format), opt, out);
  return 0;
}

int cmd_conv(const std::string& op, const std::string& p_text, const std::string& q_text, long long m,
             const Options& opt, std::ostream& out) {
  std::vector<PolyLiteral> lits{parse_poly_literal(std::string_view(p_text))};
  if (op == "boxplus" || op == "boxtimes") {
    if (q_text.empty()) throw InvalidInput("conv " + op + " needs --q");
    lits.push_back(parse_poly_literal(std::string_view(q_text)));
  } else if (op == "pow") {
    if (m < 1) throw InvalidInput("conv pow needs --m >= 1");
  } else {
    throw InvalidInput("conv needs one of boxplus, boxtimes, pow");
  }
  Table t;
  with_kind(lits, opt, [&](const auto& ps, unsigned digits) {
    if (op == "boxplus") {
      t = coeff_table(boxplus(ps[0], ps[1]), digits);
    } else if (op == "boxtimes") {
      t = coeff_table(boxtimes(ps[0], ps[1]), digits);
    } else {
      t = coeff_table(boxtimes_pow(ps[0], static_cast<unsigned long long>(m)), digits);
    }
  });
  emit(t.render(opt.format), opt, out);
  return 0;
}

int cmd_cumulants(const std::string& p_text, bool invert, const Options& opt, std::ostream& out) {
  const auto lit = parse_poly_literal(std::string_view(p_text));
  if (invert && lit.form != LiteralForm::Cumulants) throw InvalidInput("--invert needs a cumulants literal");
  Table t;
  with_kind({lit}, opt, [&](const auto& ps, unsigned digits) {
    if (invert) {
      t = coeff_table(ps[0], digits);
      return;
    }
    const auto kv = finite_cumulants(ps[0]);
    t.header = {"n", "kappa", "kappa_imag"};
    for (int n = 1; n <= kv.size(); ++n) {
      auto [re, im] = parts(kv[n], digits);
      t.rows.push_back({std::to_string(n), re, im});
    }
  });
  emit(t.render(opt.format), opt, out);
  return 0;
}

nlohmann::json load_config(const std::string& text) {
  std::string body = text;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') {
    std::ifstream f(text);
    if (!f) throw InvalidInput("cannot read config file '" + text + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    body = ss.str();
  }
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
  }
}

int cmd_limit(const std::string& kind, const std::string& config_text, const Options& opt, std::ostream& out,
              std::ostream& err) {
  nlohmann::json j = config_text.empty() ? nlohmann::json::object() : load_config(config_text);
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  if (j.contains("kind") && j["kind"] != kind) throw InvalidInput("--kind disagrees with the config's kind");
  j["kind"] = kind;
  if (opt.precision_set) j["precision"] = opt.precision;
  if (opt.format_set) j["format"] = opt.format;
  if (!opt.out.empty()) j["out"] = opt.out;
  const auto cfg = parse_config(j, opt.precision);
  const auto table = run_experiment(cfg);
  for (const auto& w : table.warnings) err << "warning: " << w << '\n';
  const std::string text = cfg.format == "json" ? to_json(table).dump(2) + "\n" : to_csv(table);
  Options o = opt;
  o.out = cfg.out;
  emit(text, o, out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite free probability toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--precision", opt.precision, "working precision in decimal digits")
      ->check(CLI::Range(15U, 100000U))
      ->each([&](const std::string&) { opt.precision_set = true; });
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->each([&](const std::string&) { opt.format_set = true; });
  app.add_option("--out", opt.out, "output path (default stdout)");
  app.add_option("--cap", opt.cap, "enumeration size cap")->check(CLI::PositiveNumber);
  app.fallthrough();

  int n = 0;
  bool noncrossing = false, count_only = false, closed = false, invert = false;
  std::string fs, sizes, lengths, p, q, kind, config, which, op;
  long long m = 0;

  auto* part = app.add_subcommand("partitions", "enumerate set partitions of [n]");
  part->add_option("--n", n)->required();
  part->add_flag("--noncrossing", noncrossing);
  part->add_flag("--count-only", count_only);

  auto* ident = app.add_subcommand("identity", "evaluate the partition sum s_n(f_1..f_k)");
  ident->add_option("--fs", fs, "polynomials 'c1,c2,...;c1,...' (coefficients of x^1..x^m)")->required();
  ident->add_option("--n", n)->required();
  ident->add_flag("--closed-form", closed);

  auto* count = app.add_subcommand("count", "brute-force counts with closed-form companions");
  count->add_option("which", which)->required()->check(CLI::IsMember({"R", "S", "T", "joinfull"}));
  count->add_option("--sizes", sizes)->required();
  count->add_option("--n", n);
  count->add_option("--lengths", lengths);

  auto* conv = app.add_subcommand("conv", "finite free convolutions");
  conv->add_option("op", op)->required()->check(CLI::IsMember({"boxplus", "boxtimes", "pow"}));
  conv->add_option("--p", p)->required();
  conv->add_option("--q", q);
  conv->add_option("--m", m);

  auto* cum = app.add_subcommand("cumulants", "finite free cumulants");
  cum->add_option("--p", p)->required();
  cum->add_flag("--invert", invert);

  auto* limit = app.add_subcommand("limit", "finite-degree limit experiments");
  limit->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"sy", "multclt", "lln", "uclt", "fms", "hermite", "laguerre"}));
  limit->add_option("--config", config, "JSON file or inline JSON object");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*part) return cmd_partitions(n, noncrossing, count_only, opt, out);
    if (*ident) return cmd_identity(fs, n, closed, opt, out);
    if (*count) return cmd_count(which, sizes, n, lengths, opt, out);
    if (*conv) return cmd_conv(op, p, q, m, opt, out);
    if (*cum) return cmd_cumulants(p, invert, opt, out);
    if (*limit) return cmd_limit(kind, config, opt, out, err);
  } catch (const PrecisionInfeasible& e) {
    err << "error: " << e.what() << " (required digits ~" << static_cast<int>(e.required_digits() + 0.999) << ")\n";
    return e.exit_code();
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return e.exit_code();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace ffp
