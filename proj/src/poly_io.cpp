#include "ffp/poly_io.hpp"

#include "ffp/cumulants.hpp"
#include "ffp/errors.hpp"

namespace ffp {

Rational json_to_rational(const nlohmann::json& v, bool* exact) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Rational(Integer(v.get<std::uint64_t>()));
    return Rational(Integer(v.get<std::int64_t>()));
  }
  if (v.is_number_float()) {
    if (exact) *exact = false;
    return rational_from_double(v.get<double>());
  }
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw InvalidInput("expected a number or numeric string, got " + v.dump());
}

namespace {

std::vector<Rational> read_values(const nlohmann::json& arr, const char* key, bool* exact) {
  if (!arr.is_array()) throw InvalidInput(std::string("'") + key + "' must be an array");
  std::vector<Rational> out;
  for (const auto& v : arr) out.push_back(json_to_rational(v, exact));
  return out;
}

}  // namespace

PolyLiteral parse_poly_literal(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("polynomial literal must be a JSON object");
  PolyLiteral lit;
  int forms = 0;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& key = it.key();
    if (key == "degree") continue;
    if (key == "coeffs") {
      lit.form = LiteralForm::Coeffs;
    } else if (key == "roots") {
      lit.form = LiteralForm::Roots;
    } else if (key == "angles") {
      lit.form = LiteralForm::Angles;
    } else if (key == "cumulants") {
      lit.form = LiteralForm::Cumulants;
    } else {
      throw InvalidInput("unknown key '" + key + "' in polynomial literal");
    }
    ++forms;
    lit.values = read_values(it.value(), key.c_str(), &lit.exact);
  }
  if (forms != 1) throw InvalidInput("polynomial literal needs exactly one of coeffs, roots, angles, cumulants");
  if (lit.form == LiteralForm::Angles) lit.exact = false;

  const int implied = lit.form == LiteralForm::Coeffs ? static_cast<int>(lit.values.size()) - 1
                                                       : static_cast<int>(lit.values.size());
  if (j.contains("degree")) {
    if (!j["degree"].is_number_integer()) throw InvalidInput("'degree' must be an integer");
    lit.degree = j["degree"].get<int>();
    if (lit.degree != implied) {
      throw InvalidInput("'degree' " + std::to_string(lit.degree) + " does not match " +
                         std::to_string(lit.values.size()) + " listed values");
    }
  } else if (lit.form == LiteralForm::Coeffs || lit.form == LiteralForm::Cumulants) {
    throw InvalidInput("'degree' is required for coefficient and cumulant literals");
  }
  lit.degree = implied;
  if (lit.degree < 1) throw InvalidInput("polynomial degree must be at least 1");
  if (lit.form == LiteralForm::Coeffs && lit.values[0] != 1) {
    throw InvalidInput("coefficient literal needs a_0 = 1 (monic)");
  }
  return lit;
}

PolyLiteral parse_poly_literal(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed polynomial JSON: ") + e.what());
  }
  return parse_poly_literal(j);
}

template <class S>
MonicPoly<S> build_poly(const PolyLiteral& lit) {
  using Real = real_t<S>;
  if constexpr (is_exact_v<S>) {
    if (!lit.exact) throw InvalidInput("literal contains floating values; an exact kind needs exact input");
  }
  switch (lit.form) {
    case LiteralForm::Coeffs: {
      std::vector<S> a;
      for (const auto& v : lit.values) a.push_back(from_rational<S>(v));
      return MonicPoly<S>::from_coeffs(std::move(a));
    }
    case LiteralForm::Roots: {
      std::vector<Real> r;
      bool nonnegative = true;
      for (const auto& v : lit.values) {
        r.push_back(from_rational<Real>(v));
        if (v < 0) nonnegative = false;
      }
      return MonicPoly<S>::from_roots(std::move(r), nonnegative ? RootFlavor::Nonnegative : RootFlavor::Real);
    }
    case LiteralForm::Angles: {
      if constexpr (!is_complex_v<S>) {
        throw InvalidInput("angle literals describe unit-circle polynomials and need a complex kind");
      } else {
        std::vector<Real> th;
        for (const auto& v : lit.values) th.push_back(from_rational<Real>(v));
        return MonicPoly<S>::from_angles(std::move(th));
      }
    }
    case LiteralForm::Cumulants: {
      CumulantVector<S> k{lit.degree, {}};
      for (const auto& v : lit.values) k.kappa.push_back(from_rational<S>(v));
      return coeffs_from_cumulants(k);
    }
  }
  throw InvalidInput("unsupported polynomial literal");
}

template MonicPoly<Rational> build_poly<Rational>(const PolyLiteral&);
template MonicPoly<double> build_poly<double>(const PolyLiteral&);
template MonicPoly<HighFloat> build_poly<HighFloat>(const PolyLiteral&);
template MonicPoly<std::complex<double>> build_poly<std::complex<double>>(const PolyLiteral&);
template MonicPoly<std::complex<HighFloat>> build_poly<std::complex<HighFloat>>(const PolyLiteral&);

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(sep, start);
    std::string field(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    const auto b = field.find_first_not_of(" \t");
    const auto e = field.find_last_not_of(" \t");
    field = b == std::string::npos ? std::string() : field.substr(b, e - b + 1);
    out.push_back(field);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace ffp
