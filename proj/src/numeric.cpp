#include "ffp/numeric.hpp"

#include <charconv>
#include <sstream>
#include <system_error>

#include "ffp/errors.hpp"

namespace ffp {

Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Integer binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return Integer(0);
  if (k > n - k) k = n - k;
  Integer r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Integer multinomial(long long n, const std::vector<long long>& parts) {
  long long total = 0;
  for (long long p : parts) {
    if (p < 0) return Integer(0);
    total += p;
  }
  if (total != n || n < 0) return Integer(0);
  Integer r = factorial(static_cast<unsigned>(n));
  for (long long p : parts) r /= factorial(static_cast<unsigned>(p));
  return r;
}

namespace {

Integer pow10(unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& v) {
    const auto b = v.find_first_not_of(" \t\n\r");
    const auto e = v.find_last_not_of(" \t\n\r");
    v = (b == std::string::npos) ? std::string() : v.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw InvalidInput("empty numeric literal");

  if (const auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in '" + s + "'");
    return num / den;
  }

  // Decimal with optional exponent: [+-]digits[.digits][(e|E)[+-]digits]
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw InvalidInput("not a number: '" + s + "'");
  long long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw InvalidInput("not a number: '" + s + "'");
    ++pos;
    const char* first = s.data() + pos;
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last) throw InvalidInput("bad exponent in '" + s + "'");
  }
  // A leading zero would make the backend read the digits as octal.
  const auto nz = digits.find_first_not_of('0');
  Rational value{Integer(nz == std::string::npos ? std::string("0") : digits.substr(nz))};
  const long long shift = exponent - scale;
  if (shift > 4000 || shift < -4000) throw InvalidInput("exponent out of range in '" + s + "'");
  if (shift >= 0) {
    value *= Rational(pow10(static_cast<unsigned>(shift)));
  } else {
    value /= Rational(pow10(static_cast<unsigned>(-shift)));
  }
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidInput("non-finite number");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw InvalidInput("cannot format number");
  return parse_rational(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(const Rational& q) { return q.str(); }

std::string to_string(double x, unsigned digits) {
  std::ostringstream os;
  os.precision(static_cast<int>(digits));
  os << x;
  return os.str();
}

std::string to_string(const HighFloat& x, unsigned digits) {
  return x.str(static_cast<std::streamsize>(digits));
}

}  // namespace ffp
