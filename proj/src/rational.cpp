#include "freegraph/rational.hpp"

#include "freegraph/error.hpp"

#include <algorithm>
#include <cctype>

namespace freegraph {

namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// cpp_int reads a leading 0 as an octal prefix.
cpp_int decimal_int(std::string_view digits) {
  digits.remove_prefix(std::min(digits.find_first_not_of('0'), digits.size()));
  return digits.empty() ? cpp_int(0) : cpp_int(std::string(digits));
}

cpp_int pow10(long long e) {
  cpp_int r = 1;
  for (long long i = 0; i < e; ++i) r *= 10;
  return r;
}

[[noreturn]] void bad(std::string_view text) {
  throw ParseError("invalid number '" + std::string(text) + "'", 0);
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) bad(text);
    exponent = std::stoll(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) bad(text);
  if (!int_part.empty() && !all_digits(int_part)) bad(text);
  if (!frac_part.empty() && !all_digits(frac_part)) bad(text);

  std::string digits = std::string(int_part) + std::string(frac_part);
  const cpp_int numerator = decimal_int(digits);
  exponent -= static_cast<long long>(frac_part.size());
  Rational r = exponent >= 0 ? Rational(numerator * pow10(exponent))
                             : Rational(numerator, pow10(-exponent));
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
      negative = num.front() == '-';
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) bad(text);
    const cpp_int d = decimal_int(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
    Rational r(decimal_int(num), d);
    return negative ? Rational(-r) : r;
  }
  return parse_decimal(text);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string(const QComplex& z) {
  if (z.im == 0) return to_string(z.re);
  return "(" + to_string(z.re) + "," + to_string(z.im) + ")";
}

std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  const cpp_int n = numerator(r);
  const cpp_int d = denominator(r);
  cpp_int sn = boost::multiprecision::sqrt(n);
  cpp_int sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

}  // namespace freegraph
