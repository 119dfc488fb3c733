#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace freegraph {

using Rational = boost::multiprecision::cpp_rational;

/// Parses `p/q`, integers and decimals (optionally with an exponent) exactly.
/// Throws ParseError on malformed input.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);
std::string to_string(const Rational& r);

/// Square root when `r` is the square of a rational, otherwise nullopt.
std::optional<Rational> exact_sqrt(const Rational& r);

/// Gaussian rational: exact complex coefficient for symbolic polynomials.
struct QComplex {
  Rational re;
  Rational im;

  QComplex() = default;
  QComplex(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  QComplex(int r) : re(r) {}  // NOLINT(google-explicit-constructor)

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  friend QComplex operator+(const QComplex& a, const QComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend QComplex operator-(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
  friend QComplex operator*(const QComplex& a, const QComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  QComplex& operator+=(const QComplex& b) { re += b.re; im += b.im; return *this; }
  QComplex& operator-=(const QComplex& b) { re -= b.re; im -= b.im; return *this; }
  QComplex& operator*=(const QComplex& b) { return *this = *this * b; }
  friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
};

inline QComplex conj(const QComplex& z) { return {z.re, -z.im}; }
inline std::complex<double> to_complex(const QComplex& z) { return {to_double(z.re), to_double(z.im)}; }
std::string to_string(const QComplex& z);

}  // namespace freegraph
