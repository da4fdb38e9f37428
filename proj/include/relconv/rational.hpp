#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace relconv {

using Rational = mpq_class;

/// Parses "p/q" or "p" into a canonical rational. Throws relconv::Error on
/// malformed input or a zero denominator.
Rational parse_fraction(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& value);

/// Complex number with exact rational parts.
struct Complex {
  Rational re;
  Rational im;

  Complex() = default;
  Complex(Rational real) : re(std::move(real)) {}  // NOLINT(google-explicit-constructor)
  Complex(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
  Complex(long real) : re(real) {}  // NOLINT(google-explicit-constructor)

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const Rational& s) {
    re *= s;
    im *= s;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator*(Complex a, const Rational& s) { return a *= s; }
  friend Complex operator*(const Rational& s, Complex a) { return a *= s; }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }

/// "re", "im i" or "re+im i" with exact fractions, e.g. "1/8", "1/2-1/3i".
std::string to_string(const Complex& value);

}  // namespace relconv
