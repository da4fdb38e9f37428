#include "relconv/rational.hpp"

#include <cctype>

#include "relconv/error.hpp"

namespace relconv {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw Error("malformed fraction \"" + std::string(text) + "\"");
  }
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error("zero denominator in fraction \"" + std::string(text) + "\"");
  Rational value(n, d);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str(10);
}

std::string to_string(const Complex& value) {
  if (sgn(value.im) == 0) return to_string(value.re);
  std::string im = to_string(abs(value.im)) + "i";
  if (sgn(value.re) == 0) return sgn(value.im) < 0 ? "-" + im : im;
  return to_string(value.re) + (sgn(value.im) < 0 ? "-" : "+") + im;
}

}  // namespace relconv
