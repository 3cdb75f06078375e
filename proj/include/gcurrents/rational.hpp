#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "gcurrents/errors.hpp"

namespace gcurrents {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Always "p/q", including integers ("3/1"), so dumps have one shape.
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// Accepts "p/q", "p" and optional sign.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s, bool allow_sign) {
    if (!s.empty() && allow_sign && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false)) {
    throw ParseError("not a rational: '" + std::string(text) + "'");
  }
  Integer d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  std::string n(num);
  if (!n.empty() && n.front() == '+') n.erase(0, 1);
  return Rational(Integer(n), d);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace gcurrents
