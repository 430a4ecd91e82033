#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace altlex {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Text form is "p/q" or "p", optionally negative.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw validation_error("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den <= 0) throw validation_error("rational denominator must be positive: " + s);
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw validation_error("malformed rational literal: " + s);
  }
}

inline std::string format_rat(const Rat& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

inline Rat midpoint(const Rat& a, const Rat& b) { return (a + b) / 2; }

// 2^(-n) as an exact rational.
inline Rat inv_pow2(unsigned n) { return Rat(Int(1), Int(1) << n); }

// Smallest multiple of 2^(-q) that is >= x.
inline Rat dyadic_ceil(const Rat& x, unsigned q) {
  Int scale = Int(1) << q;
  Int num = numerator(x) * scale;
  Int den = denominator(x);
  Int t = num / den;
  if (t * den < num) ++t;
  return Rat(t, scale);
}

// Dyadic approximation of sqrt(x) with error below 2^(-p), x >= 0.
inline Rat dyadic_sqrt(const Rat& x, unsigned p) {
  if (x < 0) throw internal_error("dyadic_sqrt of negative value");
  Int scale = Int(1) << p;
  Int n = (numerator(x) * scale * scale) / denominator(x);
  Int r = boost::multiprecision::sqrt(n);
  return Rat(r, scale);
}

}  // namespace altlex
