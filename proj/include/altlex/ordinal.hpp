#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace altlex {

inline constexpr unsigned kOrdinalDepthCap = 8;

// Countable ordinal in Cantor normal form: sum of w^e * c terms with
// strictly decreasing exponents and positive integer coefficients.
// Exponents are themselves ordinals; nesting depth is capped.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  // w^k * c for a finite exponent k.
  static Ordinal omega_power(std::uint64_t k, std::uint64_t c = 1);
  static Ordinal from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  // n where the ordinal is gamma + n with gamma zero or limit.
  std::uint64_t finite_part() const;

 private:
  std::vector<Term> terms_;
  friend Ordinal ord_add(const Ordinal&, const Ordinal&);
  friend Ordinal ord_left_subtract(const Ordinal&, const Ordinal&);
  friend struct OrdClassified;
  friend Ordinal ord_pred(const Ordinal&);
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coeff = 1;
};

inline int ord_compare(const Ordinal& a, const Ordinal& b);

inline int term_compare(const Ordinal::Term& s, const Ordinal::Term& t) {
  int c = ord_compare(s.exponent, t.exponent);
  if (c != 0) return c;
  if (s.coeff != t.coeff) return s.coeff < t.coeff ? -1 : 1;
  return 0;
}

inline int ord_compare(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    int c = term_compare(x[i], y[i]);
    if (c != 0) return c;
  }
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  return 0;
}

inline bool operator==(const Ordinal& a, const Ordinal& b) { return ord_compare(a, b) == 0; }
inline bool operator!=(const Ordinal& a, const Ordinal& b) { return ord_compare(a, b) != 0; }
inline bool operator<(const Ordinal& a, const Ordinal& b) { return ord_compare(a, b) < 0; }
inline bool operator<=(const Ordinal& a, const Ordinal& b) { return ord_compare(a, b) <= 0; }
inline bool operator>(const Ordinal& a, const Ordinal& b) { return ord_compare(a, b) > 0; }
inline bool operator>=(const Ordinal& a, const Ordinal& b) { return ord_compare(a, b) >= 0; }

inline unsigned ord_depth(const Ordinal& a) {
  unsigned d = 0;
  for (const auto& t : a.terms()) {
    if (t.exponent.is_zero()) continue;
    unsigned e = 1 + ord_depth(t.exponent);
    if (e > d) d = e;
  }
  return d;
}

inline Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal r;
  if (n > 0) r.terms_.push_back(Term{Ordinal(), n});
  return r;
}

inline Ordinal Ordinal::omega() { return omega_power(1); }

inline Ordinal Ordinal::omega_power(std::uint64_t k, std::uint64_t c) {
  Ordinal r;
  if (c > 0) r.terms_.push_back(Term{Ordinal::finite(k), c});
  return r;
}

inline Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  Ordinal r;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coeff == 0) throw validation_error("CNF coefficient must be positive");
    if (i > 0 && ord_compare(terms[i - 1].exponent, terms[i].exponent) <= 0)
      throw validation_error("CNF exponents must strictly decrease");
  }
  r.terms_ = std::move(terms);
  if (ord_depth(r) > kOrdinalDepthCap)
    throw validation_error("ordinal exceeds exponent nesting cap");
  return r;
}

inline bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

inline std::uint64_t Ordinal::finite_part() const {
  if (terms_.empty()) return 0;
  const Term& last = terms_.back();
  return last.exponent.is_zero() ? last.coeff : 0;
}

inline Ordinal::Term Term_merge(const Ordinal::Term& x, const Ordinal::Term& y) {
  return Ordinal::Term{x.exponent, x.coeff + y.coeff};
}

// Ordinal sum, non-commutative: terms of a below b's leading exponent
// are absorbed.
inline Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const Ordinal& e = b.terms_.front().exponent;
  Ordinal r;
  for (const auto& t : a.terms_) {
    if (ord_compare(t.exponent, e) > 0) r.terms_.push_back(t);
  }
  std::size_t bi = 0;
  if (!a.terms_.empty()) {
    // the last surviving-or-dropped boundary term of a may merge with b's head
    for (const auto& t : a.terms_) {
      if (ord_compare(t.exponent, e) == 0) {
        r.terms_.push_back(Term_merge(t, b.terms_.front()));
        bi = 1;
        break;
      }
    }
  }
  for (; bi < b.terms_.size(); ++bi) r.terms_.push_back(b.terms_[bi]);
  return r;
}

enum class OrdKind { Zero, Successor, Limit };

struct OrdClassified {
  OrdKind kind;
  Ordinal pred;  // meaningful for Successor only
};

inline OrdClassified ord_classify(const Ordinal& a) {
  if (a.is_zero()) return {OrdKind::Zero, Ordinal()};
  const auto& last = a.terms().back();
  if (!last.exponent.is_zero()) return {OrdKind::Limit, Ordinal()};
  std::vector<Ordinal::Term> ts = a.terms();
  if (ts.back().coeff == 1)
    ts.pop_back();
  else
    ts.back().coeff -= 1;
  return {OrdKind::Successor, Ordinal::from_terms(std::move(ts))};
}

inline Ordinal ord_pred(const Ordinal& a) {
  auto c = ord_classify(a);
  if (c.kind != OrdKind::Successor) throw internal_error("ord_pred of non-successor");
  return c.pred;
}

enum class Parity { Even, Odd };

// Parity of the finite part; limits (and zero) are Even.
inline Parity ord_parity(const Ordinal& a) {
  return a.finite_part() % 2 == 0 ? Parity::Even : Parity::Odd;
}

// Solves a + x = b for a <= b.
inline Ordinal ord_left_subtract(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  std::size_t i = 0;
  while (i < x.size() && i < y.size() && term_compare(x[i], y[i]) == 0) ++i;
  Ordinal r;
  if (i == x.size()) {
    r.terms_.assign(y.begin() + static_cast<std::ptrdiff_t>(i), y.end());
    return r;
  }
  if (i == y.size()) throw internal_error("ord_left_subtract: minuend smaller");
  int ec = ord_compare(x[i].exponent, y[i].exponent);
  if (ec == 0 && y[i].coeff > x[i].coeff) {
    r.terms_.push_back(Ordinal::Term{y[i].exponent, y[i].coeff - x[i].coeff});
  } else if (ec < 0) {
    r.terms_.push_back(y[i]);
  } else {
    throw internal_error("ord_left_subtract: minuend smaller");
  }
  r.terms_.insert(r.terms_.end(), y.begin() + static_cast<std::ptrdiff_t>(i) + 1, y.end());
  return r;
}

inline std::string ord_to_string(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) s += "+";
    first = false;
    if (t.exponent.is_zero()) {
      s += std::to_string(t.coeff);
      continue;
    }
    s += "w";
    if (!(t.exponent.is_finite() && t.exponent.finite_part() == 1))
      s += "^(" + ord_to_string(t.exponent) + ")";
    if (t.coeff != 1) s += "*" + std::to_string(t.coeff);
  }
  return s;
}

}  // namespace altlex
