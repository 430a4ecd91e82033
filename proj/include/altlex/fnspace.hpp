#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "ordinal.hpp"
#include "rational.hpp"

namespace altlex {

// Block presentation of a rational-valued function on [0, omega^k].
// k = 1: value at finite m is prefix[m] (or rep beyond the prefix), value
// at omega is top. k >= 2: the domain splits into half-open blocks of
// order type omega^(k-1); block i is prefix[i] (or rep beyond), read at
// the offset; the top field of a non-final block is unused.
struct FinFn {
  unsigned k = 1;
  std::vector<Rat> values;       // k == 1 prefix
  Rat rep_value;                 // k == 1
  std::vector<FinFn> blocks;     // k >= 2 prefix
  std::vector<FinFn> rep_block;  // k >= 2, exactly one entry
  Rat top;
};

inline constexpr unsigned kMaxSpaceExponent = 3;

inline FinFn fn_const(unsigned k, const Rat& v) {
  FinFn f;
  f.k = k;
  f.top = v;
  if (k == 1) {
    f.rep_value = v;
  } else {
    f.rep_block.push_back(fn_const(k - 1, v));
  }
  return f;
}

inline FinFn fn_zero(unsigned k) { return fn_const(k, Rat(0)); }

inline const FinFn& fn_block(const FinFn& f, std::uint64_t i) {
  return i < f.blocks.size() ? f.blocks[i] : f.rep_block[0];
}

inline void fn_validate(const FinFn& f, bool require_nonneg = true, bool outermost = true) {
  if (f.k == 0 || f.k > kMaxSpaceExponent)
    throw validation_error("space exponent k must be between 1 and 3");
  if (f.k == 1) {
    if (!f.blocks.empty() || !f.rep_block.empty())
      throw validation_error("k=1 presentation must not carry blocks");
    for (const auto& v : f.values)
      if (require_nonneg && v < 0) throw validation_error("function values must be nonnegative");
    if (require_nonneg && f.rep_value < 0)
      throw validation_error("function values must be nonnegative");
  } else {
    if (!f.values.empty()) throw validation_error("k>=2 presentation must not carry scalar prefix");
    if (f.rep_block.size() != 1) throw validation_error("k>=2 presentation needs one rep block");
    for (const auto& b : f.blocks) {
      if (b.k != f.k - 1) throw validation_error("prefix block exponent mismatch");
      fn_validate(b, require_nonneg, false);
    }
    if (f.rep_block[0].k != f.k - 1) throw validation_error("rep block exponent mismatch");
    fn_validate(f.rep_block[0], require_nonneg, false);
  }
  if (outermost && require_nonneg && f.top < 0)
    throw validation_error("function values must be nonnegative");
}

// Splits x < omega^k into (block index, offset).
inline std::pair<std::uint64_t, Ordinal> fn_split(const FinFn& f, const Ordinal& x) {
  Ordinal blocksize = Ordinal::omega_power(f.k - 1);
  std::uint64_t i = 0;
  std::vector<Ordinal::Term> rest;
  for (const auto& t : x.terms()) {
    if (t.exponent == Ordinal::finite(f.k - 1))
      i = t.coeff;
    else if (t.exponent > Ordinal::finite(f.k - 1))
      throw validation_error("point beyond the space");
    else
      rest.push_back(t);
  }
  return {i, Ordinal::from_terms(std::move(rest))};
}

inline Rat fn_eval(const FinFn& f, const Ordinal& x) {
  Ordinal omk = Ordinal::omega_power(f.k);
  if (x > omk) throw validation_error("point beyond the space");
  if (x == omk) return f.top;
  if (f.k == 1) {
    std::uint64_t m = x.finite_part();
    return m < f.values.size() ? f.values[m] : f.rep_value;
  }
  auto [i, rho] = fn_split(f, x);
  return fn_eval(fn_block(f, i), rho);
}

// Sup over the half-open domain [0, omega^k), ignoring top.
inline Rat fn_sup_halfopen(const FinFn& f) {
  if (f.k == 1) {
    Rat s = f.rep_value;
    for (const auto& v : f.values) s = std::max(s, v);
    return s;
  }
  Rat s = fn_sup_halfopen(f.rep_block[0]);
  for (const auto& b : f.blocks) s = std::max(s, fn_sup_halfopen(b));
  return s;
}

inline Rat fn_sup(const FinFn& f) { return std::max(fn_sup_halfopen(f), f.top); }

inline Rat fn_min(const FinFn& f) {
  if (f.k == 1) {
    Rat s = std::min(f.rep_value, f.top);
    for (const auto& v : f.values) s = std::min(s, v);
    return s;
  }
  Rat s = f.top;
  auto over_halfopen = [](const FinFn& g, auto&& self) -> Rat {
    if (g.k == 1) {
      Rat m = g.rep_value;
      for (const auto& v : g.values) m = std::min(m, v);
      return m;
    }
    Rat m = self(g.rep_block[0], self);
    for (const auto& b : g.blocks) m = std::min(m, self(b, self));
    return m;
  };
  for (const auto& b : f.blocks) s = std::min(s, over_halfopen(b, over_halfopen));
  s = std::min(s, over_halfopen(f.rep_block[0], over_halfopen));
  return s;
}

// Value recurring cofinally as positions approach omega^k from below.
inline Rat fn_limsup_at_end(const FinFn& f) {
  if (f.k == 1) return f.rep_value;
  return fn_sup_halfopen(f.rep_block[0]);
}

inline bool fn_is_limit_point(const FinFn& f, const Ordinal& lambda) {
  return ord_classify(lambda).kind == OrdKind::Limit && lambda <= Ordinal::omega_power(f.k);
}

inline Rat fn_limsup_at(const FinFn& f, const Ordinal& lambda) {
  if (!fn_is_limit_point(f, lambda)) throw validation_error("limsup requires a limit point");
  if (lambda == Ordinal::omega_power(f.k)) return fn_limsup_at_end(f);
  auto [i, rho] = fn_split(f, lambda);
  if (rho.is_zero()) {
    // block boundary, approached through the tail of the previous block
    if (i == 0) throw internal_error("offset-zero limit with no previous block");
    return fn_limsup_at_end(fn_block(f, i - 1));
  }
  return fn_limsup_at(fn_block(f, i), rho);
}

namespace detail {

inline void fn_raise_at0(FinFn& f, const Rat& v) {
  if (f.k == 1) {
    if (f.values.empty()) f.values.push_back(f.rep_value);
    f.values[0] = std::max(f.values[0], v);
    return;
  }
  if (f.blocks.empty()) f.blocks.push_back(f.rep_block[0]);
  fn_raise_at0(f.blocks[0], v);
}

}  // namespace detail

// Least USC majorant: max(f, limsup from below) at limit points, f itself
// at isolated points.
inline FinFn usc_envelope(const FinFn& f) {
  FinFn out;
  out.k = f.k;
  if (f.k == 1) {
    out.values = f.values;
    out.rep_value = f.rep_value;
    out.top = std::max(f.top, f.rep_value);
    return out;
  }
  std::size_t m = f.blocks.size();
  for (std::size_t i = 0; i < m; ++i) {
    FinFn e = usc_envelope(f.blocks[i]);
    if (i > 0) detail::fn_raise_at0(e, fn_limsup_at_end(f.blocks[i - 1]));
    out.blocks.push_back(std::move(e));
  }
  // first block of the rep region sees the last prefix block's tail
  FinFn boundary = usc_envelope(f.rep_block[0]);
  if (m > 0) detail::fn_raise_at0(boundary, fn_limsup_at_end(f.blocks[m - 1]));
  out.blocks.push_back(std::move(boundary));
  FinFn steady = usc_envelope(f.rep_block[0]);
  detail::fn_raise_at0(steady, fn_limsup_at_end(f.rep_block[0]));
  out.rep_block.push_back(std::move(steady));
  out.top = std::max(f.top, fn_sup_halfopen(f.rep_block[0]));
  return out;
}

// Canonical form: trailing prefix entries equal to the rep absorbed,
// recursively; unused tops of inner blocks zeroed.
inline FinFn fn_canonical(const FinFn& f, bool outermost = true) {
  FinFn out;
  out.k = f.k;
  out.top = outermost ? f.top : Rat(0);
  if (f.k == 1) {
    out.rep_value = f.rep_value;
    out.values = f.values;
    while (!out.values.empty() && out.values.back() == out.rep_value) out.values.pop_back();
    return out;
  }
  out.rep_block.push_back(fn_canonical(f.rep_block[0], false));
  for (const auto& b : f.blocks) out.blocks.push_back(fn_canonical(b, false));
  auto same = [](const FinFn& a, const FinFn& b) {
    // both already canonical with zeroed tops; structural comparison
    auto eq = [](const FinFn& x, const FinFn& y, auto&& self) -> bool {
      if (x.k != y.k || x.top != y.top || x.values != y.values ||
          x.rep_value != y.rep_value || x.blocks.size() != y.blocks.size())
        return false;
      for (std::size_t i = 0; i < x.blocks.size(); ++i)
        if (!self(x.blocks[i], y.blocks[i], self)) return false;
      if (x.rep_block.size() != y.rep_block.size()) return false;
      return x.rep_block.empty() || self(x.rep_block[0], y.rep_block[0], self);
    };
    return eq(a, b, eq);
  };
  while (!out.blocks.empty() && same(out.blocks.back(), out.rep_block[0])) out.blocks.pop_back();
  return out;
}

inline bool fn_structural_equal(const FinFn& a, const FinFn& b) {
  if (a.k != b.k || a.top != b.top || a.values != b.values || a.rep_value != b.rep_value ||
      a.blocks.size() != b.blocks.size() || a.rep_block.size() != b.rep_block.size())
    return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    if (!fn_structural_equal(a.blocks[i], b.blocks[i])) return false;
  return a.rep_block.empty() || fn_structural_equal(a.rep_block[0], b.rep_block[0]);
}

inline bool fn_equal(const FinFn& a, const FinFn& b) {
  return fn_structural_equal(fn_canonical(a), fn_canonical(b));
}

inline bool is_usc(const FinFn& f) { return fn_equal(usc_envelope(f), f); }

enum class FnOp { Add, Sub, Max, Min };

inline Rat rat_op(const Rat& a, const Rat& b, FnOp op) {
  switch (op) {
    case FnOp::Add: return a + b;
    case FnOp::Sub: return a - b;
    case FnOp::Max: return std::max(a, b);
    case FnOp::Min: return std::min(a, b);
  }
  throw internal_error("unhandled op");
}

inline FinFn fn_combine(const FinFn& f, const FinFn& g, FnOp op, bool check_nonneg = false) {
  if (f.k != g.k) throw validation_error("combine requires matching spaces");
  FinFn out;
  out.k = f.k;
  out.top = rat_op(f.top, g.top, op);
  if (f.k == 1) {
    std::size_t n = std::max(f.values.size(), g.values.size());
    for (std::size_t i = 0; i < n; ++i) {
      const Rat& a = i < f.values.size() ? f.values[i] : f.rep_value;
      const Rat& b = i < g.values.size() ? g.values[i] : g.rep_value;
      out.values.push_back(rat_op(a, b, op));
    }
    out.rep_value = rat_op(f.rep_value, g.rep_value, op);
  } else {
    std::size_t n = std::max(f.blocks.size(), g.blocks.size());
    for (std::size_t i = 0; i < n; ++i)
      out.blocks.push_back(fn_combine(fn_block(f, i), fn_block(g, i), op));
    out.rep_block.push_back(fn_combine(f.rep_block[0], g.rep_block[0], op));
  }
  if (check_nonneg && fn_min(out) < 0)
    throw validation_error("combine produced a negative value");
  return out;
}

inline bool fn_is_zero(const FinFn& f) { return fn_equal(f, fn_zero(f.k)); }

// f <= g everywhere.
inline bool fn_leq(const FinFn& f, const FinFn& g) {
  return fn_min(fn_combine(g, f, FnOp::Sub)) >= 0;
}

// Sup of f over an ordinal interval. a_excl, when present, excludes
// everything at or below it; b_incl of omega^k includes top; absent
// b_incl means the open half [a, omega^k).
inline std::optional<Rat> fn_sup_range(const FinFn& f, const std::optional<Ordinal>& a_excl,
                                       const std::optional<Ordinal>& b_incl) {
  Ordinal omk = Ordinal::omega_power(f.k);
  if (b_incl && *b_incl == omk) {
    auto inner = fn_sup_range(f, a_excl, std::nullopt);
    return inner ? std::max(*inner, f.top) : f.top;
  }
  if (f.k == 1) {
    std::uint64_t lo = a_excl ? a_excl->finite_part() + 1 : 0;
    std::optional<Rat> s;
    auto add = [&s](const Rat& v) { s = s ? std::max(*s, v) : v; };
    if (!b_incl) {
      for (std::size_t i = lo; i < f.values.size(); ++i) add(f.values[i]);
      add(f.rep_value);  // cofinally many positions beyond any bound
      return s;
    }
    std::uint64_t hi = b_incl->finite_part();
    if (lo > hi) return std::nullopt;
    for (std::uint64_t i = lo; i <= hi && i < f.values.size(); ++i)
      add(f.values[static_cast<std::size_t>(i)]);
    if (hi >= f.values.size()) add(f.rep_value);
    return s;
  }
  std::optional<Rat> s;
  auto add = [&s](const std::optional<Rat>& v) {
    if (v) s = s ? std::max(*s, *v) : *v;
  };
  std::uint64_t ia = 0;
  std::optional<Ordinal> rho_a;
  if (a_excl) {
    auto [i, rho] = fn_split(f, *a_excl);
    ia = i;
    rho_a = rho;
  }
  std::optional<std::uint64_t> ib;
  Ordinal rho_b;
  if (b_incl) {
    auto [i, rho] = fn_split(f, *b_incl);
    ib = i;
    rho_b = rho;
  }
  if (a_excl && ib && *ib == ia) {
    return fn_sup_range(fn_block(f, ia), rho_a, rho_b);
  }
  std::uint64_t mid_from = 0;
  if (a_excl) {
    // partial head: rest of block ia above the offset
    add(fn_sup_range(fn_block(f, ia), rho_a, std::nullopt));
    mid_from = ia + 1;
  }
  std::uint64_t prefix = f.blocks.size();
  if (!ib) {
    for (std::uint64_t i = mid_from; i < prefix; ++i)
      add(fn_sup_halfopen(f.blocks[static_cast<std::size_t>(i)]));
    add(fn_sup_halfopen(f.rep_block[0]));  // infinitely many rep copies remain
    return s;
  }
  for (std::uint64_t i = mid_from; i < *ib && i < prefix; ++i)
    add(fn_sup_halfopen(f.blocks[static_cast<std::size_t>(i)]));
  if (*ib > mid_from && *ib > prefix) add(fn_sup_halfopen(f.rep_block[0]));
  if (rho_b.is_zero()) {
    if (!a_excl || *ib > ia) add(fn_eval(fn_block(f, *ib), Ordinal()));
  } else {
    add(fn_sup_range(fn_block(f, *ib), std::nullopt, rho_b));
  }
  return s;
}

// Representative positions: one per structural region, covering every
// value the presentation can take below the top, plus the top itself.
inline void fn_structural_positions(const FinFn& f, std::vector<Ordinal>& out,
                                    const Ordinal& base, bool include_top) {
  if (f.k == 1) {
    for (std::size_t m = 0; m <= f.values.size(); ++m)
      out.push_back(ord_add(base, Ordinal::finite(m)));
  } else {
    for (std::uint64_t i = 0; i <= f.blocks.size(); ++i) {
      Ordinal block_base = i == 0 ? base : ord_add(base, Ordinal::omega_power(f.k - 1, i));
      fn_structural_positions(fn_block(f, i), out, block_base, false);
    }
  }
  if (include_top) out.push_back(ord_add(base, Ordinal::omega_power(f.k)));
}

inline std::vector<Ordinal> fn_structural_positions(const FinFn& f) {
  std::vector<Ordinal> out;
  fn_structural_positions(f, out, Ordinal(), true);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace altlex
