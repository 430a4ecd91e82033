#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "altlex/combinators.hpp"
#include "altlex/fnspace.hpp"
#include "altlex/resolution.hpp"
#include "altlex/seq.hpp"

namespace altlex {

using Rng = std::mt19937_64;

namespace gen {

// Uniform dyadic in [0, 1) with the given denominator exponent.
inline Rat rand_dyadic(Rng& rng, unsigned pow = 10) {
  std::uniform_int_distribution<std::uint64_t> d(0, (std::uint64_t(1) << pow) - 1);
  return Rat(Int(d(rng)), Int(1) << pow);
}

inline Rat rand_in(Rng& rng, const Rat& lo, const Rat& hi, unsigned pow = 10) {
  return lo + (hi - lo) * rand_dyadic(rng, pow);
}

inline std::uint64_t rand_below(Rng& rng, std::uint64_t n) {
  std::uniform_int_distribution<std::uint64_t> d(0, n - 1);
  return d(rng);
}

// Strictly decreasing run of count values inside (lo, hi], largest first.
inline std::vector<Rat> descending_run(Rng& rng, std::size_t count, const Rat& lo, const Rat& hi) {
  std::vector<Rat> vals;
  Rat cur = hi;
  for (std::size_t i = 0; i < count; ++i) {
    Rat next = rand_in(rng, lo, cur, 12);
    if (next >= cur) next = midpoint(lo, cur);
    if (next <= lo) next = midpoint(lo, cur);
    vals.push_back(next);
    cur = next;
  }
  return vals;
}

// Random universal-order member with up to two tails and a short finite part,
// so lengths range over w*j + m with j <= 2, m <= 6.
inline TransfiniteSeq universal_seq(Rng& rng) {
  std::size_t tails = rand_below(rng, 3);
  TransfiniteSeq x;
  Rat hi(1);
  bool hi_inclusive = true;
  for (std::size_t t = 0; t < tails && hi > Rat(1, 64); ++t) {
    if (rand_below(rng, 2) == 0) {
      std::size_t m = rand_below(rng, 3);
      std::vector<Rat> run = descending_run(rng, m, hi / 2, hi_inclusive ? hi : midpoint(hi / 2, hi));
      if (!run.empty()) {
        x.segments.emplace_back(FiniteSeg{run});
        hi = run.back();
        hi_inclusive = false;
      }
    }
    Rat start = hi_inclusive ? hi : rand_in(rng, hi / 2, hi, 8);
    if (start <= 0) break;
    Rat limit = rand_in(rng, Rat(0), start / 2, 8);
    x.segments.emplace_back(OmegaTailSeg{start, limit});
    hi = limit;
    hi_inclusive = true;
  }
  std::size_t m = rand_below(rng, 6);
  std::vector<Rat> fin;
  if (m > 0 && hi > 0) fin = descending_run(rng, m, Rat(0), hi_inclusive ? hi : midpoint(Rat(0), hi));
  fin.push_back(Rat(0));
  if (!fin.empty() && !hi_inclusive && !x.segments.empty() && fin.front() > hi)
    fin.front() = midpoint(Rat(0), hi);
  x.segments.emplace_back(FiniteSeg{std::move(fin)});
  return seq_canonicalize(x);
}

// Strictly decreasing finite member of length <= max_len ending in 0.
inline TransfiniteSeq finite_seq(Rng& rng, std::size_t max_len = 6) {
  std::size_t n = 1 + rand_below(rng, max_len);
  std::vector<Rat> vals = descending_run(rng, n - 1, Rat(0), Rat(1));
  vals.push_back(Rat(0));
  TransfiniteSeq x;
  x.segments.emplace_back(FiniteSeg{std::move(vals)});
  return x;
}

// Pair sharing a random prefix and then diverging, so the deciding index is
// small and the index-walk oracle terminates quickly.
inline std::pair<TransfiniteSeq, TransfiniteSeq> diverging_pair(Rng& rng) {
  TransfiniteSeq base = universal_seq(rng);
  TransfiniteSeq b = universal_seq(rng);
  if (rand_below(rng, 3) == 0) return {base, b};  // unrelated pair
  // splice: keep a prefix of base and replace the continuation
  Ordinal len = seq_length(base);
  std::uint64_t cut = rand_below(rng, 6);
  Ordinal at = Ordinal::finite(cut);
  if (ord_compare(at, len) >= 0) return {base, b};
  TransfiniteSeq pre = seq_prefix(base, at);
  Rat bound = cut == 0 ? Rat(1) : seq_index(base, Ordinal::finite(cut - 1));
  if (bound == 0) return {base, b};
  TransfiniteSeq cont1 = seq_affine(bound * Rat(1, 2), finite_seq(rng), Rat(0));
  TransfiniteSeq a2 = pre.segments.empty() ? cont1 : seq_concat(pre, cont1);
  return {base, a2};
}

// Indicator-style building block on [0, w^k].
inline FinFn block_fn(Rng& rng, unsigned k) {
  if (k == 1) {
    FinFn f;
    f.k = 1;
    std::size_t m = rand_below(rng, 5);
    for (std::size_t i = 0; i < m; ++i) f.values.push_back(Rat(Int(rand_below(rng, 3)), 2));
    f.rep_value = Rat(Int(rand_below(rng, 3)), 2);
    f.top = Rat(Int(rand_below(rng, 3)), 2);
    return f;
  }
  FinFn f;
  f.k = k;
  std::size_t m = rand_below(rng, 3);
  for (std::size_t i = 0; i < m; ++i) f.blocks.push_back(block_fn(rng, k - 1));
  f.rep_block.push_back(block_fn(rng, k - 1));
  f.top = Rat(Int(rand_below(rng, 3)), 2);
  return f;
}

// Random nonnegative function built from a few pointwise combinations, the
// difference-hierarchy raw material for decompositions.
inline FinFn finitary_fn(Rng& rng, unsigned k) {
  FinFn f = block_fn(rng, k);
  std::size_t ops = rand_below(rng, 3);
  for (std::size_t i = 0; i < ops; ++i) {
    FinFn g = block_fn(rng, k);
    switch (rand_below(rng, 4)) {
      case 0:
        f = fn_combine(f, g, FnOp::Add);
        break;
      case 1:
        f = fn_combine(f, g, FnOp::Max);
        break;
      case 2:
        f = fn_combine(f, g, FnOp::Min);
        break;
      default:
        // truncated difference keeps the result nonnegative
        f = fn_combine(fn_combine(f, g, FnOp::Sub), fn_zero(k), FnOp::Max);
        break;
    }
  }
  return fn_canonical(f);
}

inline FinFn usc_fn(Rng& rng, unsigned k) { return usc_envelope(finitary_fn(rng, k)); }

// f and f + h with h nonnegative and not identically zero.
inline std::pair<FinFn, FinFn> comparable_pair(Rng& rng, unsigned k) {
  FinFn f = finitary_fn(rng, k);
  FinFn h = finitary_fn(rng, k);
  while (fn_is_zero(h)) h = block_fn(rng, k);
  if (fn_is_zero(h)) h = fn_const(k, Rat(1, 2));
  return {f, fn_combine(f, h, FnOp::Add)};
}

// USC pair bounded by 1, with f <= g everywhere and strictly below somewhere.
inline std::pair<FinFn, FinFn> usc_strict_pair(Rng& rng, unsigned k) {
  FinFn one = fn_const(k, Rat(1));
  FinFn f = usc_envelope(fn_combine(usc_fn(rng, k), one, FnOp::Min));
  if (fn_equal(f, one)) f = fn_const(k, Rat(1, 2));  // leave headroom above f
  while (true) {
    FinFn h = block_fn(rng, k);
    if (fn_is_zero(h)) continue;
    FinFn g = usc_envelope(fn_combine(fn_combine(f, h, FnOp::Add), one, FnOp::Min));
    if (!fn_equal(f, g)) return {f, g};
  }
}

// Random labeled tree with strictly decreasing labels along branches.
inline TreeNode rand_tree(Rng& rng, const Rat& lo, const Rat& hi, unsigned depth) {
  TreeNode t;
  t.label = rand_in(rng, lo, hi, 10);
  if (t.label <= lo || t.label >= hi) t.label = midpoint(lo, hi);
  if (depth == 0 || rand_below(rng, 3) == 0) return t;
  std::size_t kids = 1 + rand_below(rng, 2);
  for (std::size_t i = 0; i < kids; ++i) t.children.push_back(rand_tree(rng, lo, t.label, depth - 1));
  return t;
}

// Finite OrderExpr with a bounded point count, nesting Product, Glue,
// Duplicate and PartitionTree up to the given depth.
inline OrderExpr order_expr(Rng& rng, unsigned depth, std::size_t max_points = 60) {
  OrderExpr e;
  if (depth == 0 || max_points <= 2) {
    e.kind = ExprKind::Chain;
    e.n = 1 + rand_below(rng, std::min<std::uint64_t>(4, max_points));
    return e;
  }
  switch (rand_below(rng, 5)) {
    case 0: {
      e.kind = ExprKind::Chain;
      e.n = 1 + rand_below(rng, std::min<std::uint64_t>(5, max_points));
      break;
    }
    case 1: {
      e.kind = ExprKind::Product;
      std::size_t nf = 2 + rand_below(rng, 2);
      for (std::size_t i = 0; i < nf; ++i)
        e.children.push_back(order_expr(rng, depth - 1, std::max<std::size_t>(2, max_points / (3 * nf))));
      break;
    }
    case 2: {
      e.kind = ExprKind::Glue;
      OrderExpr base = order_expr(rng, 0, 3);  // small finite base
      std::size_t pts = compile(base).points.size();
      e.children.push_back(base);
      for (std::size_t i = 0; i < pts; ++i)
        e.children.push_back(order_expr(rng, depth - 1, std::max<std::size_t>(2, max_points / (2 * pts))));
      break;
    }
    case 3: {
      e.kind = ExprKind::Duplicate;
      e.children.push_back(order_expr(rng, depth - 1, max_points / 2));
      break;
    }
    default: {
      e.kind = ExprKind::Tree;
      e.tree.push_back(rand_tree(rng, Rat(0), Rat(1), std::min(depth, 3u)));
      break;
    }
  }
  return e;
}

}  // namespace gen
}  // namespace altlex
