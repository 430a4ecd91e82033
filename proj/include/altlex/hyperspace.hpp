#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "altlex/errors.hpp"
#include "altlex/ordinal.hpp"
#include "altlex/rational.hpp"
#include "altlex/seq.hpp"

namespace altlex {

// Pieces of a compact planar figure. A GChain(s,b) is the geometric point
// chain {(b + (s-b)*2^-n, 0) : n in w} together with its limit point (b, 0).
struct PointPiece {
  Rat x, y;
};
struct VSegPiece {
  Rat x, h;  // the segment {x} x [0, h]
};
struct GChainPiece {
  Rat start, limit;
};
using FigPiece = std::variant<PointPiece, VSegPiece, GChainPiece>;

struct CompactFig {
  std::vector<FigPiece> pieces;
};

// Open x-interval times a y-subinterval of [0,1]. x_hi empty means the
// inclusive marker "top": extend to 1 inclusively. The y bounds are closed
// unless the matching strict flag is set.
struct BoxQuery {
  Rat x_lo;
  std::optional<Rat> x_hi;
  Rat y_lo = 0;
  Rat y_hi = 1;
  bool y_lo_strict = false;
  bool y_hi_strict = false;
};

inline void fig_validate(const CompactFig& f) {
  auto in01 = [](const Rat& v) { return v >= 0 && v <= 1; };
  for (const auto& p : f.pieces) {
    if (const auto* pt = std::get_if<PointPiece>(&p)) {
      if (!in01(pt->x) || !in01(pt->y)) throw validation_error("figure point outside the unit square");
    } else if (const auto* vs = std::get_if<VSegPiece>(&p)) {
      if (!in01(vs->x) || vs->h < 0 || vs->h > 1)
        throw validation_error("vertical segment outside the unit square");
    } else {
      const auto& gc = std::get<GChainPiece>(p);
      if (!in01(gc.start) || !in01(gc.limit) || gc.start < gc.limit)
        throw validation_error("geometric chain needs 0 <= limit <= start <= 1");
    }
  }
}

// Figure of a universal-order sequence: points (x_alpha, 0), a chain per
// tail, and a vertical segment at every interior limit position whose value
// attains the infimum of its predecessors. In this grammar that happens
// exactly when a segment starts at the preceding tail's limit.
inline CompactFig psi_compact(const TransfiniteSeq& x) {
  seq_require_valid(x, true);
  TransfiniteSeq c = seq_canonicalize(x);
  CompactFig fig;
  const std::size_t n = c.segments.size();
  bool skip_first = false;  // the piece is already covered by a vertical segment
  for (std::size_t i = 0; i < n; ++i) {
    if (const auto* f = std::get_if<FiniteSeg>(&c.segments[i])) {
      for (std::size_t v = skip_first ? 1 : 0; v < f->values.size(); ++v)
        fig.pieces.emplace_back(PointPiece{f->values[v], Rat(0)});
      skip_first = false;
      continue;
    }
    skip_first = false;
    const auto& t = std::get<OmegaTailSeg>(c.segments[i]);
    fig.pieces.emplace_back(GChainPiece{t.start, t.limit});
    if (i + 1 >= n) continue;  // limit position is the last index
    const Rat first = segment_first(c.segments[i + 1]);
    if (first != t.limit) continue;  // infimum not attained, no segment
    // successor value right after the attained limit
    Rat next;
    if (const auto* nf = std::get_if<FiniteSeg>(&c.segments[i + 1])) {
      if (nf->values.size() >= 2) {
        next = nf->values[1];
      } else if (i + 2 < n) {
        next = segment_first(c.segments[i + 2]);
      } else {
        continue;  // the attained limit is the final 0 itself
      }
    } else {
      const auto& nt = std::get<OmegaTailSeg>(c.segments[i + 1]);
      next = nt.limit + (nt.start - nt.limit) / 2;
    }
    fig.pieces.emplace_back(VSegPiece{first, first - next});
    skip_first = true;
  }
  return fig;
}

namespace detail {

// Is r of the form 2^-n for some n >= 0?
inline bool is_inv_pow2(const Rat& r) {
  if (r <= 0 || r > 1) return false;
  if (boost::multiprecision::numerator(r) != 1) return false;
  Int d = boost::multiprecision::denominator(r);
  return (d & (d - 1)) == 0;
}

inline bool box_contains_x(const BoxQuery& b, const Rat& x) {
  if (x <= b.x_lo) return false;
  if (b.x_hi) return x < *b.x_hi;
  return x <= 1;
}

inline bool box_contains_y(const BoxQuery& b, const Rat& y) {
  if (b.y_lo_strict ? y <= b.y_lo : y < b.y_lo) return false;
  if (b.y_hi_strict ? y >= b.y_hi : y > b.y_hi) return false;
  return true;
}

}  // namespace detail

inline bool fig_member(const CompactFig& f, const Rat& px, const Rat& py) {
  for (const auto& p : f.pieces) {
    if (const auto* pt = std::get_if<PointPiece>(&p)) {
      if (px == pt->x && py == pt->y) return true;
    } else if (const auto* vs = std::get_if<VSegPiece>(&p)) {
      if (px == vs->x && py >= 0 && py <= vs->h) return true;
    } else {
      const auto& gc = std::get<GChainPiece>(p);
      if (py != 0) continue;
      if (px == gc.limit) return true;
      if (gc.start == gc.limit) continue;
      if (detail::is_inv_pow2((px - gc.limit) / (gc.start - gc.limit))) return true;
    }
  }
  return false;
}

inline bool fig_meets_box(const CompactFig& f, const BoxQuery& b) {
  for (const auto& p : f.pieces) {
    if (const auto* pt = std::get_if<PointPiece>(&p)) {
      if (detail::box_contains_x(b, pt->x) && detail::box_contains_y(b, pt->y)) return true;
    } else if (const auto* vs = std::get_if<VSegPiece>(&p)) {
      if (!detail::box_contains_x(b, vs->x)) continue;
      // [0, h] must meet the y-interval
      Rat lo = b.y_lo, hi = vs->h < b.y_hi ? vs->h : b.y_hi;
      if (lo < hi) return true;
      if (lo == hi && !b.y_lo_strict && !(b.y_hi_strict && hi == b.y_hi)) return true;
    } else {
      const auto& gc = std::get<GChainPiece>(p);
      if (!detail::box_contains_y(b, Rat(0))) continue;
      if (detail::box_contains_x(b, gc.limit)) return true;
      if (gc.start == gc.limit) continue;
      if (b.x_hi && *b.x_hi <= gc.limit) continue;  // every chain point sits at or above the limit
      // walk the chain top down; values decrease to the limit, so the first
      // one under the upper bound decides, and dropping to x_lo ends it
      Rat step = gc.start - gc.limit;
      while (true) {
        Rat v = gc.limit + step;
        if (v <= b.x_lo) break;
        if (!b.x_hi || v < *b.x_hi) return true;
        step /= 2;
      }
    }
  }
  return false;
}

struct prefix_not_presentable : validation_error {
  using validation_error::validation_error;
};

namespace detail {

// Infimum of the values strictly before position delta; nullopt encodes the
// empty-prefix convention (no constraint above, read as inclusive top).
inline std::optional<Rat> inf_before(const TransfiniteSeq& x, const Ordinal& delta) {
  if (delta.is_zero()) return std::nullopt;
  TransfiniteSeq pre = seq_prefix(x, delta);
  if (pre.segments.empty()) throw prefix_not_presentable("empty prefix at a nonzero index");
  if (const auto* f = std::get_if<FiniteSeg>(&pre.segments.back())) return f->values.back();
  return std::get<OmegaTailSeg>(pre.segments.back()).limit;
}

inline Rat value_or_zero(const TransfiniteSeq& x, const Ordinal& alpha) {
  if (ord_compare(alpha, seq_length(x)) >= 0) return Rat(0);
  return seq_index(x, alpha);
}

}  // namespace detail

// Separating sequence for a strict pair: shared prefix up to the deciding
// index, then the midpoint of the interval the order leaves open, then 0.
inline TransfiniteSeq witness_between(const TransfiniteSeq& x, const TransfiniteSeq& y) {
  AltlexResult r = altlex_compare(x, y);
  if (r.order != SeqOrdering::Less) throw validation_error("witness requires a strict pair, left below right");
  const Ordinal& delta = r.delta;
  Ordinal succ = ord_add(delta, Ordinal::finite(1));
  Rat w;
  TransfiniteSeq prefix;
  if (ord_parity(delta) == Parity::Even) {
    Rat lo = r.left_value;  // x at delta
    Rat yn = detail::value_or_zero(y, succ);
    if (yn > lo) lo = yn;
    w = midpoint(lo, r.right_value);
    prefix = seq_prefix(x, delta);
  } else {
    Rat lo = r.right_value;  // y at delta
    Rat xn = detail::value_or_zero(x, succ);
    if (xn > lo) lo = xn;
    w = midpoint(lo, r.left_value);
    prefix = seq_prefix(y, delta);
  }
  TransfiniteSeq tailpart;
  tailpart.segments.emplace_back(w > 0 ? FiniteSeg{{w, Rat(0)}} : FiniteSeg{{Rat(0)}});
  TransfiniteSeq out = prefix.segments.empty() ? tailpart : seq_concat(prefix, tailpart);
  seq_require_valid(out, true);
  return out;
}

struct WitnessItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct WitnessReport {
  std::vector<WitnessItem> items;
  bool all_pass = true;
  bool used_top_convention = false;  // empty-prefix infimum read as inclusive 1
  Ordinal delta;
  Parity parity = Parity::Even;

  void add(std::string name, bool pass, std::string detail = "") {
    all_pass = all_pass && pass;
    items.push_back({std::move(name), pass, std::move(detail)});
  }
};

// Check the separation predicates for a claimed witness between x and y.
inline WitnessReport check_witness(const TransfiniteSeq& x, const TransfiniteSeq& y,
                                   const TransfiniteSeq& w) {
  WitnessReport rep;
  AltlexResult r = altlex_compare(x, y);
  rep.add("pair strictly ordered", r.order == SeqOrdering::Less);
  if (r.order != SeqOrdering::Less) return rep;
  const Ordinal& delta = r.delta;
  rep.delta = delta;
  rep.parity = ord_parity(delta);
  Ordinal succ = ord_add(delta, Ordinal::finite(1));

  bool prefix_ok = seq_equal(seq_prefix(w, delta), seq_prefix(x, delta));
  rep.add("prefix agreement below delta", prefix_ok);
  bool has_wd = ord_compare(delta, seq_length(w)) < 0;
  rep.add("witness defined at delta", has_wd);
  if (!prefix_ok || !has_wd) return rep;
  Rat wd = seq_index(w, delta);

  CompactFig fw = psi_compact(w);
  if (rep.parity == Parity::Even) {
    Rat xd = r.left_value, yd = r.right_value;
    Rat yn = detail::value_or_zero(y, succ);
    rep.add("x_delta < w_delta", xd < wd, format_rat(xd) + " vs " + format_rat(wd));
    rep.add("y_succ < w_delta", yn < wd, format_rat(yn) + " vs " + format_rat(wd));
    rep.add("w_delta < y_delta", wd < yd, format_rat(wd) + " vs " + format_rat(yd));
    rep.add("figure meets (y_succ, y_delta) x [0,1]",
            fig_meets_box(fw, BoxQuery{yn, yd}));
    std::optional<Rat> inf = detail::inf_before(x, delta);
    rep.used_top_convention = !inf.has_value();
    rep.add("figure meets (x_delta, inf-prefix) x [0,1]",
            fig_meets_box(fw, BoxQuery{xd, inf}),
            inf ? format_rat(*inf) : std::string("top"));
  } else {
    Rat xd = r.left_value, yd = r.right_value;
    Rat xn = detail::value_or_zero(x, succ);
    Ordinal pred = ord_pred(delta);
    Rat yp = seq_index(y, pred);
    rep.add("y_delta < w_delta", yd < wd, format_rat(yd) + " vs " + format_rat(wd));
    rep.add("x_succ < w_delta", xn < wd, format_rat(xn) + " vs " + format_rat(wd));
    rep.add("w_delta < x_delta", wd < xd, format_rat(wd) + " vs " + format_rat(xd));
    rep.add("figure meets (y_delta, y_pred) x [0,1]",
            fig_meets_box(fw, BoxQuery{yd, yp}));
    rep.add("figure meets (x_succ, x_delta) x [0,1]",
            fig_meets_box(fw, BoxQuery{xn, xd}));
  }
  return rep;
}

namespace detail {

// Finite sample of a figure, each figure point within eps of a sample.
inline std::vector<std::pair<Rat, Rat>> fig_sample(const CompactFig& f, const Rat& eps) {
  std::vector<std::pair<Rat, Rat>> pts;
  for (const auto& p : f.pieces) {
    if (const auto* pt = std::get_if<PointPiece>(&p)) {
      pts.emplace_back(pt->x, pt->y);
    } else if (const auto* vs = std::get_if<VSegPiece>(&p)) {
      Rat y = 0;
      while (y < vs->h) {
        pts.emplace_back(vs->x, y);
        y += eps;
      }
      pts.emplace_back(vs->x, vs->h);
    } else {
      const auto& gc = std::get<GChainPiece>(p);
      Rat step = gc.start - gc.limit;
      while (step > eps) {
        pts.emplace_back(gc.limit + step, Rat(0));
        step /= 2;
      }
      if (gc.start > gc.limit) pts.emplace_back(gc.limit + step, Rat(0));
      pts.emplace_back(gc.limit, Rat(0));
    }
  }
  return pts;
}

inline Rat dist2(const std::pair<Rat, Rat>& a, const std::pair<Rat, Rat>& b) {
  Rat dx = a.first - b.first, dy = a.second - b.second;
  return dx * dx + dy * dy;
}

inline Rat directed_max_min2(const std::vector<std::pair<Rat, Rat>>& a,
                             const std::vector<std::pair<Rat, Rat>>& b) {
  Rat best = 0;
  for (const auto& pa : a) {
    std::optional<Rat> mn;
    for (const auto& pb : b) {
      Rat d = dist2(pa, pb);
      if (!mn || d < *mn) mn = d;
      if (*mn == 0) break;
    }
    if (mn && *mn > best) best = *mn;
  }
  return best;
}

}  // namespace detail

// Hausdorff distance up to eps, as a dyadic rational. Each figure is covered
// by a finite eps/3 net and the square-root rounding spends the rest.
inline Rat hausdorff_distance_approx(const CompactFig& f, const CompactFig& g, const Rat& eps) {
  if (eps <= 0) throw validation_error("hausdorff approximation needs a positive tolerance");
  if (f.pieces.empty() || g.pieces.empty())
    throw validation_error("hausdorff distance needs nonempty figures");
  unsigned q = 2;
  while (inv_pow2(q) * 3 > eps) ++q;
  Rat net = inv_pow2(q);
  auto pa = detail::fig_sample(f, net);
  auto pb = detail::fig_sample(g, net);
  Rat m2 = detail::directed_max_min2(pa, pb);
  Rat n2 = detail::directed_max_min2(pb, pa);
  if (n2 > m2) m2 = n2;
  return dyadic_sqrt(m2, q);
}

}  // namespace altlex
