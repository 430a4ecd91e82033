#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "ordinal.hpp"
#include "rational.hpp"

namespace altlex {

// One presentation segment: either an explicit finite run of values or a
// geometric omega-tail v_n = limit + (start - limit) * 2^(-n).
struct FiniteSeg {
  std::vector<Rat> values;
};

struct OmegaTailSeg {
  Rat start;
  Rat limit;
};

using Segment = std::variant<FiniteSeg, OmegaTailSeg>;

// Strictly decreasing transfinite sequence in [0,1], presented as a finite
// list of segments. "Universal" presentations additionally end with 0.
struct TransfiniteSeq {
  std::vector<Segment> segments;
};

inline Ordinal segment_type(const Segment& s) {
  if (const auto* f = std::get_if<FiniteSeg>(&s))
    return Ordinal::finite(f->values.size());
  return Ordinal::omega();
}

inline const Rat& segment_first(const Segment& s) {
  if (const auto* f = std::get_if<FiniteSeg>(&s)) return f->values.front();
  return std::get<OmegaTailSeg>(s).start;
}

inline Ordinal seq_length(const TransfiniteSeq& x) {
  Ordinal len;
  for (const auto& s : x.segments) len = ord_add(len, segment_type(s));
  return len;
}

struct ValidationResult {
  bool ok = true;
  std::string reason;
};

// universal: require the last segment to be Finite and end with 0.
inline ValidationResult seq_validate(const TransfiniteSeq& x, bool universal = true) {
  auto fail = [](std::string r) { return ValidationResult{false, std::move(r)}; };
  if (x.segments.empty()) return fail("presentation has no segments");
  Rat one(1);
  std::optional<Rat> prev;          // last generated value so far
  std::optional<Rat> prev_limit;    // set when previous segment was a tail
  for (const auto& s : x.segments) {
    if (const auto* f = std::get_if<FiniteSeg>(&s)) {
      if (f->values.empty()) return fail("empty Finite segment");
      for (const auto& v : f->values) {
        if (v < 0 || v > one) return fail("value outside [0,1]");
        if (prev_limit) {
          if (v > *prev_limit) return fail("value after an omega-tail exceeds its limit");
          prev_limit.reset();
        } else if (prev && v >= *prev) {
          return fail("values must strictly decrease");
        }
        prev = v;
      }
    } else {
      const auto& t = std::get<OmegaTailSeg>(s);
      if (t.start < 0 || t.start > one || t.limit < 0)
        return fail("tail endpoints outside [0,1]");
      if (t.limit >= t.start) return fail("tail limit must be below its start");
      if (prev_limit) {
        if (t.start > *prev_limit) return fail("value after an omega-tail exceeds its limit");
        prev_limit.reset();
      } else if (prev && t.start >= *prev) {
        return fail("values must strictly decrease");
      }
      prev = t.limit;  // tail values stay above the limit; next segment is compared to it
      prev_limit = t.limit;
    }
  }
  if (universal) {
    const auto* f = std::get_if<FiniteSeg>(&x.segments.back());
    if (!f) return fail("universal presentation must end with a Finite segment");
    if (f->values.back() != 0) return fail("universal presentation must end with 0");
  }
  return {};
}

inline void seq_require_valid(const TransfiniteSeq& x, bool universal = true) {
  auto r = seq_validate(x, universal);
  if (!r.ok) throw validation_error(r.reason);
}

// Canonical form: adjacent Finite segments merged, and any Finite value v
// directly followed by OmegaTail(s,b) with v = 2s-b absorbed into the tail
// (the tail then starts at v). Two presentations denote the same sequence
// iff their canonical forms are structurally equal.
inline TransfiniteSeq seq_canonicalize(const TransfiniteSeq& x) {
  std::vector<Segment> segs = x.segments;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
      auto* f = std::get_if<FiniteSeg>(&segs[i]);
      if (f) {
        if (auto* g = std::get_if<FiniteSeg>(&segs[i + 1])) {
          f->values.insert(f->values.end(), g->values.begin(), g->values.end());
          segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(i) + 1);
          changed = true;
          break;
        }
        auto* t = std::get_if<OmegaTailSeg>(&segs[i + 1]);
        if (t && f->values.back() == 2 * t->start - t->limit) {
          t->start = f->values.back();
          f->values.pop_back();
          if (f->values.empty()) segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
  }
  return TransfiniteSeq{std::move(segs)};
}

inline bool seq_equal(const TransfiniteSeq& x, const TransfiniteSeq& y) {
  auto cx = seq_canonicalize(x).segments;
  auto cy = seq_canonicalize(y).segments;
  if (cx.size() != cy.size()) return false;
  for (std::size_t i = 0; i < cx.size(); ++i) {
    const auto* fx = std::get_if<FiniteSeg>(&cx[i]);
    const auto* fy = std::get_if<FiniteSeg>(&cy[i]);
    if ((fx == nullptr) != (fy == nullptr)) return false;
    if (fx) {
      if (fx->values != fy->values) return false;
    } else {
      const auto& tx = std::get<OmegaTailSeg>(cx[i]);
      const auto& ty = std::get<OmegaTailSeg>(cy[i]);
      if (tx.start != ty.start || tx.limit != ty.limit) return false;
    }
  }
  return true;
}

// Value at ordinal position alpha.
inline Rat seq_index(const TransfiniteSeq& x, const Ordinal& alpha) {
  Ordinal rest = alpha;
  for (const auto& s : x.segments) {
    Ordinal t = segment_type(s);
    if (ord_compare(rest, t) < 0) {
      std::uint64_t m = rest.finite_part();
      if (const auto* f = std::get_if<FiniteSeg>(&s)) return f->values[m];
      const auto& tail = std::get<OmegaTailSeg>(s);
      return tail.limit + (tail.start - tail.limit) * inv_pow2(static_cast<unsigned>(m));
    }
    rest = ord_left_subtract(t, rest);
  }
  throw validation_error("index " + ord_to_string(alpha) + " out of range");
}

namespace detail {

// Element-at-a-time walker over a presentation. Tails are re-based as
// elements are consumed so the head element is always segment_first().
struct SeqWalker {
  std::vector<Segment> rem;
  std::size_t i = 0;

  explicit SeqWalker(const TransfiniteSeq& x) : rem(x.segments) {}
  bool done() const { return i >= rem.size(); }
  bool at_tail() const { return std::holds_alternative<OmegaTailSeg>(rem[i]); }
  const Rat& head() const { return segment_first(rem[i]); }
  const OmegaTailSeg& tail() const { return std::get<OmegaTailSeg>(rem[i]); }
  void advance_one() {
    if (auto* f = std::get_if<FiniteSeg>(&rem[i])) {
      f->values.erase(f->values.begin());
      if (f->values.empty()) ++i;
    } else {
      auto& t = std::get<OmegaTailSeg>(rem[i]);
      t.start = t.limit + (t.start - t.limit) / 2;
    }
  }
  void skip_segment() { ++i; }
};

}  // namespace detail

enum class SeqOrdering { Less, Equal, Greater };

struct AltlexResult {
  SeqOrdering order = SeqOrdering::Equal;
  Ordinal delta;       // first difference, meaningful unless Equal
  Rat left_value;      // x at delta
  Rat right_value;     // y at delta
};

// Position of the first difference, plus the two values there.
// Returns nullopt when the sequences are equal.
inline std::optional<AltlexResult> delta_first_difference(const TransfiniteSeq& x,
                                                          const TransfiniteSeq& y) {
  TransfiniteSeq cx = seq_canonicalize(x);
  TransfiniteSeq cy = seq_canonicalize(y);
  detail::SeqWalker a(cx), b(cy);
  Ordinal pos;
  int tail_guard = 0;
  while (true) {
    if (a.done() && b.done()) return std::nullopt;
    if (a.done() || b.done())
      throw internal_error("universal presentations diverged in length before differing");
    if (a.at_tail() && b.at_tail()) {
      const auto& ta = a.tail();
      const auto& tb = b.tail();
      if (ta.start == tb.start && ta.limit == tb.limit) {
        a.skip_segment();
        b.skip_segment();
        pos = ord_add(pos, Ordinal::omega());
        tail_guard = 0;
        continue;
      }
      // distinct geometric tails must differ within their first two values
      if (++tail_guard > 2) throw internal_error("distinct tails agreed too long");
    } else {
      tail_guard = 0;
    }
    Rat va = a.head();
    Rat vb = b.head();
    if (va != vb) {
      AltlexResult r;
      r.delta = pos;
      r.left_value = va;
      r.right_value = vb;
      r.order = SeqOrdering::Equal;  // caller fills the order
      return r;
    }
    a.advance_one();
    b.advance_one();
    pos = ord_add(pos, Ordinal::finite(1));
  }
}

// Alternating-lexicographic comparison: at the first difference delta,
// the usual order of the values decides when delta is even and the
// reversed order decides when delta is odd.
inline AltlexResult altlex_compare(const TransfiniteSeq& x, const TransfiniteSeq& y) {
  auto d = delta_first_difference(x, y);
  if (!d) return AltlexResult{};
  bool left_smaller_at_delta = d->left_value < d->right_value;
  bool less = (ord_parity(d->delta) == Parity::Even) ? left_smaller_at_delta
                                                     : !left_smaller_at_delta;
  d->order = less ? SeqOrdering::Less : SeqOrdering::Greater;
  return *d;
}

// a*x + b elementwise, a > 0; the image must stay inside [0,1].
inline TransfiniteSeq seq_affine(const Rat& a, const TransfiniteSeq& x, const Rat& b) {
  if (a <= 0) throw validation_error("affine scale must be positive");
  TransfiniteSeq r;
  for (const auto& s : x.segments) {
    if (const auto* f = std::get_if<FiniteSeg>(&s)) {
      FiniteSeg g;
      for (const auto& v : f->values) g.values.push_back(a * v + b);
      r.segments.emplace_back(std::move(g));
    } else {
      const auto& t = std::get<OmegaTailSeg>(s);
      r.segments.emplace_back(OmegaTailSeg{a * t.start + b, a * t.limit + b});
    }
  }
  seq_require_valid(r, false);
  return r;
}

// Concatenation; every value of x must strictly exceed every value of y.
inline TransfiniteSeq seq_concat(const TransfiniteSeq& x, const TransfiniteSeq& y) {
  if (x.segments.empty()) return y;
  if (y.segments.empty()) return x;
  const Rat& yfirst = segment_first(y.segments.front());
  if (const auto* f = std::get_if<FiniteSeg>(&x.segments.back())) {
    if (f->values.back() <= yfirst)
      throw validation_error("concat boundary: left must stay above right");
  } else {
    const auto& t = std::get<OmegaTailSeg>(x.segments.back());
    if (yfirst > t.limit)
      throw validation_error("concat boundary: right must start at or below the tail limit");
  }
  TransfiniteSeq r = x;
  r.segments.insert(r.segments.end(), y.segments.begin(), y.segments.end());
  return seq_canonicalize(r);
}

// Reshape a universal sequence so its length has even parity while
// preserving the alternating-lexicographic order of images.
inline TransfiniteSeq evenize(const TransfiniteSeq& x) {
  seq_require_valid(x, true);
  TransfiniteSeq core = seq_affine(Rat(1, 2), x, Rat(1, 2));
  Parity p = ord_parity(seq_length(x));
  TransfiniteSeq suffix;
  if (p == Parity::Odd) {
    suffix.segments.emplace_back(FiniteSeg{{Rat(0)}});
  } else {
    suffix.segments.emplace_back(FiniteSeg{{Rat(1, 4), Rat(0)}});
  }
  return seq_concat(core, suffix);
}

// First min(count, length) values, for sampling-based checks.
inline std::vector<Rat> seq_sample_values(const TransfiniteSeq& x, std::size_t count) {
  std::vector<Rat> out;
  detail::SeqWalker w(x);
  std::size_t consumed_in_tail = 0;
  while (!w.done() && out.size() < count) {
    out.push_back(w.head());
    if (w.at_tail()) {
      if (++consumed_in_tail > 64) {  // enough resolution for any sampling use here
        w.skip_segment();
        consumed_in_tail = 0;
        continue;
      }
    } else {
      consumed_in_tail = 0;
    }
    w.advance_one();
  }
  return out;
}

// Presentation of the strict initial part below position delta.
inline TransfiniteSeq seq_prefix(const TransfiniteSeq& x, const Ordinal& delta) {
  TransfiniteSeq r;
  Ordinal rest = delta;
  for (const auto& s : x.segments) {
    if (rest.is_zero()) break;
    Ordinal t = segment_type(s);
    if (ord_compare(rest, t) >= 0) {
      r.segments.push_back(s);
      rest = ord_left_subtract(t, rest);
      continue;
    }
    std::uint64_t m = rest.finite_part();
    if (m > 0) {
      FiniteSeg head;
      if (const auto* f = std::get_if<FiniteSeg>(&s)) {
        head.values.assign(f->values.begin(), f->values.begin() + static_cast<std::ptrdiff_t>(m));
      } else {
        const auto& tail = std::get<OmegaTailSeg>(s);
        for (std::uint64_t n = 0; n < m; ++n)
          head.values.push_back(tail.limit + (tail.start - tail.limit) * inv_pow2(static_cast<unsigned>(n)));
      }
      r.segments.emplace_back(std::move(head));
    }
    rest = Ordinal();
    break;
  }
  return seq_canonicalize(r);
}

}  // namespace altlex
