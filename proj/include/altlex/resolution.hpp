#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fnspace.hpp"
#include "seq.hpp"

namespace altlex {

inline constexpr unsigned kDefaultStageBudget = 64;

// Canonical alternating resolution of f: stages f_0 >= f_1 >= ... >= f_xi = 0,
// with the companion trace g_0 = f, f_a = envelope(g_a), g_{a+1} = f_a - g_a.
struct Decomposition {
  std::vector<FinFn> stages;        // f_0 .. f_xi for the finite part
  std::vector<FinFn> trace;         // g_0 .. aligned with stages
  Ordinal rank;                     // xi
  bool transfinite = false;         // stage-omega machinery engaged
  std::vector<FinFn> omega_stages;  // f_omega .. f_(omega+j), when transfinite
  std::vector<FinFn> omega_trace;   // g_omega .. aligned
};

struct decompose_budget_error : budget_error {
  explicit decompose_budget_error(std::string msg, std::vector<FinFn> stages_,
                                  std::vector<FinFn> trace_)
      : budget_error(std::move(msg)), stages(std::move(stages_)), trace(std::move(trace_)) {}
  std::vector<FinFn> stages;
  std::vector<FinFn> trace;
};

// Stage accessor valid for every alpha <= rank (and beyond, where it is 0).
inline const FinFn& decomposition_stage(const Decomposition& d, const Ordinal& alpha) {
  if (alpha.is_finite()) {
    std::uint64_t n = alpha.finite_part();
    if (n < d.stages.size()) return d.stages[n];
    if (!d.transfinite) return d.stages.back();  // stays at the final 0
    // periodic continuation between the computed finite part and omega
    std::size_t p = d.stages.size() - 2;
    return d.stages[p + ((n - p) % 2)];
  }
  if (!d.transfinite) return d.stages.back();
  std::uint64_t j = alpha.finite_part();
  std::size_t idx = std::min<std::size_t>(j, d.omega_stages.size() - 1);
  return d.omega_stages[idx];
}

inline FinFn star_sum_step(const FinFn& s, const FinFn& stage, std::uint64_t beta) {
  return fn_combine(s, stage, beta % 2 == 0 ? FnOp::Add : FnOp::Sub, true);
}

// Generalized alternating sum of the first `upto` stages. Finite upto is
// a plain recursion; upto = omega requires the even partial sums to have
// stabilized presentationally.
inline FinFn star_sum(const std::vector<FinFn>& stages, const Ordinal& upto) {
  if (stages.empty()) throw validation_error("star_sum needs at least one stage");
  FinFn s = fn_zero(stages[0].k);
  if (upto.is_finite()) {
    std::uint64_t n = upto.finite_part();
    if (n > stages.size()) throw validation_error("star_sum bound exceeds the stage list");
    for (std::uint64_t b = 0; b < n; ++b)
      s = star_sum_step(s, stages[static_cast<std::size_t>(b)], b);
    return s;
  }
  if (upto != Ordinal::omega())
    throw validation_error("star_sum supports finite bounds and omega only");
  std::optional<FinFn> prev_even;
  for (std::uint64_t b = 0; b < stages.size(); ++b) {
    s = star_sum_step(s, stages[static_cast<std::size_t>(b)], b);
    if (b % 2 == 1) {  // s is now an even partial sum S_(b+1)
      if (prev_even && fn_equal(*prev_even, s)) return s;
      prev_even = s;
    }
  }
  throw validation_error("star_sum: even partial sums did not stabilize");
}

namespace detail {

// One successor run: extends stages/trace until f_n = f_(n+1) or the
// budget runs out. Returns rank offset when a fixpoint is found.
inline std::optional<std::uint64_t> resolution_run(std::vector<FinFn>& stages,
                                                   std::vector<FinFn>& trace, FinFn g,
                                                   unsigned budget) {
  for (unsigned n = 0; n < budget; ++n) {
    FinFn f_n = usc_envelope(g);
    if (!stages.empty() && fn_equal(stages.back(), f_n)) {
      if (!fn_is_zero(stages.back()))
        throw internal_error("resolution fixpoint is not the zero function");
      return static_cast<std::uint64_t>(stages.size()) - 1;
    }
    stages.push_back(f_n);
    trace.push_back(g);
    FinFn next = fn_combine(f_n, g, FnOp::Sub);
    if (fn_min(next) < 0)
      throw internal_error("resolution companion went negative");
    g = std::move(next);
  }
  return std::nullopt;
}

}  // namespace detail

inline Decomposition decompose(const FinFn& f, unsigned budget = kDefaultStageBudget) {
  fn_validate(f);
  Decomposition d;
  auto fix = detail::resolution_run(d.stages, d.trace, f, budget + 1);
  if (fix) {
    d.rank = Ordinal::finite(*fix);
    d.stages.resize(static_cast<std::size_t>(*fix) + 1);
    d.trace.resize(d.stages.size());
    return d;
  }
  // no finite fixpoint in budget: look for presentational stabilization of
  // the even-stage companions, whose pointwise inf is then g_omega
  std::optional<FinFn> stable;
  for (std::size_t p = 0; p + 2 < d.trace.size(); p += 2) {
    if (fn_equal(d.trace[p], d.trace[p + 2])) {
      stable = d.trace[p];
      break;
    }
  }
  if (!stable)
    throw decompose_budget_error("no fixpoint or stage-omega stabilization within budget",
                                 d.stages, d.trace);
  d.transfinite = true;
  auto fix2 = detail::resolution_run(d.omega_stages, d.omega_trace, *stable, budget + 1);
  if (!fix2)
    throw decompose_budget_error("no fixpoint within the post-omega budget", d.stages, d.trace);
  d.omega_stages.resize(static_cast<std::size_t>(*fix2) + 1);
  d.omega_trace.resize(d.omega_stages.size());
  d.rank = ord_add(Ordinal::omega(), Ordinal::finite(*fix2));
  return d;
}

struct CheckItem {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool all_pass = true;
  void add(std::string name, bool pass, std::string detail = "") {
    all_pass = all_pass && pass;
    items.push_back(CheckItem{std::move(name), pass, std::move(detail)});
  }
};

// The reconstruction identities and monotonicity laws, checked exactly.
inline CheckReport verify_decomposition(const FinFn& f, const Decomposition& d) {
  CheckReport rep;
  auto stage_lists = {&d.stages, &d.omega_stages};
  for (const auto* list : stage_lists)
    for (std::size_t i = 0; i < list->size(); ++i)
      rep.add("stage_usc", is_usc((*list)[i]));
  for (std::size_t i = 0; i + 1 < d.stages.size(); ++i)
    rep.add("stages_decreasing", fn_leq(d.stages[i + 1], d.stages[i]));
  if (d.transfinite && !d.omega_stages.empty() && !d.stages.empty())
    rep.add("stages_decreasing", fn_leq(d.omega_stages[0], d.stages.back()));
  for (std::size_t i = 0; i + 1 < d.omega_stages.size(); ++i)
    rep.add("stages_decreasing", fn_leq(d.omega_stages[i + 1], d.omega_stages[i]));
  const FinFn& last = d.transfinite ? d.omega_stages.back() : d.stages.back();
  rep.add("final_stage_zero", fn_is_zero(last));
  for (const auto* list : {&d.trace, &d.omega_trace})
    for (const auto& g : *list) rep.add("companion_nonnegative", fn_min(g) >= 0);
  // identity (1): f = sum* over beta < a, plus signed g_a, at every finite stage
  FinFn s = fn_zero(f.k);
  for (std::size_t a = 0; a < d.trace.size(); ++a) {
    const FinFn& g = d.trace[a];
    bool ok = a % 2 == 0 ? fn_equal(fn_combine(s, g, FnOp::Add), f)
                         : fn_equal(s, fn_combine(f, g, FnOp::Add));
    rep.add("partial_identity", ok, "stage " + std::to_string(a));
    s = star_sum_step(s, d.stages[a], a);
  }
  // identity (3): exact reconstruction up to the rank
  if (!d.transfinite) {
    rep.add("reconstruction", fn_equal(star_sum(d.stages, d.rank), f));
  } else {
    FinFn s_omega = star_sum(d.stages, Ordinal::omega());
    for (std::size_t j = 0; j < d.omega_stages.size(); ++j) {
      const FinFn& g = d.omega_trace[j];
      bool ok = j % 2 == 0 ? fn_equal(fn_combine(s_omega, g, FnOp::Add), f)
                           : fn_equal(s_omega, fn_combine(f, g, FnOp::Add));
      rep.add("partial_identity", ok, "stage omega+" + std::to_string(j));
      s_omega = star_sum_step(s_omega, d.omega_stages[j], j);
    }
    rep.add("reconstruction", fn_equal(s_omega, f));
  }
  return rep;
}

struct KlCompare {
  Ordinal delta;       // first stage where the decompositions differ
  Parity parity;
  FinFn stage_low;     // the pointwise smaller stage at delta
  FinFn stage_high;
  bool stages_swapped; // true when f0's stage is the larger one (odd delta)
  Decomposition d0, d1;
};

// Requires f0 strictly below f1 pointwise; locates the first differing
// stage and checks the parity rule relating stage order to delta.
inline KlCompare compare_decompositions(const FinFn& f0, const FinFn& f1,
                                        unsigned budget = kDefaultStageBudget) {
  FinFn diff = fn_combine(f1, f0, FnOp::Sub);
  if (fn_min(diff) < 0 || fn_is_zero(diff))
    throw validation_error("inputs are not strictly pointwise ordered");
  KlCompare out;
  out.d0 = decompose(f0, budget);
  out.d1 = decompose(f1, budget);
  std::optional<Ordinal> delta;
  std::size_t finite_scan = std::max(out.d0.stages.size(), out.d1.stages.size()) + 1;
  for (std::size_t n = 0; n < finite_scan && !delta; ++n) {
    Ordinal a = Ordinal::finite(n);
    if (!fn_equal(decomposition_stage(out.d0, a), decomposition_stage(out.d1, a))) delta = a;
  }
  if (!delta && (out.d0.transfinite || out.d1.transfinite)) {
    std::size_t omega_scan =
        std::max(out.d0.omega_stages.size(), out.d1.omega_stages.size()) + 1;
    for (std::size_t j = 0; j < omega_scan && !delta; ++j) {
      Ordinal a = ord_add(Ordinal::omega(), Ordinal::finite(j));
      if (!fn_equal(decomposition_stage(out.d0, a), decomposition_stage(out.d1, a))) delta = a;
    }
  }
  if (!delta)
    throw internal_error("comparable pair with identical resolutions");
  out.delta = *delta;
  out.parity = ord_parity(*delta);
  FinFn s0 = decomposition_stage(out.d0, *delta);
  FinFn s1 = decomposition_stage(out.d1, *delta);
  FinFn d01 = fn_combine(s1, s0, FnOp::Sub);
  bool s0_below = fn_min(d01) >= 0 && !fn_is_zero(d01);
  FinFn d10 = fn_combine(s0, s1, FnOp::Sub);
  bool s1_below = fn_min(d10) >= 0 && !fn_is_zero(d10);
  bool expected_s0_below = out.parity == Parity::Even;
  if (expected_s0_below && !s0_below)
    throw internal_error("parity rule violated: even stage pair not ordered upward");
  if (!expected_s0_below && !s1_below)
    throw internal_error("parity rule violated: odd stage pair not ordered downward");
  out.stages_swapped = !expected_s0_below;
  out.stage_low = out.stages_swapped ? std::move(s1) : std::move(s0);
  out.stage_high = out.stages_swapped ? std::move(s0) : std::move(s1);
  return out;
}

// ---------------------------------------------------------------------------
// USC index: basis box enumeration over [0, omega^k] x (0, M].

inline Int cantor_pair(const Int& a, const Int& b) { return (a + b) * (a + b + 1) / 2 + b; }

inline std::pair<Int, Int> cantor_unpair(const Int& n) {
  Int t = (boost::multiprecision::sqrt(Int(8) * n + 1) - 1) / 2;
  while (t * (t + 1) / 2 > n) --t;
  while ((t + 1) * (t + 2) / 2 <= n) ++t;
  Int b = n - t * (t + 1) / 2;
  return {t - b, b};
}

// Ordinal <-> code, via the coefficient tuple of omega^k .. omega^0.
inline Int encode_ordinal(const Ordinal& o, unsigned k) {
  std::vector<Int> coeff(k + 1, 0);
  for (const auto& t : o.terms()) {
    if (!t.exponent.is_finite() || t.exponent.finite_part() > k)
      throw internal_error("ordinal outside the coding range");
    coeff[static_cast<std::size_t>(t.exponent.finite_part())] = t.coeff;
  }
  Int code = coeff[k];
  for (unsigned j = k; j > 0; --j) code = cantor_pair(code, coeff[j - 1]);
  return code;
}

inline std::optional<Ordinal> decode_ordinal(const Int& code, unsigned k) {
  std::vector<Int> coeff(k + 1, 0);
  Int rem = code;
  for (unsigned j = 0; j < k; ++j) {
    auto [hi, lo] = cantor_unpair(rem);
    coeff[j] = lo;
    rem = hi;
  }
  coeff[k] = rem;
  std::vector<Ordinal::Term> terms;
  for (unsigned j = k + 1; j > 0; --j) {
    const Int& c = coeff[j - 1];
    if (c == 0) continue;
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    terms.push_back(Ordinal::Term{Ordinal::finite(j - 1), c.convert_to<std::uint64_t>()});
  }
  Ordinal o = Ordinal::from_terms(std::move(terms));
  if (o > Ordinal::omega_power(k)) return std::nullopt;
  return o;
}

// A basis box: an ordinal interval ({0} or (a, b]) crossed with a dyadic
// value interval (c, d] inside (0, M].
struct UscBox {
  bool valid = false;
  bool singleton_zero = false;
  Ordinal a, b;    // (a, b] when not the zero singleton
  Rat c, d;        // value interval (c, d]
};

inline UscBox decode_box(const Int& n, unsigned k, const Rat& M) {
  auto [i, j] = cantor_unpair(n);
  UscBox box;
  if (i == 0) {
    box.singleton_zero = true;
  } else {
    auto [ia, ib] = cantor_unpair(i - 1);
    auto a = decode_ordinal(ia, k);
    auto b = decode_ordinal(ib, k);
    if (!a || !b || *a >= *b) return box;
    box.a = *a;
    box.b = *b;
  }
  auto [qe, t] = cantor_unpair(j);
  if (qe > 62) return box;  // grids beyond 2^-62 never arise at desk scale
  unsigned q = qe.convert_to<unsigned>();
  if (t >= (Int(1) << q)) return box;
  box.c = M * Rat(t, Int(1) << q);
  box.d = M * Rat(t + 1, Int(1) << q);
  box.valid = true;
  return box;
}

inline Int encode_box(const UscBox& box, unsigned k, const Rat& M) {
  Int i = box.singleton_zero
              ? Int(0)
              : 1 + cantor_pair(encode_ordinal(box.a, k), encode_ordinal(box.b, k));
  // recover the grid parameters from c = M * t / 2^q
  Rat scaled = box.c / M;
  Int den = denominator(scaled);
  unsigned q = 0;
  while ((Int(1) << q) < den) ++q;
  Rat width = (box.d - box.c) / M;
  while (Rat(1, Int(1) << q) != width) ++q;
  Int t = numerator(scaled) * ((Int(1) << q) / den);
  return cantor_pair(i, cantor_pair(Int(q), t));
}

// True when the box misses the open subgraph {(x, r): 0 < r <= f(x)}.
inline bool box_misses(const FinFn& f, const UscBox& box) {
  if (!box.valid) return true;
  Rat sup;
  if (box.singleton_zero) {
    sup = fn_eval(f, Ordinal());
  } else {
    auto s = fn_sup_range(f, box.a, box.b);
    if (!s) return true;
    sup = *s;
  }
  return sup <= box.c;
}

// N-term truncation of r_f = 1 - sum over missed boxes of 2^(-n-1), shifted
// down by the tail bound so that the zero function maps to exactly 0.
inline Rat usc_index_approx(const FinFn& f, unsigned N, const Rat& M = Rat(1)) {
  Rat missed(0);
  for (unsigned n = 0; n < N; ++n)
    if (box_misses(f, decode_box(Int(n), f.k, M))) missed += inv_pow2(n + 1);
  return 1 - missed - inv_pow2(N);
}

enum class UscOrder { Equal, Certified, Incomparable };

struct UscCertificate {
  UscOrder kind = UscOrder::Equal;
  bool reversed = false;  // certificate is for (g, f) instead of (f, g)
  Int box_index;
  UscBox box;
  int approx_order = 0;   // Incomparable: sign of index(f) - index(g) at N=40
};

namespace detail {

// For lower <_p upper, constructs a basis box missing lower's subgraph and
// meeting upper's.
inline std::pair<Int, UscBox> usc_witness_box(const FinFn& lower, const FinFn& upper,
                                              unsigned k, const Rat& M) {
  FinFn diff = fn_combine(upper, lower, FnOp::Sub);
  std::vector<Ordinal> positions = fn_structural_positions(diff);
  std::optional<Ordinal> x0;
  for (const auto& p : positions)
    if (fn_eval(diff, p) > 0) {
      x0 = p;
      break;
    }
  if (!x0) throw internal_error("strictly ordered pair with no separating position");
  UscBox box;
  Rat sup;
  auto cls = ord_classify(*x0);
  if (cls.kind == OrdKind::Zero) {
    box.singleton_zero = true;
    sup = fn_eval(lower, Ordinal());
  } else if (cls.kind == OrdKind::Successor) {
    box.a = cls.pred;
    box.b = *x0;
    sup = fn_eval(lower, *x0);
  } else {
    // past the last structural change below x0, lower only takes values
    // recurring cofinally at x0, all at most lower(x0) by semicontinuity
    std::vector<Ordinal> low_pos = fn_structural_positions(lower);
    std::vector<Ordinal> up_pos = fn_structural_positions(upper);
    low_pos.insert(low_pos.end(), up_pos.begin(), up_pos.end());
    std::sort(low_pos.begin(), low_pos.end());
    std::optional<Ordinal> best;
    for (const auto& p : low_pos)
      if (p < *x0) best = p;
    if (!best) throw internal_error("limit point with no structural predecessor");
    box.a = *best;
    box.b = *x0;
    sup = *fn_sup_range(lower, box.a, box.b);
  }
  Rat gx = fn_eval(upper, *x0);
  if (sup >= gx) throw internal_error("witness interval fails the sup bound");
  unsigned q = 1;
  Rat c;
  while (true) {
    c = M * dyadic_ceil(sup / M, q);
    if (c < gx && c + M * inv_pow2(q) <= M) break;
    ++q;
    if (q > 4096) throw internal_error("witness grid refinement did not terminate");
  }
  box.c = c;
  box.d = c + M * inv_pow2(q);
  box.valid = true;
  return {encode_box(box, k, M), box};
}

}  // namespace detail

// Exact order certificate for USC presentations: a basis box separating
// the open subgraphs, witnessing a strict index inequality.
inline UscCertificate usc_order_certificate(const FinFn& f, const FinFn& g,
                                            const Rat& M = Rat(1)) {
  UscCertificate cert;
  if (fn_equal(f, g)) return cert;
  FinFn d_fg = fn_combine(g, f, FnOp::Sub);
  FinFn d_gf = fn_combine(f, g, FnOp::Sub);
  bool f_below = fn_min(d_fg) >= 0;
  bool g_below = fn_min(d_gf) >= 0;
  if (!f_below && !g_below) {
    cert.kind = UscOrder::Incomparable;
    Rat rf = usc_index_approx(f, 40, M);
    Rat rg = usc_index_approx(g, 40, M);
    cert.approx_order = rf < rg ? -1 : (rf == rg ? 0 : 1);
    return cert;
  }
  cert.kind = UscOrder::Certified;
  cert.reversed = !f_below;
  const FinFn& lower = f_below ? f : g;
  const FinFn& upper = f_below ? g : f;
  auto [n, box] = detail::usc_witness_box(lower, upper, f.k, M);
  cert.box_index = n;
  cert.box = box;
  return cert;
}

// ---------------------------------------------------------------------------
// Theta: squash into (0,1), resolve, and read off truncated index values.

inline Rat squash_rat(const Rat& x) {
  Rat ax = x < 0 ? -x : x;
  return Rat(1, 2) + x / (2 * (1 + ax));
}

inline FinFn fn_squash(const FinFn& f) {
  FinFn out;
  out.k = f.k;
  out.top = squash_rat(f.top);
  if (f.k == 1) {
    for (const auto& v : f.values) out.values.push_back(squash_rat(v));
    out.rep_value = squash_rat(f.rep_value);
  } else {
    for (const auto& b : f.blocks) out.blocks.push_back(fn_squash(b));
    out.rep_block.push_back(fn_squash(f.rep_block[0]));
  }
  return out;
}

struct ThetaCompare {
  SeqOrdering order = SeqOrdering::Equal;
  Ordinal delta;
  Parity parity = Parity::Even;
  UscCertificate stage_certificate;  // for the ordered stage pair at delta
};

inline ThetaCompare theta_compare(const FinFn& f0, const FinFn& f1,
                                  unsigned budget = kDefaultStageBudget) {
  FinFn s0 = fn_squash(f0);
  FinFn s1 = fn_squash(f1);
  ThetaCompare out;
  if (fn_equal(s0, s1)) return out;
  bool forward = fn_min(fn_combine(s1, s0, FnOp::Sub)) >= 0;
  bool backward = fn_min(fn_combine(s0, s1, FnOp::Sub)) >= 0;
  if (!forward && !backward)
    throw validation_error("theta inputs are not pointwise comparable");
  KlCompare kc = forward ? compare_decompositions(s0, s1, budget)
                         : compare_decompositions(s1, s0, budget);
  out.order = forward ? SeqOrdering::Less : SeqOrdering::Greater;
  out.delta = kc.delta;
  out.parity = kc.parity;
  out.stage_certificate = usc_order_certificate(kc.stage_low, kc.stage_high, Rat(1));
  return out;
}

// Truncated coordinates of Theta(f): the stage index values at precision N,
// ending with the exact 0 of the final stage.
inline TransfiniteSeq theta_sequence(const FinFn& f, unsigned N,
                                     unsigned budget = kDefaultStageBudget) {
  FinFn s = fn_squash(f);
  Decomposition d = decompose(s, budget);
  if (d.transfinite)
    throw validation_error("theta_sequence supports finite resolutions only");
  FiniteSeg seg;
  for (std::size_t a = 0; a + 1 < d.stages.size(); ++a) {
    Rat r = usc_index_approx(d.stages[a], N, Rat(1));
    if (!seg.values.empty() && r >= seg.values.back())
      throw validation_error("precision too low to separate adjacent stage indices");
    if (r <= 0) throw validation_error("precision too low to keep stage indices positive");
    seg.values.push_back(r);
  }
  seg.values.push_back(Rat(0));  // the final stage is the zero function
  TransfiniteSeq out{{Segment{std::move(seg)}}};
  seq_require_valid(out, true);
  return out;
}

}  // namespace altlex
