#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "altlex/generators.hpp"
#include "altlex/hyperspace.hpp"
#include "altlex/json_io.hpp"
#include "altlex/resolution.hpp"

namespace altlex {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double millis = 0;  // reported on stderr only, never in the JSON report
};

struct SelftestOptions {
  std::uint64_t seed = 0;
  unsigned scale = 1;         // divide corpus sizes, for quick runs
  bool inject_parity_fault = false;
};

namespace detail {

inline std::size_t scaled(std::size_t n, unsigned scale) { return std::max<std::size_t>(1, n / scale); }

// Ordinal positions of a presentation in increasing order, tails truncated.
inline std::vector<Ordinal> walk_positions(const TransfiniteSeq& x, std::uint64_t cap) {
  std::vector<Ordinal> pos;
  Ordinal base;
  for (const auto& s : seq_canonicalize(x).segments) {
    if (const auto* f = std::get_if<FiniteSeg>(&s)) {
      for (std::size_t i = 0; i < f->values.size(); ++i)
        pos.push_back(ord_add(base, Ordinal::finite(i)));
      base = ord_add(base, Ordinal::finite(f->values.size()));
    } else {
      for (std::uint64_t n = 0; n < cap; ++n) pos.push_back(ord_add(base, Ordinal::finite(n)));
      base = ord_add(base, Ordinal::omega());
    }
  }
  return pos;
}

// Brute-force comparator: materialize values index by index in increasing
// position order and decide at the first difference by parity.
inline std::optional<AltlexResult> oracle_compare(const TransfiniteSeq& x, const TransfiniteSeq& y,
                                                  std::uint64_t cap) {
  std::vector<Ordinal> pos = walk_positions(x, cap);
  std::vector<Ordinal> py = walk_positions(y, cap);
  pos.insert(pos.end(), py.begin(), py.end());
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  Ordinal lx = seq_length(x), ly = seq_length(y);
  for (const auto& a : pos) {
    bool inx = ord_compare(a, lx) < 0, iny = ord_compare(a, ly) < 0;
    if (!inx || !iny) {
      if (inx != iny) return std::nullopt;  // diverged in shape before value
      continue;
    }
    Rat vx = seq_index(x, a), vy = seq_index(y, a);
    if (vx == vy) continue;
    AltlexResult r;
    bool less_at_value = vx < vy;
    if (ord_parity(a) == Parity::Odd) less_at_value = !less_at_value;
    r.order = less_at_value ? SeqOrdering::Less : SeqOrdering::Greater;
    r.delta = a;
    r.left_value = vx;
    r.right_value = vy;
    return r;
  }
  return AltlexResult{};  // equal on every walked position
}

inline OrderExpr small_order_expr(Rng& rng) {
  for (int tries = 0; tries < 64; ++tries) {
    OrderExpr e = gen::order_expr(rng, 3, 60);
    try {
      CompiledOrder c = compile(e);
      if (c.finite && c.points.size() >= 2 && c.points.size() <= 60) return e;
    } catch (const validation_error&) {
    }
  }
  OrderExpr chain;
  chain.kind = ExprKind::Chain;
  chain.n = 3;
  return chain;
}

}  // namespace detail

inline CriterionResult criterion_1(const SelftestOptions& opt) {
  CriterionResult r{1, "total order laws"};
  Rng rng(opt.seed * 11400714819323198485ull + 1);
  std::size_t n = detail::scaled(10000, opt.scale);
  std::vector<TransfiniteSeq> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pool.push_back(gen::universal_seq(rng));
  std::size_t bad = 0;
  for (const auto& x : pool)
    if (altlex_compare(x, x).order != SeqOrdering::Equal) ++bad;
  auto ord_of = [](SeqOrdering o) { return o == SeqOrdering::Less ? -1 : (o == SeqOrdering::Equal ? 0 : 1); };
  for (std::size_t t = 0; t < n; ++t) {
    const auto& a = pool[gen::rand_below(rng, pool.size())];
    const auto& b = pool[gen::rand_below(rng, pool.size())];
    const auto& c = pool[gen::rand_below(rng, pool.size())];
    int ab = ord_of(altlex_compare(a, b).order);
    int ba = ord_of(altlex_compare(b, a).order);
    if (ab != -ba) ++bad;  // antisymmetry
    int bc = ord_of(altlex_compare(b, c).order);
    int ac = ord_of(altlex_compare(a, c).order);
    if (ab <= 0 && bc <= 0 && ac > 0) ++bad;  // transitivity
    if (ab >= 0 && bc >= 0 && ac < 0) ++bad;
  }
  r.pass = bad == 0;
  r.detail = std::to_string(n) + " members, " + std::to_string(bad) + " violations";
  return r;
}

inline CriterionResult criterion_2(const SelftestOptions& opt) {
  CriterionResult r{2, "index-walk oracle equivalence"};
  Rng rng(opt.seed * 11400714819323198485ull + 2);
  std::size_t n = detail::scaled(10000, opt.scale);
  std::size_t checked = 0, bad = 0;
  while (checked < n) {
    auto [a, b] = gen::diverging_pair(rng);
    AltlexResult fast = altlex_compare(a, b);
    if (fast.order != SeqOrdering::Equal &&
        (!fast.delta.is_finite() ? false : fast.delta.finite_part() >= 200) )
      continue;  // outside the oracle's contract
    auto slow = detail::oracle_compare(a, b, 400);
    if (!slow) continue;
    ++checked;
    if (slow->order != fast.order) {
      ++bad;
      continue;
    }
    if (fast.order != SeqOrdering::Equal &&
        (slow->delta != fast.delta || slow->left_value != fast.left_value ||
         slow->right_value != fast.right_value))
      ++bad;
  }
  r.pass = bad == 0;
  r.detail = std::to_string(checked) + " pairs, " + std::to_string(bad) + " disagreements";
  return r;
}

inline CriterionResult criterion_3(const SelftestOptions& opt) {
  CriterionResult r{3, "combinator order preservation"};
  Rng rng(opt.seed * 11400714819323198485ull + 3);
  std::size_t n = detail::scaled(200, opt.scale);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < n; ++t) {
    OrderExpr e = detail::small_order_expr(rng);
    CompiledOrder c = compile(e);
    std::vector<TransfiniteSeq> imgs;
    for (const auto& p : c.points) imgs.push_back(c.embed(p));
    for (std::size_t i = 0; i < imgs.size() && bad == 0; ++i)
      for (std::size_t j = i + 1; j < imgs.size(); ++j)
        if (altlex_compare(imgs[i], imgs[j]).order != SeqOrdering::Less) {
          ++bad;
          break;
        }
  }
  r.pass = bad == 0;
  r.detail = std::to_string(n) + " expressions, " + std::to_string(bad) + " violating";
  return r;
}

inline CriterionResult criterion_4(const SelftestOptions&) {
  CriterionResult r{4, "worked decomposition"};
  FinFn chi;  // indicator of [0, omega) inside [0, omega]
  chi.k = 1;
  chi.rep_value = Rat(1);
  chi.top = Rat(0);
  Decomposition d = decompose(chi);
  bool ok = !d.transfinite && d.rank == Ordinal::finite(2) && d.stages.size() == 3;
  if (ok) {
    FinFn chi_top = fn_zero(1);
    chi_top.top = Rat(1);
    ok = fn_equal(d.stages[0], fn_const(1, Rat(1))) && fn_equal(d.stages[1], chi_top) &&
         fn_is_zero(d.stages[2]) &&
         fn_equal(fn_combine(d.stages[0], d.stages[1], FnOp::Sub), chi);
  }
  r.pass = ok;
  r.detail = ok ? "rank 2, stages (1, step, 0), exact reconstruction" : "stage mismatch";
  return r;
}

inline CriterionResult criterion_5(const SelftestOptions& opt) {
  CriterionResult r{5, "decomposition invariants"};
  Rng rng(opt.seed * 11400714819323198485ull + 5);
  std::size_t n = detail::scaled(100, opt.scale);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < n; ++t) {
    unsigned k = t % 2 == 0 ? 1 : 2;
    FinFn f = gen::finitary_fn(rng, k);
    Decomposition d = decompose(f);
    if (!verify_decomposition(f, d).all_pass) ++bad;
  }
  r.pass = bad == 0;
  r.detail = std::to_string(n) + " functions, " + std::to_string(bad) + " failing suites";
  return r;
}

inline CriterionResult criterion_6(const SelftestOptions& opt) {
  CriterionResult r{6, "first-differing-stage parity rule"};
  Rng rng(opt.seed * 11400714819323198485ull + 6);
  std::size_t n = detail::scaled(500, opt.scale);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < n; ++t) {
    unsigned k = t % 2 == 0 ? 1 : 2;
    auto [f0, f1] = gen::comparable_pair(rng, k);
    KlCompare kc = compare_decompositions(f0, f1);  // throws on parity violation
    bool even = kc.parity == Parity::Even;
    if (opt.inject_parity_fault) even = !even;
    FinFn d01 = fn_combine(kc.stage_high, kc.stage_low, FnOp::Sub);
    bool strictly_ordered = fn_min(d01) >= 0 && !fn_is_zero(d01);
    if (!strictly_ordered) ++bad;
    bool s0_is_low = !kc.stages_swapped;
    if (s0_is_low != even)
      throw internal_error(opt.inject_parity_fault
                               ? "parity rule violated (injected fault)"
                               : "parity rule violated: stage order disagrees with delta parity");
  }
  r.pass = bad == 0;
  r.detail = std::to_string(n) + " pairs, " + std::to_string(bad) + " unordered stage pairs";
  return r;
}

inline CriterionResult criterion_7(const SelftestOptions& opt) {
  CriterionResult r{7, "envelope laws"};
  Rng rng(opt.seed * 11400714819323198485ull + 7);
  std::size_t n = detail::scaled(500, opt.scale);
  std::size_t majorants = detail::scaled(200, opt.scale);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < n; ++t) {
    unsigned k = t % 2 == 0 ? 1 : 2;
    FinFn f = gen::finitary_fn(rng, k);
    FinFn env = usc_envelope(f);
    if (!fn_leq(f, env)) ++bad;
    if (!fn_equal(usc_envelope(env), env)) ++bad;
    if (is_usc(f) != fn_equal(env, f)) ++bad;
    for (std::size_t m = 0; m < majorants; ++m) {
      FinFn maj = usc_envelope(fn_combine(f, gen::block_fn(rng, k), FnOp::Max));
      if (!fn_leq(env, maj)) {
        ++bad;
        break;
      }
    }
  }
  r.pass = bad == 0;
  r.detail = std::to_string(n) + " functions, " + std::to_string(bad) + " law violations";
  return r;
}

inline CriterionResult criterion_8(const SelftestOptions& opt) {
  CriterionResult r{8, "usc index certificates"};
  Rng rng(opt.seed * 11400714819323198485ull + 8);
  std::size_t n = detail::scaled(1000, opt.scale);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < n; ++t) {
    unsigned k = t % 2 == 0 ? 1 : 2;
    auto [f, g] = gen::usc_strict_pair(rng, k);
    UscCertificate cert = usc_order_certificate(f, g);
    if (cert.kind != UscOrder::Certified || cert.reversed) {
      ++bad;
      continue;
    }
    if (!box_misses(f, cert.box) || box_misses(g, cert.box)) ++bad;
    Rat rf = usc_index_approx(f, 40);
    Rat rg = usc_index_approx(g, 40);
    if (rf > rg + inv_pow2(40)) ++bad;
  }
  if (usc_index_approx(fn_zero(1), 40) != 0) ++bad;
  r.pass = bad == 0;
  r.detail = std::to_string(n) + " pairs, " + std::to_string(bad) + " invalid certificates";
  return r;
}

inline CriterionResult criterion_9(const SelftestOptions& opt) {
  CriterionResult r{9, "hyperspace witnesses"};
  Rng rng(opt.seed * 11400714819323198485ull + 9);
  std::size_t n = detail::scaled(1000, opt.scale);
  std::size_t n_tail = detail::scaled(100, opt.scale);
  std::size_t bad = 0, done = 0;
  while (done < n) {
    TransfiniteSeq a = gen::finite_seq(rng), b = gen::finite_seq(rng);
    AltlexResult cmp = altlex_compare(a, b);
    if (cmp.order == SeqOrdering::Equal) continue;
    if (cmp.order == SeqOrdering::Greater) std::swap(a, b);
    if (!check_witness(a, b, witness_between(a, b)).all_pass) ++bad;
    ++done;
  }
  done = 0;
  while (done < n_tail) {
    TransfiniteSeq a = gen::universal_seq(rng), b = gen::universal_seq(rng);
    bool tailed = false;
    for (const auto& s : a.segments) tailed = tailed || std::holds_alternative<OmegaTailSeg>(s);
    if (!tailed) continue;
    AltlexResult cmp = altlex_compare(a, b);
    if (cmp.order == SeqOrdering::Equal) continue;
    if (cmp.order == SeqOrdering::Greater) std::swap(a, b);
    if (!check_witness(a, b, witness_between(a, b)).all_pass) ++bad;
    ++done;
  }
  // sampled-closure agreement for the figures
  for (std::size_t t = 0; t < detail::scaled(100, opt.scale); ++t) {
    TransfiniteSeq x = gen::universal_seq(rng);
    CompactFig fig = psi_compact(x);
    for (const Rat& v : seq_sample_values(x, 100))
      if (!fig_member(fig, v, Rat(0))) ++bad;
    for (const auto& p : fig.pieces) {
      const auto* gc = std::get_if<GChainPiece>(&p);
      if (!gc) continue;
      Rat step = gc->start - gc->limit;
      for (int i = 0; i < 30; ++i) step /= 2;  // distance to the 30th sample
      if (step > inv_pow2(20)) ++bad;
    }
  }
  r.pass = bad == 0;
  r.detail = std::to_string(n + n_tail) + " pairs, " + std::to_string(bad) + " failures";
  return r;
}

inline CriterionResult criterion_10(const SelftestOptions& opt) {
  CriterionResult r{10, "evenize parity and order"};
  Rng rng(opt.seed * 11400714819323198485ull + 10);
  std::size_t n = detail::scaled(1000, opt.scale);
  std::size_t bad = 0;
  std::vector<TransfiniteSeq> pool;
  for (std::size_t t = 0; t < n; ++t) {
    TransfiniteSeq x = gen::universal_seq(rng);
    TransfiniteSeq e = evenize(x);
    if (ord_parity(seq_length(e)) != Parity::Even) ++bad;
    pool.push_back(x);
  }
  for (std::size_t t = 0; t < n; ++t) {
    const auto& a = pool[gen::rand_below(rng, pool.size())];
    const auto& b = pool[gen::rand_below(rng, pool.size())];
    SeqOrdering before = altlex_compare(a, b).order;
    SeqOrdering after = altlex_compare(evenize(a), evenize(b)).order;
    if (before != after) ++bad;
  }
  r.pass = bad == 0;
  r.detail = std::to_string(n) + " members, " + std::to_string(bad) + " violations";
  return r;
}

inline std::vector<CriterionResult> run_criteria_1_to_10(const SelftestOptions& opt);

inline Json selftest_report_json(const std::vector<CriterionResult>& results) {
  Json arr = Json::array();
  for (const auto& c : results)
    arr.push_back(Json{{"criterion", c.number}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  bool all = true;
  for (const auto& c : results) all = all && c.pass;
  return Json{{"criteria", arr}, {"all_pass", all}};
}

inline CriterionResult criterion_11(const SelftestOptions& opt) {
  CriterionResult r{11, "deterministic reports"};
  SelftestOptions mini = opt;
  mini.seed = 7;
  mini.scale = std::max(opt.scale, 1u) * 20;
  std::string a = selftest_report_json(run_criteria_1_to_10(mini)).dump();
  std::string b = selftest_report_json(run_criteria_1_to_10(mini)).dump();
  r.pass = a == b;
  r.detail = r.pass ? "two seed-7 runs byte-identical" : "reports differ between runs";
  return r;
}

inline std::vector<CriterionResult> run_criteria_1_to_10(const SelftestOptions& opt) {
  std::vector<CriterionResult> out;
  using Fn = CriterionResult (*)(const SelftestOptions&);
  for (Fn f : {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
               criterion_7, criterion_8, criterion_9, criterion_10}) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult c = f(opt);
    c.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<CriterionResult> run_selftest(const SelftestOptions& opt) {
  std::vector<CriterionResult> out = run_criteria_1_to_10(opt);
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult c11 = criterion_11(opt);
  c11.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  out.push_back(std::move(c11));
  return out;
}

}  // namespace altlex
