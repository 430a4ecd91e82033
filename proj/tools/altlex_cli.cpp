// Batch front end: parse interchange JSON, dispatch one operation, emit a
// JSON report on stdout. Exit codes: 0 ok, 1 validation, 2 budget, 3 bug.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "altlex/json_io.hpp"
#include "altlex/selftest.hpp"

namespace {

using namespace altlex;

constexpr const char* kVersion = "1.0.0";

Json load_json(const std::string& arg) {
  // accept either a path or inline JSON
  std::string text = arg;
  if (!arg.empty() && arg[0] != '{' && arg[0] != '[') {
    std::ifstream in(arg);
    if (!in) throw validation_error("cannot open input \"" + arg + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw validation_error(std::string("bad JSON input: ") + e.what());
  }
}

TransfiniteSeq load_seq(const std::string& arg) {
  TransfiniteSeq x = seq_from_json(load_json(arg));
  seq_require_valid(x, true);
  return x;
}

FinFn load_fn(const std::string& arg) {
  FinFn f = fn_from_json(load_json(arg));
  fn_validate(f);
  return f;
}

const char* order_name(SeqOrdering o) {
  return o == SeqOrdering::Less ? "less" : (o == SeqOrdering::Equal ? "equal" : "greater");
}

const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Json cmp_json(const AltlexResult& r) {
  Json j;
  j["order"] = order_name(r.order);
  if (r.order != SeqOrdering::Equal) {
    j["delta"] = ord_to_compact_string(r.delta);
    j["parity"] = parity_name(ord_parity(r.delta));
    j["left_value"] = rat_to_json(r.left_value);
    j["right_value"] = rat_to_json(r.right_value);
  } else {
    j["delta"] = nullptr;
    j["parity"] = nullptr;
  }
  return j;
}

Json decomposition_json(const FinFn& f, const Decomposition& d) {
  Json j;
  j["rank"] = ord_to_compact_string(d.rank);
  j["transfinite"] = d.transfinite;
  Json stages = Json::array();
  for (const auto& s : d.stages) stages.push_back(fn_to_json(s));
  j["stages"] = stages;
  Json trace = Json::array();
  for (const auto& g : d.trace) trace.push_back(fn_to_json(g));
  j["trace"] = trace;
  if (d.transfinite) {
    Json os = Json::array();
    for (const auto& s : d.omega_stages) os.push_back(fn_to_json(s));
    j["omega_stages"] = os;
  }
  CheckReport rep = verify_decomposition(f, d);
  Json checks = Json::array();
  for (const auto& it : rep.items)
    checks.push_back(Json{{"name", it.name}, {"pass", it.pass}, {"detail", it.detail}});
  j["checks"] = checks;
  j["all_pass"] = rep.all_pass;
  return j;
}

Json box_json(const UscBox& b) {
  Json j;
  j["valid"] = b.valid;
  if (!b.valid) return j;
  if (b.singleton_zero) {
    j["interval"] = "{0}";
  } else {
    j["a"] = ord_to_compact_string(b.a);
    j["b"] = ord_to_compact_string(b.b);
  }
  j["c"] = rat_to_json(b.c);
  j["d"] = rat_to_json(b.d);
  return j;
}

Json witness_report_json(const WitnessReport& rep) {
  Json items = Json::array();
  for (const auto& it : rep.items)
    items.push_back(Json{{"name", it.name}, {"pass", it.pass}, {"detail", it.detail}});
  Json j;
  j["delta"] = ord_to_compact_string(rep.delta);
  j["parity"] = parity_name(rep.parity);
  j["used_top_convention"] = rep.used_top_convention;
  j["checks"] = items;
  j["all_pass"] = rep.all_pass;
  return j;
}

void emit(const Json& body, const std::string& out_path) {
  Json doc;
  doc["version"] = kVersion;
  for (const auto& [k, v] : body.items()) doc[k] = v;
  std::string text = doc.dump();
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw validation_error("cannot open output \"" + out_path + "\"");
    out << text << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alternating-lexicographic order toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand name

  std::string in_a, in_b, in_c, out_path;
  std::uint64_t seed = 0;
  unsigned budget = altlex::kDefaultStageBudget;
  unsigned precision = 40;
  bool inject_fault = false;
  app.add_option("--out", out_path, "write the report to a file instead of stdout");
  app.add_option("--seed", seed, "randomness seed for generated corpora");
  app.add_option("--budget", budget, "stage budget for decompositions");
  app.add_option("--precision", precision, "index truncation length N");

  auto* c_cmp = app.add_subcommand("cmp", "compare two sequences");
  c_cmp->add_option("a", in_a)->required();
  c_cmp->add_option("b", in_b)->required();
  auto* c_delta = app.add_subcommand("delta", "first-difference certificate for two sequences");
  c_delta->add_option("a", in_a)->required();
  c_delta->add_option("b", in_b)->required();
  auto* c_canon = app.add_subcommand("canon", "canonicalize a sequence");
  c_canon->add_option("a", in_a)->required();
  auto* c_even = app.add_subcommand("evenize", "reshape a sequence to even length parity");
  c_even->add_option("a", in_a)->required();
  auto* c_embed = app.add_subcommand("embed", "compile an order expression and verify its images");
  c_embed->add_option("expr", in_a)->required();
  c_embed->add_option("point", in_b, "optional single point to embed");
  auto* c_dec = app.add_subcommand("decompose", "resolve a function into alternating stages");
  c_dec->add_option("f", in_a)->required();
  auto* c_star = app.add_subcommand("starsum", "alternating partial sum of a decomposition");
  c_star->add_option("f", in_a)->required();
  c_star->add_option("upto", in_b, "ordinal bound as nested-array JSON")->required();
  auto* c_kl = app.add_subcommand("klcmp", "first differing stage of two comparable functions");
  c_kl->add_option("f0", in_a)->required();
  c_kl->add_option("f1", in_b)->required();
  auto* c_theta = app.add_subcommand("theta-cmp", "compare squashed resolutions");
  c_theta->add_option("f0", in_a)->required();
  c_theta->add_option("f1", in_b)->required();
  auto* c_psi = app.add_subcommand("psi", "compact figure of a sequence");
  c_psi->add_option("a", in_a)->required();
  auto* c_wit = app.add_subcommand("witness", "separating sequence for a strict pair");
  c_wit->add_option("a", in_a)->required();
  c_wit->add_option("b", in_b)->required();
  auto* c_chk = app.add_subcommand("check-witness", "verify the separation predicates");
  c_chk->add_option("a", in_a)->required();
  c_chk->add_option("b", in_b)->required();
  c_chk->add_option("w", in_c)->required();
  auto* c_chain = app.add_subcommand("verify-chain", "check a list of images is strictly increasing");
  c_chain->add_option("images", in_a)->required();
  auto* c_self = app.add_subcommand("selftest", "run the acceptance criteria corpus");
  c_self->add_flag("--inject-fault", inject_fault, "corrupt the parity rule to exercise exit 3");

  CLI11_PARSE(app, argc, argv);

  try {
    using namespace altlex;
    if (c_cmp->parsed() || c_delta->parsed()) {
      AltlexResult r = altlex_compare(load_seq(in_a), load_seq(in_b));
      emit(cmp_json(r), out_path);
    } else if (c_canon->parsed()) {
      emit(seq_to_json(seq_canonicalize(load_seq(in_a))), out_path);
    } else if (c_even->parsed()) {
      emit(seq_to_json(evenize(load_seq(in_a))), out_path);
    } else if (c_embed->parsed()) {
      OrderExpr e = expr_from_json(load_json(in_a));
      CompiledOrder c = compile(e);
      Json j;
      j["finite"] = c.finite;
      if (!in_b.empty()) {
        TransfiniteSeq img = c.embed(point_from_json(load_json(in_b)));
        j["image"] = seq_to_json(img);
      }
      if (c.finite) {
        Json pts = Json::array(), imgs = Json::array();
        std::vector<TransfiniteSeq> images;
        for (const auto& p : c.points) {
          pts.push_back(point_to_json(p));
          images.push_back(c.embed(p));
          imgs.push_back(seq_to_json(images.back()));
        }
        j["points"] = pts;
        j["images"] = imgs;
        ChainReport rep = verify_chain(images);
        j["chain_ok"] = rep.ok;
        if (!rep.ok) {
          j["violating_pair"] = Json::array({rep.i, rep.j});
          j["equal_pair"] = rep.equal_pair;
        }
      }
      emit(j, out_path);
    } else if (c_dec->parsed()) {
      FinFn f = load_fn(in_a);
      Decomposition d = decompose(f, budget);
      emit(decomposition_json(f, d), out_path);
    } else if (c_star->parsed()) {
      FinFn f = load_fn(in_a);
      Decomposition d = decompose(f, budget);
      Ordinal upto = ord_from_json(load_json(in_b));
      emit(Json{{"sum", fn_to_json(star_sum(d.stages, upto))}}, out_path);
    } else if (c_kl->parsed()) {
      KlCompare kc = compare_decompositions(load_fn(in_a), load_fn(in_b), budget);
      Json j;
      j["delta"] = ord_to_compact_string(kc.delta);
      j["parity"] = parity_name(kc.parity);
      j["stages_swapped"] = kc.stages_swapped;
      j["stage_low"] = fn_to_json(kc.stage_low);
      j["stage_high"] = fn_to_json(kc.stage_high);
      emit(j, out_path);
    } else if (c_theta->parsed()) {
      ThetaCompare tc = theta_compare(load_fn(in_a), load_fn(in_b), budget);
      Json j;
      j["order"] = order_name(tc.order);
      if (tc.order != SeqOrdering::Equal) {
        j["delta"] = ord_to_compact_string(tc.delta);
        j["parity"] = parity_name(tc.parity);
        j["stage_box_index"] = tc.stage_certificate.box_index.str();
        j["stage_box"] = box_json(tc.stage_certificate.box);
      }
      emit(j, out_path);
    } else if (c_psi->parsed()) {
      emit(fig_to_json(psi_compact(load_seq(in_a))), out_path);
    } else if (c_wit->parsed()) {
      TransfiniteSeq a = load_seq(in_a), b = load_seq(in_b);
      TransfiniteSeq w = witness_between(a, b);
      Json j;
      j["witness"] = seq_to_json(w);
      j["report"] = witness_report_json(check_witness(a, b, w));
      emit(j, out_path);
    } else if (c_chk->parsed()) {
      emit(witness_report_json(check_witness(load_seq(in_a), load_seq(in_b), load_seq(in_c))),
           out_path);
    } else if (c_chain->parsed()) {
      Json arr = load_json(in_a);
      if (!arr.is_array()) throw validation_error("verify-chain takes a JSON array of sequences");
      std::vector<TransfiniteSeq> images;
      for (const auto& s : arr) {
        images.push_back(seq_from_json(s));
        seq_require_valid(images.back(), true);
      }
      ChainReport rep = verify_chain(images);
      Json j;
      j["chain_ok"] = rep.ok;
      if (!rep.ok) {
        j["violating_pair"] = Json::array({rep.i, rep.j});
        j["equal_pair"] = rep.equal_pair;
      }
      emit(j, out_path);
    } else if (c_self->parsed()) {
      SelftestOptions opt;
      opt.seed = seed;
      opt.inject_parity_fault = inject_fault;
      std::vector<CriterionResult> results = run_selftest(opt);
      for (const auto& c : results)
        std::fprintf(stderr, "criterion %2d %-40s %s (%.0f ms)\n", c.number, c.name.c_str(),
                     c.pass ? "PASS" : "FAIL", c.millis);
      emit(selftest_report_json(results), out_path);
      for (const auto& c : results)
        if (!c.pass) return 1;
    }
    return 0;
  } catch (const altlex::budget_error& e) {
    std::fprintf(stderr, "budget error: %s\n", e.what());
    return 2;
  } catch (const altlex::internal_error& e) {
    std::fprintf(stderr, "internal invariant violation: %s\n", e.what());
    return 3;
  } catch (const altlex::validation_error& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 1;
  }
}
