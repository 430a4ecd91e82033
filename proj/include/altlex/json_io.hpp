#pragma once

#include <string>

#include <json.hpp>

#include "altlex/combinators.hpp"
#include "altlex/errors.hpp"
#include "altlex/fnspace.hpp"
#include "altlex/hyperspace.hpp"
#include "altlex/ordinal.hpp"
#include "altlex/rational.hpp"
#include "altlex/seq.hpp"

namespace altlex {

// Insertion-ordered so emitted documents keep the documented key layout.
using Json = nlohmann::ordered_json;

inline Json rat_to_json(const Rat& r) { return format_rat(r); }

inline Rat rat_from_json(const Json& j) {
  if (!j.is_string()) throw validation_error("rational must be a \"p/q\" string");
  return parse_rat(j.get<std::string>());
}

// Ordinals travel as nested arrays of [exponent, coefficient] pairs; the
// zero ordinal is []. Reports embed the compact dump as a string.
inline Json ord_to_json(const Ordinal& a) {
  Json terms = Json::array();
  for (const auto& t : a.terms()) terms.push_back(Json::array({ord_to_json(t.exponent), t.coeff}));
  return terms;
}

inline Ordinal ord_from_json(const Json& j) {
  if (!j.is_array()) throw validation_error("ordinal must be an array of [exponent, coeff] pairs");
  std::vector<Ordinal::Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[1].is_number_unsigned())
      throw validation_error("ordinal term must be [exponent, coeff]");
    terms.push_back({ord_from_json(t[0]), t[1].get<std::uint64_t>()});
  }
  return Ordinal::from_terms(std::move(terms));
}

inline std::string ord_to_compact_string(const Ordinal& a) { return ord_to_json(a).dump(); }

inline Ordinal ord_from_string(const std::string& s) {
  Json j;
  try {
    j = Json::parse(s);
  } catch (const Json::parse_error& e) {
    throw validation_error(std::string("bad ordinal literal: ") + e.what());
  }
  return ord_from_json(j);
}

inline Json seq_to_json(const TransfiniteSeq& x) {
  Json segs = Json::array();
  for (const auto& s : x.segments) {
    if (const auto* f = std::get_if<FiniteSeg>(&s)) {
      Json vals = Json::array();
      for (const auto& v : f->values) vals.push_back(rat_to_json(v));
      segs.push_back(Json{{"finite", vals}});
    } else {
      const auto& t = std::get<OmegaTailSeg>(s);
      segs.push_back(Json{{"tail", Json{{"start", rat_to_json(t.start)}, {"limit", rat_to_json(t.limit)}}}});
    }
  }
  return Json{{"segments", segs}};
}

inline TransfiniteSeq seq_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("segments") || !j["segments"].is_array())
    throw validation_error("sequence document needs a \"segments\" array");
  TransfiniteSeq x;
  for (const auto& s : j["segments"]) {
    if (s.contains("finite")) {
      FiniteSeg f;
      for (const auto& v : s["finite"]) f.values.push_back(rat_from_json(v));
      x.segments.emplace_back(std::move(f));
    } else if (s.contains("tail")) {
      const auto& t = s["tail"];
      x.segments.emplace_back(OmegaTailSeg{rat_from_json(t.at("start")), rat_from_json(t.at("limit"))});
    } else {
      throw validation_error("segment must be \"finite\" or \"tail\"");
    }
  }
  return x;
}

inline Json fn_to_json(const FinFn& f) {
  Json j;
  j["k"] = f.k;
  Json prefix = Json::array();
  if (f.k == 1) {
    for (const auto& v : f.values) prefix.push_back(rat_to_json(v));
    j["prefix"] = prefix;
    j["rep"] = rat_to_json(f.rep_value);
  } else {
    for (const auto& b : f.blocks) prefix.push_back(fn_to_json(b));
    j["prefix"] = prefix;
    j["rep"] = fn_to_json(f.rep_block.at(0));
  }
  j["top"] = rat_to_json(f.top);
  return j;
}

inline FinFn fn_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("k")) throw validation_error("function document needs \"k\"");
  FinFn f;
  f.k = j["k"].get<unsigned>();
  const Json& prefix = j.at("prefix");
  if (f.k == 1) {
    for (const auto& v : prefix) f.values.push_back(rat_from_json(v));
    f.rep_value = rat_from_json(j.at("rep"));
  } else {
    for (const auto& b : prefix) f.blocks.push_back(fn_from_json(b));
    f.rep_block.push_back(fn_from_json(j.at("rep")));
  }
  f.top = rat_from_json(j.at("top"));
  return f;
}

inline Json tree_to_json(const TreeNode& t) {
  Json j;
  j["label"] = rat_to_json(t.label);
  Json kids = Json::array();
  for (const auto& c : t.children) kids.push_back(tree_to_json(c));
  j["children"] = kids;
  return j;
}

inline TreeNode tree_from_json(const Json& j) {
  TreeNode t;
  t.label = rat_from_json(j.at("label"));
  if (j.contains("children"))
    for (const auto& c : j["children"]) t.children.push_back(tree_from_json(c));
  return t;
}

inline Json expr_to_json(const OrderExpr& e) {
  switch (e.kind) {
    case ExprKind::Real: {
      Json body = Json::object();
      if (!e.samples.empty()) {
        Json s = Json::array();
        for (const auto& v : e.samples) s.push_back(rat_to_json(v));
        body["samples"] = s;
      }
      return Json{{"real", body}};
    }
    case ExprKind::Chain:
      return Json{{"chain", Json{{"n", e.n}}}};
    case ExprKind::Product: {
      Json body;
      Json factors = Json::array();
      for (const auto& c : e.children) factors.push_back(expr_to_json(c));
      body["factors"] = factors;
      if (!e.anchors.empty()) {
        Json a = Json::array();
        for (const auto& v : e.anchors) a.push_back(rat_to_json(v));
        body["anchors"] = a;
      }
      if (e.omega_repeat) body["omega"] = true;
      return Json{{"product", body}};
    }
    case ExprKind::Glue: {
      Json body;
      body["base"] = expr_to_json(e.children.at(0));
      Json fibers = Json::array();
      for (std::size_t i = 1; i < e.children.size(); ++i) fibers.push_back(expr_to_json(e.children[i]));
      body["fibers"] = fibers;
      return Json{{"glue", body}};
    }
    case ExprKind::Duplicate:
      return Json{{"duplicate", Json{{"inner", expr_to_json(e.children.at(0))}}}};
    case ExprKind::Tree:
      return Json{{"tree", tree_to_json(e.tree.at(0))}};
  }
  throw internal_error("unhandled expression kind");
}

inline OrderExpr expr_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) throw validation_error("expression must be a single tagged object");
  OrderExpr e;
  const std::string tag = j.begin().key();
  const Json& body = j.begin().value();
  if (tag == "real") {
    e.kind = ExprKind::Real;
    if (body.contains("samples"))
      for (const auto& v : body["samples"]) e.samples.push_back(rat_from_json(v));
  } else if (tag == "chain") {
    e.kind = ExprKind::Chain;
    e.n = body.at("n").get<std::uint64_t>();
  } else if (tag == "product") {
    e.kind = ExprKind::Product;
    for (const auto& c : body.at("factors")) e.children.push_back(expr_from_json(c));
    if (body.contains("anchors"))
      for (const auto& v : body["anchors"]) e.anchors.push_back(rat_from_json(v));
    e.omega_repeat = body.value("omega", false);
  } else if (tag == "glue") {
    e.kind = ExprKind::Glue;
    e.children.push_back(expr_from_json(body.at("base")));
    for (const auto& c : body.at("fibers")) e.children.push_back(expr_from_json(c));
  } else if (tag == "duplicate") {
    e.kind = ExprKind::Duplicate;
    e.children.push_back(expr_from_json(body.at("inner")));
  } else if (tag == "tree") {
    e.kind = ExprKind::Tree;
    e.tree.push_back(tree_from_json(body));
  } else {
    throw validation_error("unknown expression tag \"" + tag + "\"");
  }
  return e;
}

inline Json point_to_json(const PointExpr& p) {
  switch (p.kind) {
    case PointKind::Real:
      return Json{{"real", rat_to_json(p.r)}};
    case PointKind::Index:
      return Json{{"index", p.index}};
    case PointKind::Tuple: {
      Json comps = Json::array();
      for (const auto& k : p.kids) comps.push_back(point_to_json(k));
      Json body{{"components", comps}};
      if (p.repeat) body["repeat"] = true;
      return Json{{"tuple", body}};
    }
    case PointKind::Pair:
      return Json{{"pair", Json{{"base", point_to_json(p.kids.at(0))}, {"fiber", point_to_json(p.kids.at(1))}}}};
    case PointKind::Dup:
      return Json{{"dup", Json{{"point", point_to_json(p.kids.at(0))}, {"bit", p.index}}}};
    case PointKind::Leaf:
      return Json{{"leaf", p.index}};
  }
  throw internal_error("unhandled point kind");
}

inline PointExpr point_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) throw validation_error("point must be a single tagged object");
  PointExpr p;
  const std::string tag = j.begin().key();
  const Json& body = j.begin().value();
  if (tag == "real") {
    p.kind = PointKind::Real;
    p.r = rat_from_json(body);
  } else if (tag == "index") {
    p.kind = PointKind::Index;
    p.index = body.get<std::uint64_t>();
  } else if (tag == "tuple") {
    p.kind = PointKind::Tuple;
    for (const auto& c : body.at("components")) p.kids.push_back(point_from_json(c));
    p.repeat = body.value("repeat", false);
  } else if (tag == "pair") {
    p.kind = PointKind::Pair;
    p.kids.push_back(point_from_json(body.at("base")));
    p.kids.push_back(point_from_json(body.at("fiber")));
  } else if (tag == "dup") {
    p.kind = PointKind::Dup;
    p.kids.push_back(point_from_json(body.at("point")));
    p.index = body.at("bit").get<std::uint64_t>();
  } else if (tag == "leaf") {
    p.kind = PointKind::Leaf;
    p.index = body.get<std::uint64_t>();
  } else {
    throw validation_error("unknown point tag \"" + tag + "\"");
  }
  return p;
}

inline Json fig_to_json(const CompactFig& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces) {
    if (const auto* pt = std::get_if<PointPiece>(&p)) {
      pieces.push_back(Json{{"point", Json::array({rat_to_json(pt->x), rat_to_json(pt->y)})}});
    } else if (const auto* vs = std::get_if<VSegPiece>(&p)) {
      pieces.push_back(Json{{"vseg", Json{{"x", rat_to_json(vs->x)}, {"h", rat_to_json(vs->h)}}}});
    } else {
      const auto& gc = std::get<GChainPiece>(p);
      pieces.push_back(
          Json{{"gchain", Json{{"start", rat_to_json(gc.start)}, {"limit", rat_to_json(gc.limit)}}}});
    }
  }
  return Json{{"pieces", pieces}};
}

inline CompactFig fig_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("pieces")) throw validation_error("figure document needs \"pieces\"");
  CompactFig f;
  for (const auto& p : j["pieces"]) {
    if (p.contains("point")) {
      f.pieces.emplace_back(PointPiece{rat_from_json(p["point"].at(0)), rat_from_json(p["point"].at(1))});
    } else if (p.contains("vseg")) {
      f.pieces.emplace_back(VSegPiece{rat_from_json(p["vseg"].at("x")), rat_from_json(p["vseg"].at("h"))});
    } else if (p.contains("gchain")) {
      f.pieces.emplace_back(
          GChainPiece{rat_from_json(p["gchain"].at("start")), rat_from_json(p["gchain"].at("limit"))});
    } else {
      throw validation_error("piece must be \"point\", \"vseg\" or \"gchain\"");
    }
  }
  return f;
}

}  // namespace altlex
