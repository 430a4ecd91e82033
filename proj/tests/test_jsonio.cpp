#include <catch2/catch_amalgamated.hpp>

#include "altlex/json_io.hpp"

using namespace altlex;

TEST_CASE("rational and ordinal json") {
  CHECK(rat_to_json(Rat(1, 2)) == Json("1/2"));
  CHECK(rat_from_json(Json("-3/4")) == Rat(-3, 4));
  CHECK_THROWS_AS(rat_from_json(Json(7)), validation_error);

  CHECK(ord_to_compact_string(Ordinal()) == "[]");
  Ordinal a = ord_add(Ordinal::omega_power(2, 3), Ordinal::finite(5));
  CHECK(ord_from_string(ord_to_compact_string(a)) == a);
  CHECK(ord_from_string("[]").is_zero());
  CHECK_THROWS_AS(ord_from_string("{"), validation_error);
  // terms out of CNF order are rejected on parse
  CHECK_THROWS_AS(ord_from_string("[[[],1],[[[[],1],1],1]]"), validation_error);
}

TEST_CASE("sequence json round trip") {
  TransfiniteSeq x;
  x.segments.emplace_back(OmegaTailSeg{Rat(1), Rat(1, 2)});
  x.segments.emplace_back(FiniteSeg{{Rat(1, 4), Rat(0)}});
  Json j = seq_to_json(x);
  CHECK(j.dump() ==
        R"({"segments":[{"tail":{"start":"1","limit":"1/2"}},{"finite":["1/4","0"]}]})");
  CHECK(seq_equal(seq_from_json(j), x));
  CHECK_THROWS_AS(seq_from_json(Json::parse(R"({"segments":[{"what":[]}]})")), validation_error);
}

TEST_CASE("function json round trip") {
  FinFn f;
  f.k = 1;
  f.values = {Rat(1), Rat(1)};
  f.rep_value = Rat(1);
  f.top = Rat(0);
  Json j = fn_to_json(f);
  CHECK(j.dump() == R"({"k":1,"prefix":["1","1"],"rep":"1","top":"0"})");
  CHECK(fn_structural_equal(fn_from_json(j), f));

  FinFn g;
  g.k = 2;
  g.blocks = {f};
  g.rep_block = {fn_const(1, Rat(1, 2))};
  g.top = Rat(1, 4);
  Json jg = fn_to_json(g);
  FinFn back = fn_from_json(jg);
  CHECK(back.k == 2);
  CHECK(fn_equal(back, g));
}

TEST_CASE("expression and point json round trips") {
  OrderExpr chain;
  chain.kind = ExprKind::Chain;
  chain.n = 3;
  OrderExpr prod;
  prod.kind = ExprKind::Product;
  prod.children = {chain, chain};
  prod.anchors = {Rat(1), Rat(3, 4), Rat(1, 2)};
  Json j = expr_to_json(prod);
  CHECK(j.dump() ==
        R"({"product":{"factors":[{"chain":{"n":3}},{"chain":{"n":3}}],"anchors":["1","3/4","1/2"]}})");
  OrderExpr back = expr_from_json(j);
  CHECK(back.kind == ExprKind::Product);
  REQUIRE(back.children.size() == 2);
  CHECK(back.children[0].n == 3);
  CHECK(back.anchors == prod.anchors);

  OrderExpr glue;
  glue.kind = ExprKind::Glue;
  glue.children = {chain, chain, chain, chain};
  OrderExpr dup;
  dup.kind = ExprKind::Duplicate;
  dup.children = {glue};
  OrderExpr tree;
  tree.kind = ExprKind::Tree;
  tree.tree.push_back(TreeNode{Rat(1, 2), {TreeNode{Rat(1, 4), {}}, TreeNode{Rat(1, 3), {}}}});
  for (const OrderExpr& e : {dup, tree}) {
    Json je = expr_to_json(e);
    OrderExpr eb = expr_from_json(je);
    CHECK(expr_to_json(eb).dump() == je.dump());
  }
  CHECK_THROWS_AS(expr_from_json(Json::parse(R"({"weird":{}})")), validation_error);

  PointExpr tup;
  tup.kind = PointKind::Tuple;
  tup.repeat = true;
  PointExpr idx;
  idx.kind = PointKind::Index;
  idx.index = 2;
  PointExpr pr;
  pr.kind = PointKind::Real;
  pr.r = Rat(2, 3);
  tup.kids = {idx, pr};
  PointExpr pair;
  pair.kind = PointKind::Pair;
  pair.kids = {tup, idx};
  PointExpr dp;
  dp.kind = PointKind::Dup;
  dp.kids = {pair};
  dp.index = 1;
  PointExpr leaf;
  leaf.kind = PointKind::Leaf;
  leaf.index = 4;
  for (const PointExpr& p : {tup, pair, dp, leaf, idx, pr}) {
    Json jp = point_to_json(p);
    CHECK(point_equal(point_from_json(jp), p));
  }
}

TEST_CASE("figure json round trip") {
  CompactFig f;
  f.pieces.emplace_back(PointPiece{Rat(1, 2), Rat(0)});
  f.pieces.emplace_back(VSegPiece{Rat(1, 2), Rat(1, 4)});
  f.pieces.emplace_back(GChainPiece{Rat(1), Rat(1, 2)});
  Json j = fig_to_json(f);
  CHECK(j.dump() ==
        R"({"pieces":[{"point":["1/2","0"]},{"vseg":{"x":"1/2","h":"1/4"}},{"gchain":{"start":"1","limit":"1/2"}}]})");
  CompactFig back = fig_from_json(j);
  CHECK(fig_to_json(back).dump() == j.dump());
}
