#include <catch2/catch_amalgamated.hpp>

#include "altlex/seq.hpp"

using namespace altlex;

namespace {

Rat q(const std::string& s) { return parse_rat(s); }

TransfiniteSeq fin_seq(std::vector<std::string> vals) {
  FiniteSeg f;
  for (auto& v : vals) f.values.push_back(q(v));
  return TransfiniteSeq{{Segment{std::move(f)}}};
}

Segment tail(const std::string& s, const std::string& b) {
  return Segment{OmegaTailSeg{q(s), q(b)}};
}

Segment fin(std::vector<std::string> vals) {
  FiniteSeg f;
  for (auto& v : vals) f.values.push_back(q(v));
  return Segment{std::move(f)};
}

}  // namespace

TEST_CASE("validation accepts universal presentations") {
  CHECK(seq_validate(fin_seq({"1", "1/2", "0"})).ok);
  TransfiniteSeq x{{tail("1", "1/2"), fin({"1/2", "0"})}};
  CHECK(seq_validate(x).ok);
  CHECK(seq_length(x) == ord_add(Ordinal::omega(), Ordinal::finite(2)));
}

TEST_CASE("validation rejects broken presentations") {
  CHECK_FALSE(seq_validate(fin_seq({"1/2", "1/2", "0"})).ok);  // not strict
  CHECK_FALSE(seq_validate(fin_seq({"1/2", "1/4"})).ok);       // missing 0
  CHECK_FALSE(seq_validate(fin_seq({"3/2", "0"})).ok);         // out of range
  TransfiniteSeq bad{{tail("1", "1/4"), fin({"1/2", "0"})}};   // above tail limit
  CHECK_FALSE(seq_validate(bad).ok);
  TransfiniteSeq tail_end{{fin({"1"}), tail("1/2", "0")}};
  CHECK_FALSE(seq_validate(tail_end).ok);  // universal must end Finite..0
  CHECK(seq_validate(tail_end, false).ok);
}

TEST_CASE("indexing walks segments and tails") {
  TransfiniteSeq x{{tail("1", "1/2"), fin({"1/2", "0"})}};
  CHECK(seq_index(x, Ordinal::finite(0)) == q("1"));
  CHECK(seq_index(x, Ordinal::finite(3)) == q("9/16"));
  CHECK(seq_index(x, Ordinal::omega()) == q("1/2"));
  CHECK(seq_index(x, ord_add(Ordinal::omega(), Ordinal::finite(1))) == 0);
  CHECK_THROWS_AS(seq_index(x, ord_add(Ordinal::omega(), Ordinal::finite(2))),
                  validation_error);
}

TEST_CASE("canonicalization absorbs tail heads and merges finites") {
  TransfiniteSeq x{{fin({"1"}), tail("3/4", "1/2"), fin({"0"})}};
  TransfiniteSeq c = seq_canonicalize(x);
  REQUIRE(c.segments.size() == 2);
  const auto& t = std::get<OmegaTailSeg>(c.segments[0]);
  CHECK(t.start == 1);
  CHECK(t.limit == q("1/2"));
  CHECK(seq_equal(x, TransfiniteSeq{{tail("1", "1/2"), fin({"0"})}}));

  TransfiniteSeq split{{fin({"1/2"}), fin({"1/4", "0"})}};
  CHECK(seq_equal(split, fin_seq({"1/2", "1/4", "0"})));
  // repeated absorption: two explicit heads of the same geometric tail
  TransfiniteSeq twice{{fin({"1", "3/4"}), tail("5/8", "1/2"), fin({"0"})}};
  TransfiniteSeq ct = seq_canonicalize(twice);
  REQUIRE(ct.segments.size() == 2);
  CHECK(std::get<OmegaTailSeg>(ct.segments[0]).start == 1);
}

TEST_CASE("first difference and altlex order on finite sequences") {
  auto x = fin_seq({"3/4", "1/2", "0"});
  auto y = fin_seq({"3/4", "1/4", "0"});
  auto r = altlex_compare(x, y);
  CHECK(r.delta == Ordinal::finite(1));
  // odd position, so the larger value there is the smaller sequence
  CHECK(r.order == SeqOrdering::Less);
  auto rr = altlex_compare(y, x);
  CHECK(rr.order == SeqOrdering::Greater);

  auto e = altlex_compare(x, x);
  CHECK(e.order == SeqOrdering::Equal);

  auto s = altlex_compare(fin_seq({"1/2", "0"}), fin_seq({"3/4", "0"}));
  CHECK(s.delta == Ordinal());
  CHECK(s.order == SeqOrdering::Less);
}

TEST_CASE("first difference across tails lands at limit positions") {
  TransfiniteSeq x{{tail("1", "1/2"), fin({"1/2", "0"})}};
  TransfiniteSeq y{{tail("1", "1/2"), fin({"1/4", "0"})}};
  auto r = altlex_compare(x, y);
  CHECK(r.delta == Ordinal::omega());
  CHECK(ord_parity(r.delta) == Parity::Even);
  CHECK(r.order == SeqOrdering::Greater);

  // same denotation, different presentation: equal
  TransfiniteSeq x2{{fin({"1"}), tail("3/4", "1/2"), fin({"1/2", "0"})}};
  CHECK(altlex_compare(x, x2).order == SeqOrdering::Equal);

  // tails sharing a start but not a limit differ at position 1
  TransfiniteSeq u{{tail("1", "1/2"), fin({"0"})}};
  TransfiniteSeq v{{tail("1", "1/4"), fin({"0"})}};
  auto d = delta_first_difference(u, v);
  REQUIRE(d.has_value());
  CHECK(d->delta == Ordinal::finite(1));
}

TEST_CASE("affine maps act on both segment kinds") {
  TransfiniteSeq x{{tail("1", "1/2"), fin({"1/2", "0"})}};
  auto y = seq_affine(q("1/2"), x, q("1/4"));
  CHECK(seq_index(y, Ordinal::finite(0)) == q("3/4"));
  CHECK(seq_index(y, Ordinal::finite(1)) == q("5/8"));
  CHECK(seq_index(y, Ordinal::omega()) == q("1/2"));
  CHECK(seq_index(y, ord_add(Ordinal::omega(), Ordinal::finite(1))) == q("1/4"));
  CHECK_THROWS_AS(seq_affine(q("2"), x, q("1/2")), validation_error);
  CHECK_THROWS_AS(seq_affine(q("-1"), x, q("0")), validation_error);
}

TEST_CASE("concat enforces the boundary rule") {
  auto hi = seq_affine(q("1/2"), fin_seq({"1", "0"}), q("1/2"));  // (1, 1/2)
  auto lo = fin_seq({"1/4", "0"});
  auto z = seq_concat(hi, lo);
  CHECK(seq_equal(z, fin_seq({"1", "1/2", "1/4", "0"})));
  CHECK_THROWS_AS(seq_concat(lo, hi), validation_error);

  TransfiniteSeq t{{tail("1", "1/2")}};
  auto w = seq_concat(t, lo);
  CHECK(seq_validate(w).ok);
  CHECK_THROWS_AS(seq_concat(t, fin_seq({"3/4", "0"})), validation_error);
}

TEST_CASE("evenize matches the frozen examples") {
  auto a = evenize(fin_seq({"1/2", "1/4", "0"}));
  CHECK(seq_equal(a, fin_seq({"3/4", "5/8", "1/2", "0"})));
  CHECK(ord_parity(seq_length(a)) == Parity::Even);

  auto b = evenize(fin_seq({"1/2", "0"}));
  CHECK(seq_equal(b, fin_seq({"3/4", "1/2", "1/4", "0"})));
  CHECK(ord_parity(seq_length(b)) == Parity::Even);

  TransfiniteSeq t{{tail("1", "1/2"), fin({"1/2", "0"})}};
  auto c = evenize(t);  // length w+2 is even, so a two-value pad is appended
  CHECK(ord_parity(seq_length(c)) == Parity::Even);
  CHECK(seq_index(c, ord_add(Ordinal::omega(), Ordinal::finite(2))) == q("1/4"));
}

TEST_CASE("prefix extraction") {
  TransfiniteSeq x{{tail("1", "1/2"), fin({"1/2", "1/4", "0"})}};
  auto p0 = seq_prefix(x, Ordinal());
  CHECK(p0.segments.empty());
  auto p2 = seq_prefix(x, Ordinal::finite(2));
  CHECK(seq_equal(p2, fin_seq({"1", "3/4"})) );
  auto pw = seq_prefix(x, Ordinal::omega());
  REQUIRE(pw.segments.size() == 1);
  CHECK(std::holds_alternative<OmegaTailSeg>(pw.segments[0]));
  auto pw1 = seq_prefix(x, ord_add(Ordinal::omega(), Ordinal::finite(1)));
  CHECK(seq_index(pw1, Ordinal::omega()) == q("1/2"));
}
