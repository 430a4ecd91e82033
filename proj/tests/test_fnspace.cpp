#include <catch2/catch_amalgamated.hpp>

#include "altlex/fnspace.hpp"

using namespace altlex;

namespace {

Rat q(const std::string& s) { return parse_rat(s); }

// characteristic function of [0, omega) on [0, omega]
FinFn chi_below_omega() {
  FinFn f;
  f.k = 1;
  f.rep_value = 1;
  f.top = 0;
  return f;
}

FinFn chi_at_omega() {
  FinFn f;
  f.k = 1;
  f.rep_value = 0;
  f.top = 1;
  return f;
}

FinFn k1(std::vector<std::string> prefix, const std::string& rep, const std::string& top) {
  FinFn f;
  f.k = 1;
  for (auto& v : prefix) f.values.push_back(q(v));
  f.rep_value = q(rep);
  f.top = q(top);
  return f;
}

FinFn k2(std::vector<FinFn> blocks, FinFn rep, const std::string& top) {
  FinFn f;
  f.k = 2;
  f.blocks = std::move(blocks);
  f.rep_block.push_back(std::move(rep));
  f.top = q(top);
  return f;
}

Ordinal pos(std::uint64_t w_coeff, std::uint64_t n) {
  return ord_add(Ordinal::omega_power(1, w_coeff), Ordinal::finite(n));
}

}  // namespace

TEST_CASE("evaluation follows the block semantics") {
  FinFn f = chi_below_omega();
  CHECK(fn_eval(f, Ordinal::finite(5)) == 1);
  CHECK(fn_eval(f, Ordinal::omega()) == 0);
  CHECK_THROWS_AS(fn_eval(f, pos(1, 1)), validation_error);

  FinFn g = k2({}, chi_below_omega(), "0");
  CHECK(fn_eval(g, pos(3, 2)) == 1);
  CHECK(fn_eval(g, Ordinal::omega_power(1, 4)) == 1);
  CHECK(fn_eval(g, Ordinal::omega_power(2)) == 0);

  FinFn h = k2({k1({}, "0", "0"), k1({"2"}, "1/2", "0")}, chi_at_omega(), "3");
  CHECK(fn_eval(h, Ordinal::finite(7)) == 0);
  CHECK(fn_eval(h, pos(1, 0)) == 2);
  CHECK(fn_eval(h, pos(1, 3)) == q("1/2"));
  CHECK(fn_eval(h, pos(2, 1)) == 0);
  CHECK(fn_eval(h, Ordinal::omega_power(2)) == 3);
}

TEST_CASE("sup, min, limsup") {
  FinFn f = k1({"3", "1/4"}, "1/2", "2");
  CHECK(fn_sup(f) == 3);
  CHECK(fn_min(f) == q("1/4"));
  CHECK(fn_sup_halfopen(f) == 3);
  CHECK(fn_limsup_at(f, Ordinal::omega()) == q("1/2"));
  CHECK_THROWS_AS(fn_limsup_at(f, Ordinal::finite(3)), validation_error);

  CHECK(fn_limsup_at(chi_below_omega(), Ordinal::omega()) == 1);
  CHECK(fn_limsup_at(chi_at_omega(), Ordinal::omega()) == 0);
  CHECK(fn_sup(fn_const(1, Rat(1))) == 1);

  FinFn g = k2({k1({"5"}, "0", "0")}, chi_below_omega(), "0");
  CHECK(fn_limsup_at(g, Ordinal::omega()) == 0);           // block 0 settles at 0
  CHECK(fn_limsup_at(g, Ordinal::omega_power(1, 2)) == 1); // rep copy settles at 1
  CHECK(fn_limsup_at(g, Ordinal::omega_power(2)) == 1);
}

TEST_CASE("envelope on the worked k=1 examples") {
  CHECK(fn_equal(usc_envelope(chi_below_omega()), fn_const(1, Rat(1))));
  CHECK(fn_equal(usc_envelope(chi_at_omega()), chi_at_omega()));
  CHECK(fn_equal(usc_envelope(fn_zero(1)), fn_zero(1)));
  CHECK_FALSE(is_usc(chi_below_omega()));
  CHECK(is_usc(chi_at_omega()));
}

TEST_CASE("envelope on k=2 block boundaries") {
  // zero everywhere except value 1 on the half-open block 0
  FinFn f = k2({k1({}, "1", "0")}, fn_zero(1), "0");
  FinFn e = usc_envelope(f);
  CHECK(fn_eval(e, Ordinal::finite(3)) == 1);
  CHECK(fn_eval(e, Ordinal::omega()) == 1);  // boundary raised by the block-0 tail
  CHECK(fn_eval(e, pos(1, 1)) == 0);
  CHECK(fn_eval(e, Ordinal::omega_power(2)) == 0);
  CHECK(is_usc(e));
  CHECK(fn_equal(usc_envelope(e), e));

  // rep block keeps raising every later boundary and the top
  FinFn g = k2({}, chi_below_omega(), "0");
  FinFn eg = usc_envelope(g);
  CHECK(fn_eval(eg, Ordinal::omega()) == 1);
  CHECK(fn_eval(eg, Ordinal::omega_power(1, 7)) == 1);
  CHECK(fn_eval(eg, Ordinal::omega_power(2)) == 1);
  CHECK(is_usc(eg));
  CHECK(fn_equal(eg, fn_const(2, Rat(1))));
}

TEST_CASE("envelope laws hand-picked") {
  std::vector<FinFn> fns = {
      chi_below_omega(), chi_at_omega(), k1({"1/2", "2"}, "1", "0"),
      k2({k1({"1"}, "0", "0"), k1({}, "1/3", "0")}, chi_below_omega(), "1/4")};
  for (const auto& f : fns) {
    FinFn e = usc_envelope(f);
    CHECK(fn_leq(f, e));
    CHECK(fn_equal(usc_envelope(e), e));
    CHECK(is_usc(e));
    CHECK(is_usc(f) == fn_equal(e, f));
  }
}

TEST_CASE("combine and canonical equality") {
  FinFn one = fn_const(1, Rat(1));
  CHECK(fn_equal(fn_combine(one, chi_at_omega(), FnOp::Sub), chi_below_omega()));

  // padding with rep copies is denotation-neutral
  FinFn padded = k1({"1", "1", "1", "1", "1"}, "1", "0");
  CHECK(fn_equal(padded, chi_below_omega()));
  CHECK_FALSE(fn_equal(padded, one));

  FinFn neg = fn_combine(chi_at_omega(), one, FnOp::Sub);
  CHECK(fn_min(neg) < 0);
  CHECK_THROWS_AS(fn_combine(chi_at_omega(), one, FnOp::Sub, true), validation_error);

  FinFn m = fn_combine(chi_below_omega(), chi_at_omega(), FnOp::Max);
  CHECK(fn_equal(m, one));
  FinFn mn = fn_combine(chi_below_omega(), chi_at_omega(), FnOp::Min);
  CHECK(fn_is_zero(mn));

  // k=2 padding
  FinFn a = k2({chi_below_omega()}, chi_below_omega(), "0");
  FinFn b = k2({}, chi_below_omega(), "0");
  CHECK(fn_equal(a, b));
}

TEST_CASE("range sup") {
  FinFn f = k1({"3", "1/4", "2"}, "1/2", "5");
  auto sup = [&](std::optional<Ordinal> a, std::optional<Ordinal> b) {
    auto s = fn_sup_range(f, a, b);
    REQUIRE(s.has_value());
    return *s;
  };
  CHECK(sup(std::nullopt, Ordinal::omega()) == 5);
  CHECK(sup(Ordinal(), Ordinal::finite(2)) == 2);
  CHECK(sup(Ordinal::finite(1), std::nullopt) == 2);
  CHECK(sup(Ordinal::finite(2), std::nullopt) == q("1/2"));
  CHECK_FALSE(fn_sup_range(f, Ordinal::finite(5), Ordinal::finite(5)).has_value());

  FinFn g = k2({k1({"7"}, "0", "0")}, chi_below_omega(), "4");
  auto sg = [&](std::optional<Ordinal> a, std::optional<Ordinal> b) {
    return *fn_sup_range(g, a, b);
  };
  CHECK(sg(std::nullopt, Ordinal::omega_power(2)) == 7);
  CHECK(sg(Ordinal(), Ordinal::omega_power(2)) == 4);  // 7 sits exactly at 0
  CHECK(sg(Ordinal(), std::nullopt) == 1);
  CHECK(sg(Ordinal::omega(), Ordinal::omega_power(1, 2)) == 1);
  CHECK(sg(pos(1, 0), Ordinal::omega_power(1, 2)) == 1);
  CHECK(sg(Ordinal::finite(0), Ordinal::omega()) == 1);  // block-1 start included
}

TEST_CASE("structural positions cover every region") {
  FinFn f = k1({"3", "1/4"}, "1/2", "5");
  auto p = fn_structural_positions(f);
  REQUIRE(p.size() == 4);  // 0, 1, rep representative 2, omega
  CHECK(p.back() == Ordinal::omega());

  FinFn g = k2({k1({"7"}, "0", "0")}, chi_below_omega(), "4");
  auto pg = fn_structural_positions(g);
  CHECK(pg.front() == Ordinal());
  CHECK(pg.back() == Ordinal::omega_power(2));
  // block 1 (the rep representative) contributes position omega
  CHECK(std::find(pg.begin(), pg.end(), Ordinal::omega()) != pg.end());
}

TEST_CASE("validation") {
  FinFn bad;
  bad.k = 1;
  bad.values = {q("-1")};
  CHECK_THROWS_AS(fn_validate(bad), validation_error);
  CHECK_NOTHROW(fn_validate(bad, false));
  FinFn bad2;
  bad2.k = 2;
  CHECK_THROWS_AS(fn_validate(bad2), validation_error);  // missing rep block
  CHECK_NOTHROW(fn_validate(fn_const(3, Rat(2))));
  FinFn bad3 = fn_const(2, Rat(1));
  bad3.blocks.push_back(fn_const(2, Rat(1)));  // wrong exponent inside
  CHECK_THROWS_AS(fn_validate(bad3), validation_error);
}
