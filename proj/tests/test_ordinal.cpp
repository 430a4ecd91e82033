#include <catch2/catch_amalgamated.hpp>

#include "altlex/ordinal.hpp"

using namespace altlex;

namespace {
Ordinal W() { return Ordinal::omega(); }
Ordinal fin(std::uint64_t n) { return Ordinal::finite(n); }
}  // namespace

TEST_CASE("finite ordinals compare like integers") {
  CHECK(fin(0) == Ordinal());
  CHECK(fin(2) < fin(3));
  CHECK(fin(3) == fin(3));
  CHECK(fin(3) < W());
  CHECK(W() < Ordinal::omega_power(2));
}

TEST_CASE("addition follows CNF absorption") {
  // (w + 1) + w = w * 2
  Ordinal wp1 = ord_add(W(), fin(1));
  CHECK(ord_add(wp1, W()) == Ordinal::omega_power(1, 2));
  // 3 + w = w
  CHECK(ord_add(fin(3), W()) == W());
  CHECK(ord_add(fin(2), fin(5)) == fin(7));
  CHECK(ord_add(Ordinal(), wp1) == wp1);
  CHECK(ord_add(wp1, Ordinal()) == wp1);
  // w^2 + (w + 1)
  Ordinal s = ord_add(Ordinal::omega_power(2), wp1);
  REQUIRE(s.terms().size() == 3);
  CHECK(s.finite_part() == 1);
}

TEST_CASE("classification and parity") {
  auto z = ord_classify(Ordinal());
  CHECK(z.kind == OrdKind::Zero);

  auto s = ord_classify(ord_add(W(), fin(3)));
  REQUIRE(s.kind == OrdKind::Successor);
  CHECK(s.pred == ord_add(W(), fin(2)));

  CHECK(ord_classify(W()).kind == OrdKind::Limit);
  CHECK(ord_classify(Ordinal::omega_power(1, 2)).kind == OrdKind::Limit);

  CHECK(ord_parity(W()) == Parity::Even);
  CHECK(ord_parity(Ordinal()) == Parity::Even);
  CHECK(ord_parity(ord_add(W(), fin(1))) == Parity::Odd);
  CHECK(ord_parity(ord_add(W(), fin(4))) == Parity::Even);
  CHECK(ord_parity(fin(7)) == Parity::Odd);
}

TEST_CASE("left subtraction solves a + x = b") {
  Ordinal w2 = Ordinal::omega_power(1, 2);
  Ordinal wp1 = ord_add(W(), fin(1));
  CHECK(ord_left_subtract(W(), w2) == W());
  CHECK(ord_left_subtract(fin(3), fin(10)) == fin(7));
  CHECK(ord_left_subtract(fin(5), W()) == W());
  CHECK(ord_left_subtract(wp1, wp1) == Ordinal());

  // spot check the defining equation on a grid
  std::vector<Ordinal> grid = {Ordinal(), fin(1), fin(2), W(), wp1, w2,
                               ord_add(w2, fin(3)), Ordinal::omega_power(2),
                               ord_add(Ordinal::omega_power(2), wp1)};
  for (const auto& a : grid)
    for (const auto& b : grid) {
      if (a <= b) CHECK(ord_add(a, ord_left_subtract(a, b)) == b);
    }
}

TEST_CASE("from_terms validates CNF shape") {
  CHECK_THROWS_AS(Ordinal::from_terms({{Ordinal(), 0}}), validation_error);
  CHECK_THROWS_AS(Ordinal::from_terms({{Ordinal(), 1}, {W(), 1}}), validation_error);
  // depth cap
  Ordinal deep = W();
  for (int i = 0; i < 7; ++i)
    deep = Ordinal::from_terms({{deep, 1}});
  CHECK_THROWS_AS(Ordinal::from_terms({{deep, 1}}), validation_error);
}

TEST_CASE("to_string reads naturally") {
  CHECK(ord_to_string(Ordinal()) == "0");
  CHECK(ord_to_string(ord_add(W(), fin(3))) == "w+3");
  CHECK(ord_to_string(Ordinal::omega_power(2, 3)) == "w^(2)*3");
}
