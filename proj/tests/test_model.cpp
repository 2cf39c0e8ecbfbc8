#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bscoop/model.hpp"

#include <random>

using namespace bscoop;

namespace {

SystemParams scenario1() {
  SystemParams p;
  p.n = 4;
  p.k = 2;
  p.d = 2;
  p.t = 2;
  p.M = 2;
  p.w = {rat_from_string("1.1"), rat_from_string("1.7")};
  p.b = {Rat(1), Rat(1)};
  p.F = Rat(4);
  return p;
}

}  // namespace

TEST_CASE("scenario parameters validate cleanly") {
  CHECK(validate_params(scenario1()).empty());
}

TEST_CASE("helper count above n - t is rejected") {
  SystemParams p = scenario1();
  p.d = 3;
  auto violations = validate_params(p);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0] == "k <= d <= n - t");
}

TEST_CASE("descending weights are rejected") {
  SystemParams p = scenario1();
  p.w = {rat_from_string("1.4"), rat_from_string("1.2")};
  auto violations = validate_params(p);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0] == "w non-descending");
}

TEST_CASE("all violations are reported together") {
  SystemParams p = scenario1();
  p.d = 3;
  p.F = Rat(0);
  p.w = {rat_from_string("1.4"), rat_from_string("0.9")};
  auto violations = validate_params(p);
  CHECK(violations.size() == 4);  // d range, w_2 >= 1, w ordering, F > 0
}

TEST_CASE("validation is pure") {
  SystemParams p = scenario1();
  p.b[1] = Rat(-1);
  CHECK(validate_params(p) == validate_params(p));
}

TEST_CASE("selector shapes") {
  CHECK(selector(0, 3).s == std::vector<int>{0, 0, 0});
  CHECK(selector(2, 4).s == std::vector<int>{1, 1, 0, 0});
  CHECK(selector(4, 4).s == std::vector<int>{1, 1, 1, 1});
  CHECK_THROWS_AS(selector(5, 4), std::out_of_range);
  CHECK_THROWS_AS(selector(-1, 4), std::out_of_range);
}

TEST_CASE("selector sum always equals rho") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int M = static_cast<int>(rng() % 9);
    int rho = static_cast<int>(rng() % (M + 1));
    LayerSelector sel = selector(rho, M);
    int sum = 0;
    for (int s : sel.s) sum += s;
    CHECK(sum == rho);
    CHECK(sel.rho == rho);
    for (int l = 0; l + 1 < M; ++l) CHECK(sel.s[l] >= sel.s[l + 1]);  // prefix of ones
  }
}

TEST_CASE("variable validation enforces the download box and selector zeros") {
  SystemParams p = scenario1();
  RepairVariables v = make_variables(p, rat_from_string("0.5"), rat_from_string("0.5"),
                                     {Rat(1), Rat(1)}, 2);
  CHECK(validate_variables(p, v).empty());

  v.beta = Rat(3);  // above F/d = 2
  CHECK(!validate_variables(p, v).empty());

  RepairVariables partial = make_variables(p, rat_from_string("0.5"), rat_from_string("0.5"),
                                           {Rat(1), Rat(1)}, 1);
  CHECK(partial.r[1] == 0);  // zeroed beyond the prefix
  CHECK(validate_variables(p, partial).empty());
  partial.r[1] = Rat(1);
  CHECK(!validate_variables(p, partial).empty());
}

TEST_CASE("cost ledger recomputes its weighted total") {
  CostLedger ledger;
  ledger.local_symbols = 4;
  ledger.coop_symbols = 2;
  ledger.bs_symbols = {2, 2};
  ledger.symbol_size = rat_from_string("0.5");
  std::vector<Rat> w = {rat_from_string("1.1"), rat_from_string("1.7")};
  CHECK(ledger.recompute(w) == rat_from_string("5.8"));
}

TEST_CASE("rational parsing and rendering") {
  CHECK(rat_from_string("43/15") == Rat(43) / 15);
  CHECK(rat_from_string("2.867") == Rat(2867) / 1000);
  CHECK(rat_from_string("-0.5") == Rat(-1) / 2);
  CHECK(rat_from_double(1.7) == Rat(17) / 10);
  CHECK(rat_to_fixed(Rat(43) / 15, 3) == "2.867");
  CHECK(rat_to_fixed(Rat(11) / 3, 3) == "3.667");
  CHECK(rat_to_fraction(Rat(29) / 10) == "29/10");
  CHECK(rat_to_decimal(Rat(29) / 10) == "2.9");
  CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
}
