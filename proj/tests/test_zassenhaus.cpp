#include <algorithm>
#include <set>
#include <stdexcept>

#include <doctest.h>

#include <nlohmann/json.hpp>

#include "helpkit/zassenhaus.hpp"

using helpkit::Budget;
using helpkit::BrauerTable;
using helpkit::CharacterTable;
using helpkit::Cyclotomic;
using helpkit::OrderResult;
using helpkit::OrderStatus;
using helpkit::Selection;
using helpkit::SpectrumOptions;
using helpkit::Tower;
using helpkit::ZcStatus;

namespace {

std::string data_path(const std::string& name) { return std::string(HELPKIT_DATA_DIR) + "/" + name; }

const CharacterTable& a5() {
  static CharacterTable t = helpkit::load_table_file(data_path("a5.json"));
  return t;
}

const std::vector<BrauerTable>& a5_brauers() {
  static std::vector<BrauerTable> bs = {
      helpkit::load_brauer_file(data_path("a5-mod2.json"), a5()),
      helpkit::load_brauer_file(data_path("a5-mod3.json"), a5()),
      helpkit::load_brauer_file(data_path("a5-mod5.json"), a5()),
  };
  return bs;
}

const helpkit::SpectrumResult& a5_full_spectrum() {
  static helpkit::SpectrumResult s =
      helpkit::order_spectrum(a5(), a5_brauers(), Selection::full());
  return s;
}

// A table whose lone involution class contradicts its own character parity:
// chi2 has odd degree but an even value, so even the indicator tuple fails.
CharacterTable contradictory_table() {
  CharacterTable t;
  t.group = "broken";
  t.order = 2;
  t.exponent = 2;
  t.classes = {{"1a", 1, 1}, {"2a", 2, 1}};
  t.powermaps[2] = {0, 0};
  t.characters = {{"chi1", {Cyclotomic(1), Cyclotomic(1)}},
                  {"chi2", {Cyclotomic(3), Cyclotomic(2)}}};
  return t;
}

}  // namespace

TEST_SUITE_BEGIN("zassenhaus");

TEST_CASE("a5 prime graph has three isolated vertices") {
  const auto g = helpkit::prime_graph_of_group(a5());
  CHECK(g.vertices == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(g.edges.empty());
}

TEST_CASE("a5 full spectrum settles every divisor of the exponent") {
  const auto& spectrum = a5_full_spectrum();
  REQUIRE(spectrum.verdicts.size() == 7);  // 2, 3, 5, 6, 10, 15, 30

  for (std::uint64_t k : {2, 3, 5}) {
    const OrderResult& r = spectrum.verdicts.at(k);
    CHECK(r.status == OrderStatus::trivial_only);
    CHECK(zc_status(r) == ZcStatus::holds);
    CHECK(r.exhaustive);
    CHECK(r.element_order);
  }
  CHECK(spectrum.verdicts.at(5).solutions.size() == 2);  // one tower per class 5a, 5b

  for (std::uint64_t k : {6, 10, 15, 30}) {
    const OrderResult& r = spectrum.verdicts.at(k);
    CHECK(r.status == OrderStatus::excluded);
    CHECK(zc_status(r) == ZcStatus::no_units);
    CHECK(r.exhaustive);
    CHECK_FALSE(r.element_order);
    CHECK(r.solutions.empty());
  }
  // 30 dies upstream: its divisor verdicts are empty, so no case assignments
  CHECK(spectrum.verdicts.at(30).cases_total == 0);
}

TEST_CASE("kimmerle on a5 is confirmed by the three exclusions") {
  const auto res = helpkit::kimmerle_check(a5(), a5_brauers(), Selection::full());
  CHECK(res.confirmed);
  CHECK_FALSE(res.inconclusive);
  CHECK(res.skipped_orders.empty());
  CHECK(res.graph_v.vertices == res.graph_g.vertices);
  CHECK(res.graph_v.edges == res.graph_g.edges);
  CHECK(res.spectrum.verdicts.count(6));
  CHECK(res.spectrum.verdicts.count(10));
  CHECK(res.spectrum.verdicts.count(15));
}

TEST_CASE("bottom-up protocol demands divisor verdicts") {
  CHECK_THROWS_AS(helpkit::admissible_tuples(a5(), a5_brauers(), 6, Selection::full(), {}),
                  std::logic_error);
  CHECK_THROWS_AS(helpkit::admissible_tuples(a5(), a5_brauers(), 1, Selection::full(), {}),
                  std::invalid_argument);
}

TEST_CASE("an unresolved divisor cascades into a skip") {
  auto verdicts = a5_full_spectrum().verdicts;
  verdicts.at(3).status = OrderStatus::skipped;
  const auto res =
      helpkit::admissible_tuples(a5(), a5_brauers(), 6, Selection::full(), verdicts);
  CHECK(res.status == OrderStatus::skipped);
  CHECK(res.note == "order 3 unresolved");
  CHECK_FALSE(res.exhaustive);

  // a non-exhaustive divisor list is just as disqualifying as a skip
  verdicts = a5_full_spectrum().verdicts;
  verdicts.at(3).exhaustive = false;
  const auto res2 =
      helpkit::admissible_tuples(a5(), a5_brauers(), 6, Selection::full(), verdicts);
  CHECK(res2.status == OrderStatus::skipped);
}

TEST_CASE("a zero case budget skips everything and kimmerle says so") {
  Budget budget;
  budget.max_cases = 0;
  const auto res = helpkit::kimmerle_check(a5(), a5_brauers(), Selection::full(), budget);
  CHECK_FALSE(res.confirmed);
  CHECK(res.inconclusive);
  CHECK(res.skipped_orders == std::vector<std::uint64_t>{6, 10, 15});
  for (const auto& [k, r] : res.spectrum.verdicts) {
    CHECK(r.status == OrderStatus::skipped);
    CHECK(zc_status(r) == ZcStatus::unresolved);
  }
}

TEST_CASE("an expired time budget skips instead of deciding") {
  Budget budget;
  budget.max_seconds = 0.0;
  const auto res = helpkit::admissible_tuples(a5(), a5_brauers(), 2, Selection::full(),
                                              {}, budget);
  CHECK(res.status == OrderStatus::skipped);
  CHECK_FALSE(res.exhaustive);
  CHECK(res.note == "time budget exhausted");
}

TEST_CASE("orders outside the exponent are excluded without any casework") {
  const auto res = helpkit::admissible_tuples(a5(), a5_brauers(), 7, Selection::full(), {});
  CHECK(res.status == OrderStatus::excluded);
  CHECK(res.note == "not a divisor of the exponent");
  CHECK(res.cases_total == 0);
  CHECK_FALSE(res.element_order);
}

TEST_CASE("excluding an element order is a hard data error") {
  const auto broken = contradictory_table();
  CHECK_THROWS_AS(helpkit::admissible_tuples(broken, {}, 2, Selection::full(), {}),
                  std::logic_error);
}

TEST_CASE("more constraints never add solutions") {
  // weaker system: one ordinary character instead of the full set
  nlohmann::json entry = {{"character", "chi2"}, {"table", "ordinary"},
                          {"l", nlohmann::json::array()}};
  nlohmann::json j = {{"5", nlohmann::json::array({entry})}};
  const auto weak = Selection::from_json(j, "weak");

  const auto strong_res =
      helpkit::admissible_tuples(a5(), a5_brauers(), 5, Selection::full(), {});
  const auto weak_res = helpkit::admissible_tuples(a5(), a5_brauers(), 5, weak, {});
  REQUIRE(strong_res.exhaustive);
  REQUIRE(weak_res.exhaustive);
  const std::set<Tower> weak_set(weak_res.solutions.begin(), weak_res.solutions.end());
  for (const Tower& t : strong_res.solutions) CHECK(weak_set.count(t));
}

TEST_CASE("requested orders pull in their divisors") {
  SpectrumOptions options;
  options.orders = {30};
  const auto spectrum = helpkit::order_spectrum(a5(), a5_brauers(), Selection::full(), options);
  for (std::uint64_t k : {2, 3, 5, 6, 10, 15, 30}) CHECK(spectrum.verdicts.count(k));
  CHECK(spectrum.verdicts.size() == 7);
}

TEST_SUITE_END();
