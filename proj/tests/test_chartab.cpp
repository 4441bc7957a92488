#include <doctest.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "helpkit/chartab.hpp"

using helpkit::BrauerTable;
using helpkit::CharacterTable;
using helpkit::Cyclotomic;
using helpkit::Rational;
using helpkit::ValidationError;
using nlohmann::json;

namespace {

std::string data_path(const std::string& name) { return std::string(HELPKIT_DATA_DIR) + "/" + name; }

json load_json(const std::string& name) {
  std::ifstream in(data_path(name));
  REQUIRE(in.good());
  return json::parse(in);
}

const CharacterTable& a5() {
  static CharacterTable t = helpkit::load_table_file(data_path("a5.json"));
  return t;
}

}  // namespace

TEST_SUITE_BEGIN("chartab");

TEST_CASE("a5 table loads and exposes expected structure") {
  const CharacterTable& t = a5();
  CHECK(t.group == "A5");
  CHECK(t.order == 60);
  CHECK(t.exponent == 30);
  REQUIRE(t.classes.size() == 5);
  CHECK(t.classes[1].name == "2a");
  CHECK(t.classes[1].size == 15);
  CHECK(t.classes[4].order == 5);
  REQUIRE(t.characters.size() == 5);
  CHECK(t.degree(0) == 1);
  CHECK(t.degree(1) == 3);
  CHECK(t.degree(4) == 5);
  CHECK(t.class_index("5b") == 4);
  CHECK_FALSE(t.class_index("6a").has_value());
  CHECK(t.character_index("chi4") == 3);

  // chi2(5a) + chi2(5b) = 1 and chi2(5a) * chi2(5b) = -1 (golden ratio pair).
  const Cyclotomic& a = t.characters[1].values[3];
  const Cyclotomic& b = t.characters[1].values[4];
  CHECK(a.conductor() == 5);
  CHECK(a + b == Cyclotomic(1));
  CHECK(a * b == Cyclotomic(-1));
}

TEST_CASE("power classes follow the power maps") {
  const CharacterTable& t = a5();
  auto idx = [&](const char* n) { return *t.class_index(n); };
  CHECK(helpkit::power_class(t, idx("5a"), 2) == idx("5b"));
  CHECK(helpkit::power_class(t, idx("5a"), 4) == idx("5a"));
  CHECK(helpkit::power_class(t, idx("5a"), 7) == idx("5b"));
  CHECK(helpkit::power_class(t, idx("5a"), 8) == idx("5b"));
  CHECK(helpkit::power_class(t, idx("5a"), 5) == 0);
  CHECK(helpkit::power_class(t, idx("5a"), 0) == 0);
  CHECK(helpkit::power_class(t, idx("3a"), 2) == idx("3a"));
  CHECK(helpkit::power_class(t, idx("2a"), 3) == idx("2a"));
  CHECK(helpkit::power_class(t, idx("3a"), 30) == 0);
  CHECK_THROWS_AS(helpkit::power_class(t, 99, 2), std::out_of_range);
}

TEST_CASE("regular classes drop the classes of order divisible by p") {
  const CharacterTable& t = a5();
  CHECK(helpkit::regular_classes(t, 2) == std::vector<std::uint32_t>{0, 2, 3, 4});
  CHECK(helpkit::regular_classes(t, 3) == std::vector<std::uint32_t>{0, 1, 3, 4});
  CHECK(helpkit::regular_classes(t, 5) == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(helpkit::regular_classes(t, 7) == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
}

TEST_CASE("brauer tables load against the parent") {
  const CharacterTable& t = a5();
  BrauerTable b2 = helpkit::load_brauer_file(data_path("a5-mod2.json"), t);
  CHECK(b2.prime == 2);
  CHECK(b2.regular == std::vector<std::uint32_t>{0, 2, 3, 4});
  REQUIRE(b2.characters.size() == 4);
  CHECK(b2.degree(1) == 2);
  CHECK(b2.character_index("phi3") == 2);
  CHECK(b2.regular_position(3) == 2);
  CHECK_FALSE(b2.regular_position(1).has_value());

  // phi2(5a) is chi2(5a) - 1.
  const Cyclotomic& v = b2.characters[1].values[2];
  CHECK(v == t.characters[1].values[3] - Cyclotomic(1));

  BrauerTable b5 = helpkit::load_brauer_file(data_path("a5-mod5.json"), t);
  CHECK(b5.regular == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(b5.characters.size() == 3);
  CHECK(b5.degree(2) == 5);
}

TEST_CASE("table validation rejects corrupted input") {
  const json good = load_json("a5.json");
  CHECK_NOTHROW(helpkit::parse_table(good));

  SUBCASE("tampered character value breaks orthogonality") {
    json bad = good;
    bad["characters"][4]["values"][1] = 2;
    CHECK_THROWS_WITH_AS(helpkit::parse_table(bad), doctest::Contains("orthogonality"), ValidationError);
  }
  SUBCASE("class sizes must sum to the group order") {
    json bad = good;
    bad["classes"][2]["size"] = 21;
    CHECK_THROWS_WITH_AS(helpkit::parse_table(bad), doctest::Contains("sum"), ValidationError);
  }
  SUBCASE("power map violating the galois action is rejected") {
    json bad = good;
    bad["powermaps"]["2"]["5a"] = "5a";
    bad["powermaps"]["2"]["5b"] = "5b";
    CHECK_THROWS_WITH_AS(helpkit::parse_table(bad), doctest::Contains("Galois"), ValidationError);
  }
  SUBCASE("power map with wrong target order is rejected") {
    json bad = good;
    bad["powermaps"]["2"]["2a"] = "2a";
    CHECK_THROWS_WITH_AS(helpkit::parse_table(bad), doctest::Contains("order"), ValidationError);
  }
  SUBCASE("values must be algebraic integers") {
    json bad = good;
    bad["characters"][3]["values"][1] = "1/2";
    CHECK_THROWS_AS(helpkit::parse_table(bad), ValidationError);
  }
  SUBCASE("value conductor must divide the element order") {
    json bad = good;
    bad["characters"][3]["values"][1] = {{"conductor", 5}, {"coeffs", {{"1", "1"}, {"2", "-1"}}}};
    CHECK_THROWS_WITH_AS(helpkit::parse_table(bad), doctest::Contains("conductor"), ValidationError);
  }
  SUBCASE("missing power map prime is rejected") {
    json bad = good;
    bad["powermaps"].erase("5");
    CHECK_THROWS_WITH_AS(helpkit::parse_table(bad), doctest::Contains("missing map"), ValidationError);
  }
  SUBCASE("duplicate class names are rejected") {
    json bad = good;
    bad["classes"][4]["name"] = "5a";
    CHECK_THROWS_AS(helpkit::parse_table(bad), ValidationError);
  }
  SUBCASE("classes must be sorted with the identity first") {
    json bad = good;
    std::swap(bad["classes"][0], bad["classes"][1]);
    CHECK_THROWS_AS(helpkit::parse_table(bad), ValidationError);
  }
  SUBCASE("exponent must be the lcm of element orders") {
    json bad = good;
    bad["exponent"] = 60;
    CHECK_THROWS_AS(helpkit::parse_table(bad), ValidationError);
  }
  SUBCASE("first character must be trivial") {
    json bad = good;
    std::swap(bad["characters"][0], bad["characters"][1]);
    CHECK_THROWS_WITH_AS(helpkit::parse_table(bad), doctest::Contains("trivial"), ValidationError);
  }
}

TEST_CASE("brauer validation rejects corrupted input") {
  const CharacterTable& t = a5();
  const json good = load_json("a5-mod3.json");
  CHECK_NOTHROW(helpkit::parse_brauer(good, t));

  SUBCASE("group mismatch") {
    json bad = good;
    bad["group"] = "S5";
    CHECK_THROWS_WITH_AS(helpkit::parse_brauer(bad, t), doctest::Contains("group"), ValidationError);
  }
  SUBCASE("prime must be prime") {
    json bad = good;
    bad["prime"] = 6;
    CHECK_THROWS_AS(helpkit::parse_brauer(bad, t), ValidationError);
  }
  SUBCASE("prime must divide the group order") {
    json bad = good;
    bad["prime"] = 7;
    CHECK_THROWS_AS(helpkit::parse_brauer(bad, t), ValidationError);
  }
  SUBCASE("values must cover exactly the regular classes") {
    json bad = good;
    bad["characters"][0]["values"].erase("2a");
    CHECK_THROWS_AS(helpkit::parse_brauer(bad, t), ValidationError);
    json bad2 = good;
    bad2["characters"][0]["values"]["3a"] = 1;
    CHECK_THROWS_WITH_AS(helpkit::parse_brauer(bad2, t), doctest::Contains("exactly"), ValidationError);
  }
  SUBCASE("galois-inconsistent value is rejected") {
    json bad = good;
    bad["characters"][1]["values"]["5b"] = bad["characters"][1]["values"]["5a"];
    CHECK_THROWS_WITH_AS(helpkit::parse_brauer(bad, t), doctest::Contains("Galois"), ValidationError);
  }
}

TEST_CASE("io failures are reported distinctly") {
  CHECK_THROWS_AS(helpkit::load_table_file(data_path("no-such-file.json")), std::runtime_error);
  // A wrong path error is not a ValidationError.
  try {
    helpkit::load_table_file(data_path("no-such-file.json"));
    CHECK(false);
  } catch (const ValidationError&) {
    CHECK(false);
  } catch (const std::runtime_error&) {
    CHECK(true);
  }
}

TEST_SUITE_END();
