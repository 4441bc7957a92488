#include <doctest.h>

#include <nlohmann/json.hpp>

#include "helpkit/report.hpp"

using helpkit::CharacterTable;
using helpkit::Integer;
using helpkit::OrderStatus;
using helpkit::Selection;
using helpkit::SpectrumReport;
using helpkit::ValidationError;
using nlohmann::json;

namespace {

std::string data_path(const std::string& name) { return std::string(HELPKIT_DATA_DIR) + "/" + name; }

const CharacterTable& a5() {
  static CharacterTable t = helpkit::load_table_file(data_path("a5.json"));
  return t;
}

const std::vector<helpkit::BrauerTable>& a5_brauers() {
  static std::vector<helpkit::BrauerTable> bs = {
      helpkit::load_brauer_file(data_path("a5-mod2.json"), a5()),
      helpkit::load_brauer_file(data_path("a5-mod3.json"), a5()),
      helpkit::load_brauer_file(data_path("a5-mod5.json"), a5()),
  };
  return bs;
}

const SpectrumReport& a5_report() {
  static SpectrumReport rep = helpkit::make_report(
      a5(), helpkit::kimmerle_check(a5(), a5_brauers(), Selection::full()));
  return rep;
}

}  // namespace

TEST_SUITE_BEGIN("report");

TEST_CASE("kimmerle report carries the verdict and both graphs") {
  const SpectrumReport& rep = a5_report();
  CHECK(rep.group == "A5");
  CHECK(rep.kc_evaluated);
  CHECK(rep.kc_confirmed);
  CHECK_FALSE(rep.kc_inconclusive);
  CHECK(rep.graph_g == rep.graph_v);
  CHECK(rep.verdicts.count(6));
  CHECK(rep.supports.at(6) == std::vector<std::string>{"2a", "3a"});
  CHECK(rep.supports.at(10) == std::vector<std::string>{"2a", "5a", "5b"});
}

TEST_CASE("json round trip is exact") {
  const SpectrumReport& rep = a5_report();
  const json j = helpkit::report_to_json(rep);
  const SpectrumReport back = helpkit::parse_spectrum_report(j);
  CHECK(back == rep);
  // and a second hop through text form
  CHECK(helpkit::parse_spectrum_report(json::parse(j.dump())) == rep);
}

TEST_CASE("augmentations beyond 64 bits survive the round trip") {
  SpectrumReport rep = a5_report();
  auto& r = rep.verdicts.at(2);
  helpkit::Tower huge;
  huge[2] = {Integer("123456789012345678901234567890"),
             Integer("-123456789012345678901234567889")};
  r.solutions.push_back(huge);
  const SpectrumReport back = helpkit::parse_spectrum_report(helpkit::report_to_json(rep));
  CHECK(back == rep);
}

TEST_CASE("spectrum-only reports leave the kimmerle verdict unevaluated") {
  const auto spectrum = helpkit::order_spectrum(a5(), a5_brauers(), Selection::full());
  const SpectrumReport rep = helpkit::make_report(a5(), spectrum);
  CHECK_FALSE(rep.kc_evaluated);
  CHECK(rep.graph_v == rep.graph_g);  // every two-prime order came out excluded
  CHECK(helpkit::parse_spectrum_report(helpkit::report_to_json(rep)) == rep);
}

TEST_CASE("surviving two-prime orders grow the unit graph") {
  auto spectrum = helpkit::order_spectrum(a5(), a5_brauers(), Selection::full());
  spectrum.verdicts.at(6).status = OrderStatus::constrained;
  const SpectrumReport rep = helpkit::make_report(a5(), spectrum);
  CHECK(rep.graph_g.edges.empty());
  CHECK(rep.graph_v.edges == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 3}});
}

TEST_CASE("markdown names the group and each verdict") {
  const std::string md = helpkit::report_to_markdown(a5_report());
  CHECK(md.find("# Torsion unit spectrum: A5") != std::string::npos);
  CHECK(md.find("confirmed, the prime graphs agree") != std::string::npos);
  CHECK(md.find("## Order 6: excluded") != std::string::npos);
  CHECK(md.find("## Order 10: excluded") != std::string::npos);
  CHECK(md.find("## Order 15: excluded") != std::string::npos);
  // the order-5 table lists both class indicator rows under named columns
  CHECK(md.find("| nu(5a) | nu(5b) |") != std::string::npos);
  CHECK(md.find("| 1 | 0 |") != std::string::npos);
  CHECK(md.find("| 0 | 1 |") != std::string::npos);
}

TEST_CASE("parser rejects structural defects") {
  const json good = helpkit::report_to_json(a5_report());

  json missing = good;
  missing.erase("kimmerle");
  CHECK_THROWS_AS(helpkit::parse_spectrum_report(missing), ValidationError);

  json bad_status = good;
  bad_status["orders"][0]["status"] = "victorious";
  CHECK_THROWS_AS(helpkit::parse_spectrum_report(bad_status), ValidationError);

  json bad_zc = good;
  bad_zc["orders"][0]["zc"] = "holds";  // order 2 in A5 is trivial-only, zc holds
  bad_zc["orders"][0]["status"] = "constrained";  // now the pair contradicts
  CHECK_THROWS_AS(helpkit::parse_spectrum_report(bad_zc), ValidationError);

  json bad_graph = good;
  bad_graph["prime_graph_group"]["edges"].push_back(json::array({2, 3}));
  // group edge absent from the unit graph violates containment
  CHECK_THROWS_AS(helpkit::parse_spectrum_report(bad_graph), ValidationError);

  json bad_level = good;
  bad_level["orders"][0]["solutions"] = json::array({json{{"two", json::array({1})}}});
  CHECK_THROWS_AS(helpkit::parse_spectrum_report(bad_level), ValidationError);
}

TEST_SUITE_END();
