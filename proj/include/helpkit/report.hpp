#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "helpkit/chartab.hpp"
#include "helpkit/zassenhaus.hpp"

namespace helpkit {

// Self-contained summary of a spectrum or Kimmerle run: renders to JSON or
// Markdown and loads back from its own JSON without the fixtures.
struct SpectrumReport {
  std::string group;
  std::map<std::uint64_t, OrderResult> verdicts;
  // class names labelling each order's augmentation columns, table order
  std::map<std::uint64_t, std::vector<std::string>> supports;
  PrimeGraph graph_g;
  PrimeGraph graph_v;
  bool kc_evaluated = false;  // the run covered every two-prime order
  bool kc_confirmed = false;
  bool kc_inconclusive = false;
  std::vector<std::uint64_t> skipped_orders;

  friend bool operator==(const SpectrumReport&, const SpectrumReport&) = default;
};

// Wrap raw engine output. The spectrum variant leaves the Kimmerle verdict
// unevaluated but still grows graph_v by the unexcluded two-prime orders it
// happens to cover.
SpectrumReport make_report(const CharacterTable& table, const SpectrumResult& spectrum);
SpectrumReport make_report(const CharacterTable& table, const KimmerleResult& kimmerle);

nlohmann::json report_to_json(const SpectrumReport& report);

// Inverse of report_to_json: the round trip is exact. Throws ValidationError
// on malformed or internally inconsistent input.
SpectrumReport parse_spectrum_report(const nlohmann::json& j);

// Human rendering; solution tables list augmentation columns in table class
// order and one row per surviving tuple.
std::string report_to_markdown(const SpectrumReport& report);

}  // namespace helpkit
