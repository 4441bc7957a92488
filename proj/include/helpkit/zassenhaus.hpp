#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "helpkit/chartab.hpp"
#include "helpkit/lutharpassi.hpp"
#include "helpkit/solver.hpp"

namespace helpkit {

enum class OrderStatus {
  excluded,      // no unit of this order exists
  trivial_only,  // every surviving tower is a class indicator at every level
  constrained,   // nontrivial solutions survive
  skipped,       // budget or an unresolved lower order prevented a verdict
};

std::string to_string(OrderStatus status);

enum class ZcStatus { holds, not_decided, no_units, unresolved };

std::string to_string(ZcStatus status);

// Everything learned about one divisor case: the fixed lower-order
// augmentations and the top-level solutions they admit.
struct CaseResult {
  Tower lower;
  std::vector<NuVector> solutions;
  Completeness completeness = Completeness::exact;
  bool aborted = false;

  friend bool operator==(const CaseResult&, const CaseResult&) = default;
};

struct OrderResult {
  std::uint64_t order = 2;
  OrderStatus status = OrderStatus::skipped;
  bool element_order = false;
  bool exhaustive = true;  // the solution list is provably complete
  std::uint64_t cases_total = 0;
  std::uint64_t cases_examined = 0;
  std::vector<CaseResult> cases;
  std::vector<Tower> solutions;  // union over cases, each with the top level added
  std::string note;

  friend bool operator==(const OrderResult&, const OrderResult&) = default;
};

ZcStatus zc_status(const OrderResult& result);

struct Budget {
  std::optional<std::uint64_t> max_cases;  // per order; 0 skips everything
  std::optional<double> max_seconds;       // per order; 0 skips everything
};

struct SpectrumOptions {
  std::vector<std::uint64_t> orders;  // empty = every divisor of the exponent
  Budget budget;
  unsigned jobs = 1;
};

struct SpectrumResult {
  std::map<std::uint64_t, OrderResult> verdicts;
};

// Verdict for one order; spectra must already hold results for every proper
// divisor of k above 1 (bottom-up protocol).
OrderResult admissible_tuples(const CharacterTable& table,
                              const std::vector<BrauerTable>& brauers,
                              std::uint64_t k, const Selection& selection,
                              const std::map<std::uint64_t, OrderResult>& spectra,
                              const Budget& budget = {}, unsigned jobs = 1);

// Bottom-up verdicts for the requested orders plus every divisor they need.
SpectrumResult order_spectrum(const CharacterTable& table,
                              const std::vector<BrauerTable>& brauers,
                              const Selection& selection,
                              const SpectrumOptions& options = {});

struct PrimeGraph {
  std::vector<std::uint64_t> vertices;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;  // p < q, sorted

  friend bool operator==(const PrimeGraph&, const PrimeGraph&) = default;
};

PrimeGraph prime_graph_of_group(const CharacterTable& table);

struct KimmerleResult {
  PrimeGraph graph_g;  // element orders of the group
  PrimeGraph graph_v;  // graph_g plus every unrefuted two-prime order
  bool confirmed = false;
  bool inconclusive = false;
  std::vector<std::uint64_t> skipped_orders;
  SpectrumResult spectrum;
};

KimmerleResult kimmerle_check(const CharacterTable& table,
                              const std::vector<BrauerTable>& brauers,
                              const Selection& selection, const Budget& budget = {},
                              unsigned jobs = 1);

}  // namespace helpkit
