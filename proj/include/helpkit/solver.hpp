#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "helpkit/lutharpassi.hpp"

namespace helpkit {

// How much the returned solution list claims.
//
//   exact:      the list is the complete set of solutions.
//   aggregated: some support classes are indistinguishable to every selected
//               row, so solutions come in infinite families; the list holds
//               one representative per family (empty list still proves
//               infeasibility, because any solution projects to a family).
//   unknown:    the system has free directions even after merging identical
//               columns; nothing can be enumerated or refuted.
enum class Completeness { exact, aggregated, unknown };

struct SolveOutcome {
  std::vector<NuVector> solutions;
  Completeness completeness = Completeness::exact;
  bool feasible = false;  // a solution (or family representative) was found
  bool aborted = false;   // deadline hit; the enumeration is partial
};

struct SolveLimits {
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Enumerate all integer augmentation vectors nu over sys.support with
// sum(nu) = 1 and, for every row, sum(coeffs*nu) + constant a non-negative
// multiple of sys.order that is at most cap.
SolveOutcome solve_system(const ConstraintSystem& sys, const SolveLimits& limits = {});

}  // namespace helpkit
