#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "helpkit/chartab.hpp"

namespace helpkit {

// Classes that can carry a nonzero partial augmentation for a unit of order
// k: non-identity classes whose element order divides k.
std::vector<std::uint32_t> support_classes(const CharacterTable& t, std::uint64_t k);

// Partial augmentations, aligned with the support of their order.
using NuVector = std::vector<Integer>;

// A solved unit is carried together with all of its nontrivial powers:
// key m > 1 maps to the augmentations of the power of order m. The top-level
// order is always present; the remaining keys are its proper divisors.
using Tower = std::map<std::uint64_t, NuVector>;

// One multiplicity constraint: (sum coeffs*nu + constant) must be a
// non-negative multiple of `modulus` and at most `cap` = modulus * degree.
struct MuRow {
  std::vector<Integer> coeffs;
  Integer constant;
  Integer cap;
  // provenance for reports and diagnostics
  std::string character;
  std::string table;  // "ordinary" or "mod<p>"
  std::uint64_t l = 0;
};

struct ConstraintSystem {
  std::uint64_t order = 1;         // unit order k (the row modulus)
  std::vector<std::uint32_t> support;  // class indices, ascending
  std::vector<MuRow> rows;
};

// One entry of a constraint selection: a character, the table it lives in,
// and the multiplicity indices to use (empty = all of 0..k-1).
struct MuSpec {
  std::string character;
  std::string table;
  std::vector<std::uint64_t> ls;
};

class Selection {
 public:
  enum class Mode { full, paper, file };

  static Selection full();
  static Selection paper();
  static Selection from_file(const std::string& path);
  static Selection from_json(const nlohmann::json& j, std::string label);

  Mode mode() const { return mode_; }
  const std::string& describe() const { return label_; }

  // Specs applicable to unit order k. Full mode synthesizes every character
  // of every applicable table; the other modes return the configured lists.
  std::vector<MuSpec> specs_for(std::uint64_t k, const CharacterTable& t,
                                const std::vector<BrauerTable>& brauers) const;

 private:
  Mode mode_ = Mode::full;
  std::string label_ = "full";
  std::map<std::uint64_t, std::vector<MuSpec>> entries_;
};

// Assemble the constraint system for units of order k. `lower` maps each
// proper divisor order m (1 < m < k) to the augmentations of the power of
// that order; it must cover every such divisor. Throws ValidationError on
// dangling references (unknown character, missing table, mod-p table with p
// dividing k, incomplete lower data).
ConstraintSystem build_system(const CharacterTable& t, const std::vector<BrauerTable>& brauers,
                              std::uint64_t k, const Selection& sel, const Tower& lower);

// All compatible combinations of solved towers for the proper divisors of k.
// `solved` must hold the solution towers for every maximal proper divisor
// of k that is > 1. Each result maps every proper divisor m of k (m > 1) to
// its augmentation vector.
std::vector<Tower> divisor_cases(std::uint64_t k, const std::map<std::uint64_t, std::vector<Tower>>& solved);

// True if nu is an indicator vector of a class of element order exactly k.
bool is_trivial_solution(const CharacterTable& t, const std::vector<std::uint32_t>& support,
                         const NuVector& nu, std::uint64_t k);

// Indicator towers for every class of order exactly k (the solutions carried
// by group elements themselves).
std::vector<Tower> trivial_towers(const CharacterTable& t, std::uint64_t k);

}  // namespace helpkit
