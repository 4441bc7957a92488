#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "helpkit/cyclotomic.hpp"

namespace helpkit {

// Any structural or arithmetic defect in input data. Parsing either returns a
// fully validated object or throws this; there are no partially valid tables.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct ConjugacyClass {
  std::string name;     // "<element order><letter>", e.g. "20b"
  std::uint64_t order;  // element order
  Integer size;         // class size
};

// prime -> (class index -> class index of the p-th power)
using PowerMaps = std::map<std::uint32_t, std::vector<std::uint32_t>>;

struct Character {
  std::string name;
  std::vector<Cyclotomic> values;  // ordinary: indexed by class; Brauer: by regular position
};

struct CharacterTable {
  std::string group;
  Integer order;
  std::uint64_t exponent = 1;
  std::vector<ConjugacyClass> classes;
  PowerMaps powermaps;
  std::vector<Character> characters;

  std::optional<std::uint32_t> class_index(const std::string& name) const;
  std::optional<std::uint32_t> character_index(const std::string& name) const;
  // Degree of character i (integer value at the identity class).
  Integer degree(std::uint32_t i) const { return to_integer(characters[i].values[0].rational_value()); }
};

// A p-modular table: irreducible Brauer character values on the p-regular
// classes of the parent. May carry a validated subset of the full set of
// irreducible Brauer characters; names refer to the full library numbering.
struct BrauerTable {
  std::uint32_t prime = 0;
  std::string parent_group;
  std::vector<std::uint32_t> regular;  // parent class indices, ascending
  std::vector<Character> characters;   // values aligned with `regular`

  std::optional<std::uint32_t> character_index(const std::string& name) const;
  std::optional<std::uint32_t> regular_position(std::uint32_t parent_class) const;
  Integer degree(std::uint32_t i) const { return to_integer(characters[i].values[0].rational_value()); }
};

// Parse + validate. Orthogonality (both kinds), power-map totality and order
// arithmetic, Galois consistency, size sums, degree positivity and
// integrality are all hard errors.
CharacterTable parse_table(const nlohmann::json& j);
BrauerTable parse_brauer(const nlohmann::json& j, const CharacterTable& parent);

CharacterTable load_table_file(const std::string& path);
BrauerTable load_brauer_file(const std::string& path, const CharacterTable& parent);

// Class of g^m for g in class c. m is reduced mod the element order, then
// factored into primes of the power maps.
std::uint32_t power_class(const CharacterTable& t, std::uint32_t c, std::uint64_t m);

// Indices of classes whose order is coprime to p.
std::vector<std::uint32_t> regular_classes(const CharacterTable& t, std::uint32_t p);

}  // namespace helpkit
