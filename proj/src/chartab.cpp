#include "helpkit/chartab.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace helpkit {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::vector<std::string>& errors) {
  std::ostringstream os;
  std::size_t shown = std::min<std::size_t>(errors.size(), 25);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) os << "; ";
    os << errors[i];
  }
  if (errors.size() > shown) os << "; (+" << errors.size() - shown << " more)";
  throw ValidationError(os.str());
}

void check_phase(std::vector<std::string>& errors) {
  if (!errors.empty()) fail(errors);
}

Integer json_to_integer(const json& j, const std::string& what) {
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
      throw ValidationError(what + ": not an integer: " + j.get<std::string>());
    }
  }
  throw ValidationError(what + ": expected integer or decimal string");
}

// A table value is an integer, a rational string, or the explicit
// {"conductor": n, "coeffs": {...}} form.
Cyclotomic value_from_json(const json& j, const std::string& what) {
  try {
    if (j.is_number_integer() || j.is_number_unsigned()) return Cyclotomic(json_to_integer(j, what));
    if (j.is_string()) return Cyclotomic(parse_rational(j.get<std::string>()));
    if (j.is_object()) return Cyclotomic::from_json(j);
  } catch (const std::exception& e) {
    throw ValidationError(what + ": " + e.what());
  }
  throw ValidationError(what + ": expected integer, rational string, or cyclotomic object");
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / gcd_u64(a, b) * b; }

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Shared value checks: algebraic integrality and conductor dividing the
// element order (both hold for ordinary and Brauer character values).
void check_value(const Cyclotomic& v, std::uint64_t class_order, const std::string& what,
                 std::vector<std::string>& errors) {
  if (!v.is_integral()) errors.push_back(what + ": value is not an algebraic integer");
  if (class_order % v.conductor() != 0)
    errors.push_back(what + ": conductor " + std::to_string(v.conductor()) +
                     " does not divide element order " + std::to_string(class_order));
}

}  // namespace

std::optional<std::uint32_t> CharacterTable::class_index(const std::string& name) const {
  for (std::uint32_t i = 0; i < classes.size(); ++i)
    if (classes[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::uint32_t> CharacterTable::character_index(const std::string& name) const {
  for (std::uint32_t i = 0; i < characters.size(); ++i)
    if (characters[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::uint32_t> BrauerTable::character_index(const std::string& name) const {
  for (std::uint32_t i = 0; i < characters.size(); ++i)
    if (characters[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::uint32_t> BrauerTable::regular_position(std::uint32_t parent_class) const {
  for (std::uint32_t i = 0; i < regular.size(); ++i)
    if (regular[i] == parent_class) return i;
  return std::nullopt;
}

CharacterTable parse_table(const json& j) {
  std::vector<std::string> errors;
  if (!j.is_object()) throw ValidationError("table: expected a JSON object");
  for (const char* key : {"group", "order", "exponent", "classes", "powermaps", "characters"})
    if (!j.contains(key)) errors.push_back(std::string("table: missing field '") + key + "'");
  check_phase(errors);

  CharacterTable t;
  if (!j["group"].is_string() || j["group"].get<std::string>().empty())
    errors.push_back("group: expected nonempty string");
  else
    t.group = j["group"].get<std::string>();
  t.order = json_to_integer(j["order"], "order");
  if (t.order < 1) errors.push_back("order: must be positive");
  {
    Integer e = json_to_integer(j["exponent"], "exponent");
    if (e < 1 || e > Integer(std::numeric_limits<std::uint64_t>::max()))
      errors.push_back("exponent: out of range");
    else
      t.exponent = static_cast<std::uint64_t>(e);
  }
  if (!j["classes"].is_array() || j["classes"].empty()) errors.push_back("classes: expected nonempty array");
  if (!j["powermaps"].is_object()) errors.push_back("powermaps: expected object");
  if (!j["characters"].is_array() || j["characters"].empty())
    errors.push_back("characters: expected nonempty array");
  check_phase(errors);

  for (std::size_t i = 0; i < j["classes"].size(); ++i) {
    const json& cj = j["classes"][i];
    std::string what = "classes[" + std::to_string(i) + "]";
    if (!cj.is_object() || !cj.contains("name") || !cj.contains("order") || !cj.contains("size")) {
      errors.push_back(what + ": expected object with name/order/size");
      continue;
    }
    ConjugacyClass c;
    c.name = cj["name"].is_string() ? cj["name"].get<std::string>() : "";
    if (c.name.empty()) errors.push_back(what + ": bad name");
    Integer ord = json_to_integer(cj["order"], what + ".order");
    if (ord < 1 || ord > Integer(std::numeric_limits<std::uint32_t>::max())) {
      errors.push_back(what + ".order: out of range");
      ord = 1;
    }
    c.order = static_cast<std::uint64_t>(ord);
    c.size = json_to_integer(cj["size"], what + ".size");
    if (c.size < 1) errors.push_back(what + ".size: must be positive");
    t.classes.push_back(std::move(c));
  }
  check_phase(errors);

  const std::size_t nc = t.classes.size();
  {
    if (t.classes[0].order != 1 || t.classes[0].size != 1)
      errors.push_back("classes[0]: must be the identity class (order 1, size 1)");
    std::size_t n_identity = 0;
    Integer size_sum = 0;
    std::uint64_t order_lcm = 1;
    for (std::size_t i = 0; i < nc; ++i) {
      const auto& c = t.classes[i];
      if (c.order == 1) ++n_identity;
      size_sum += c.size;
      if (t.exponent % c.order != 0)
        errors.push_back("class " + c.name + ": order does not divide exponent");
      else
        order_lcm = lcm_u64(order_lcm, c.order);
      if (t.order % c.size != 0)
        errors.push_back("class " + c.name + ": size does not divide group order");
      if (i > 0) {
        const auto& p = t.classes[i - 1];
        if (std::tie(p.order, p.name) >= std::tie(c.order, c.name))
          errors.push_back("classes: not strictly sorted by (order, name) at " + c.name);
      }
    }
    if (n_identity != 1) errors.push_back("classes: expected exactly one identity class");
    if (size_sum != t.order) errors.push_back("classes: sizes do not sum to the group order");
    if (order_lcm != t.exponent && errors.empty())
      errors.push_back("exponent: not the lcm of the element orders");
  }
  check_phase(errors);

  for (auto it = j["powermaps"].begin(); it != j["powermaps"].end(); ++it) {
    std::uint32_t p = 0;
    try {
      unsigned long v = std::stoul(it.key());
      if (v < 2 || v > std::numeric_limits<std::uint32_t>::max()) throw std::out_of_range("");
      p = static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      errors.push_back("powermaps: bad prime key '" + it.key() + "'");
      continue;
    }
    if (!is_prime_u32(p) || t.exponent % p != 0) {
      errors.push_back("powermaps[" + it.key() + "]: not a prime dividing the exponent");
      continue;
    }
    if (!it->is_object()) {
      errors.push_back("powermaps[" + it.key() + "]: expected object");
      continue;
    }
    std::vector<std::uint32_t> pm(nc, 0);
    std::vector<bool> seen(nc, false);
    for (auto m = it->begin(); m != it->end(); ++m) {
      auto src = t.class_index(m.key());
      if (!src) {
        errors.push_back("powermaps[" + it.key() + "]: unknown class " + m.key());
        continue;
      }
      auto dst = m->is_string() ? t.class_index(m->get<std::string>()) : std::nullopt;
      if (!dst) {
        errors.push_back("powermaps[" + it.key() + "][" + m.key() + "]: unknown target");
        continue;
      }
      if (seen[*src]) errors.push_back("powermaps[" + it.key() + "]: duplicate entry for " + m.key());
      seen[*src] = true;
      pm[*src] = *dst;
      std::uint64_t so = t.classes[*src].order;
      std::uint64_t expect = so / gcd_u64(so, p);
      if (t.classes[*dst].order != expect)
        errors.push_back("powermaps[" + it.key() + "][" + m.key() + "]: target has order " +
                         std::to_string(t.classes[*dst].order) + ", expected " + std::to_string(expect));
    }
    for (std::size_t i = 0; i < nc; ++i)
      if (!seen[i]) errors.push_back("powermaps[" + it.key() + "]: missing entry for " + t.classes[i].name);
    t.powermaps[p] = std::move(pm);
  }
  for (std::uint64_t p : distinct_prime_factors(t.exponent))
    if (!t.powermaps.count(static_cast<std::uint32_t>(p)))
      errors.push_back("powermaps: missing map for prime " + std::to_string(p));
  check_phase(errors);

  for (std::size_t i = 0; i < j["characters"].size(); ++i) {
    const json& cj = j["characters"][i];
    std::string what = "characters[" + std::to_string(i) + "]";
    if (!cj.is_object() || !cj.contains("name") || !cj.contains("values") || !cj["values"].is_array()) {
      errors.push_back(what + ": expected object with name and values array");
      continue;
    }
    Character ch;
    ch.name = cj["name"].is_string() ? cj["name"].get<std::string>() : "";
    if (ch.name.empty()) errors.push_back(what + ": bad name");
    if (cj["values"].size() != nc) {
      errors.push_back(what + ": expected " + std::to_string(nc) + " values");
      continue;
    }
    for (std::size_t k = 0; k < nc; ++k)
      ch.values.push_back(value_from_json(cj["values"][k], what + ".values[" + std::to_string(k) + "]"));
    t.characters.push_back(std::move(ch));
  }
  check_phase(errors);

  if (t.characters.size() != nc)
    errors.push_back("characters: expected " + std::to_string(nc) + " (one per class)");
  for (std::size_t i = 0; i < t.characters.size(); ++i)
    for (std::size_t k = i + 1; k < t.characters.size(); ++k)
      if (t.characters[i].name == t.characters[k].name)
        errors.push_back("characters: duplicate name " + t.characters[i].name);
  {
    std::vector<std::string> names;
    for (const auto& c : t.classes) names.push_back(c.name);
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
      errors.push_back("classes: duplicate names");
  }
  check_phase(errors);

  for (const auto& ch : t.characters) {
    for (std::size_t k = 0; k < nc; ++k)
      check_value(ch.values[k], t.classes[k].order, ch.name + " at " + t.classes[k].name, errors);
    const Cyclotomic& deg = ch.values[0];
    if (!deg.is_rational() || !is_integer(deg.rational_value()) || deg.rational_value() < 1)
      errors.push_back(ch.name + ": degree must be a positive integer");
  }
  for (const auto& v : t.characters[0].values)
    if (!(v == Cyclotomic(1))) {
      errors.push_back("characters[0]: must be the trivial character");
      break;
    }
  check_phase(errors);

  // First orthogonality: sum over classes of |C| chi_i(C) conj(chi_j(C)).
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t k = i; k < nc; ++k) {
      Cyclotomic sum(0);
      for (std::size_t c = 0; c < nc; ++c)
        sum += t.characters[i].values[c] * t.characters[k].values[c].conj() * Rational(t.classes[c].size);
      Cyclotomic expect(i == k ? Rational(t.order) : Rational(0));
      if (!(sum == expect))
        errors.push_back("row orthogonality fails for (" + t.characters[i].name + ", " +
                         t.characters[k].name + ")");
    }
  // Second orthogonality: sum over characters of chi(C) conj(chi(D)).
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t d = c; d < nc; ++d) {
      Cyclotomic sum(0);
      for (std::size_t i = 0; i < nc; ++i) sum += t.characters[i].values[c] * t.characters[i].values[d].conj();
      Cyclotomic expect(c == d ? Rational(t.order) / Rational(t.classes[c].size) : Rational(0));
      if (!(sum == expect))
        errors.push_back("column orthogonality fails for (" + t.classes[c].name + ", " + t.classes[d].name +
                         ")");
    }
  check_phase(errors);

  // Power maps must agree with the Galois action on values: for p coprime to
  // the element order, chi(g^p) is the image of chi(g) under zeta -> zeta^p.
  for (const auto& [p, pm] : t.powermaps)
    for (std::size_t c = 0; c < nc; ++c) {
      if (t.classes[c].order % p == 0) continue;
      for (const auto& ch : t.characters)
        if (!(ch.values[c].galois(p) == ch.values[pm[c]])) {
          errors.push_back("powermaps[" + std::to_string(p) + "]: Galois mismatch for " + ch.name + " at " +
                           t.classes[c].name);
          break;
        }
    }
  check_phase(errors);
  return t;
}

BrauerTable parse_brauer(const json& j, const CharacterTable& parent) {
  std::vector<std::string> errors;
  if (!j.is_object()) throw ValidationError("brauer: expected a JSON object");
  for (const char* key : {"group", "prime", "characters"})
    if (!j.contains(key)) errors.push_back(std::string("brauer: missing field '") + key + "'");
  check_phase(errors);

  BrauerTable b;
  if (!j["group"].is_string() || j["group"].get<std::string>() != parent.group)
    errors.push_back("brauer: group does not match the ordinary table");
  b.parent_group = parent.group;
  {
    Integer p = json_to_integer(j["prime"], "prime");
    if (p < 2 || p > 1000000 || !is_prime_u32(static_cast<std::uint32_t>(p)))
      errors.push_back("prime: not a prime");
    else if (parent.order % p != 0)
      errors.push_back("prime: does not divide the group order");
    else
      b.prime = static_cast<std::uint32_t>(p);
  }
  if (!j["characters"].is_array() || j["characters"].empty())
    errors.push_back("characters: expected nonempty array");
  check_phase(errors);

  b.regular = regular_classes(parent, b.prime);
  for (std::size_t i = 0; i < j["characters"].size(); ++i) {
    const json& cj = j["characters"][i];
    std::string what = "characters[" + std::to_string(i) + "]";
    if (!cj.is_object() || !cj.contains("name") || !cj.contains("values") || !cj["values"].is_object()) {
      errors.push_back(what + ": expected object with name and values object");
      continue;
    }
    Character ch;
    ch.name = cj["name"].is_string() ? cj["name"].get<std::string>() : "";
    if (ch.name.empty()) errors.push_back(what + ": bad name");
    const json& vals = cj["values"];
    bool complete = true;
    for (std::uint32_t c : b.regular) {
      const std::string& cname = parent.classes[c].name;
      if (!vals.contains(cname)) {
        errors.push_back(what + ": missing value for regular class " + cname);
        complete = false;
        continue;
      }
      ch.values.push_back(value_from_json(vals[cname], what + " at " + cname));
    }
    if (vals.size() != b.regular.size())
      errors.push_back(what + ": values must cover exactly the " + std::to_string(b.regular.size()) +
                       " regular classes");
    if (complete) b.characters.push_back(std::move(ch));
  }
  check_phase(errors);

  if (b.characters.size() > b.regular.size())
    errors.push_back("characters: more than the number of regular classes");
  for (std::size_t i = 0; i < b.characters.size(); ++i)
    for (std::size_t k = i + 1; k < b.characters.size(); ++k)
      if (b.characters[i].name == b.characters[k].name)
        errors.push_back("characters: duplicate name " + b.characters[i].name);
  for (const auto& ch : b.characters) {
    for (std::size_t k = 0; k < b.regular.size(); ++k)
      check_value(ch.values[k], parent.classes[b.regular[k]].order,
                  ch.name + " at " + parent.classes[b.regular[k]].name, errors);
    const Cyclotomic& deg = ch.values[0];
    if (!deg.is_rational() || !is_integer(deg.rational_value()) || deg.rational_value() < 1)
      errors.push_back(ch.name + ": degree must be a positive integer");
  }
  check_phase(errors);

  // Galois consistency against the parent power maps, restricted to regular
  // classes. Regularity is preserved by every power map.
  for (const auto& [q, pm] : parent.powermaps)
    for (std::size_t pos = 0; pos < b.regular.size(); ++pos) {
      std::uint32_t c = b.regular[pos];
      if (parent.classes[c].order % q == 0) continue;
      auto target = b.regular_position(pm[c]);
      if (!target) {
        errors.push_back("powermaps[" + std::to_string(q) + "]: image of regular class " +
                         parent.classes[c].name + " is not regular");
        continue;
      }
      for (const auto& ch : b.characters)
        if (!(ch.values[pos].galois(q) == ch.values[*target])) {
          errors.push_back("brauer Galois mismatch for " + ch.name + " at " + parent.classes[c].name +
                           " under prime " + std::to_string(q));
          break;
        }
    }
  check_phase(errors);
  return b;
}

namespace {
json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(path + ": invalid JSON: " + e.what());
  }
}
}  // namespace

CharacterTable load_table_file(const std::string& path) { return parse_table(load_json_file(path)); }

BrauerTable load_brauer_file(const std::string& path, const CharacterTable& parent) {
  return parse_brauer(load_json_file(path), parent);
}

std::uint32_t power_class(const CharacterTable& t, std::uint32_t c, std::uint64_t m) {
  if (c >= t.classes.size()) throw std::out_of_range("power_class: bad class index");
  m %= t.classes[c].order;
  if (m == 0) return 0;
  std::uint32_t cur = c;
  for (std::uint64_t p = 2; m > 1; ++p) {
    if (p * p > m) p = m;
    while (m % p == 0) {
      auto it = t.powermaps.find(static_cast<std::uint32_t>(p));
      if (it == t.powermaps.end())
        throw ValidationError("power_class: no power map for prime " + std::to_string(p));
      cur = it->second[cur];
      m /= p;
    }
  }
  return cur;
}

std::vector<std::uint32_t> regular_classes(const CharacterTable& t, std::uint32_t p) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < t.classes.size(); ++i)
    if (t.classes[i].order % p != 0) out.push_back(i);
  return out;
}

}  // namespace helpkit
