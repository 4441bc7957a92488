#include "helpkit/lutharpassi.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <utility>

#include "helpkit/paper_selections.hpp"

namespace helpkit {

std::vector<std::uint32_t> support_classes(const CharacterTable& t, std::uint64_t k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 1; c < t.classes.size(); ++c) {
    if (k % t.classes[c].order == 0) out.push_back(c);
  }
  return out;
}

namespace {

// A character resolved against its table, able to produce values at parent
// class indices. Brauer values are looked up through the regular positions.
struct ResolvedChar {
  const Character* chr = nullptr;
  const BrauerTable* brauer = nullptr;
  Integer deg;

  Cyclotomic value(std::uint32_t cls) const {
    if (brauer == nullptr) return chr->values[cls];
    auto pos = brauer->regular_position(cls);
    if (!pos) {
      throw ValidationError("class index " + std::to_string(cls) + " is not " +
                            std::to_string(brauer->prime) + "-regular");
    }
    return chr->values[*pos];
  }
};

std::uint32_t parse_mod_prime(const std::string& table) {
  if (table.size() > 3 && table.compare(0, 3, "mod") == 0 &&
      std::all_of(table.begin() + 3, table.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    unsigned long p = std::stoul(table.substr(3));
    if (p >= 2 && p <= 1u << 30) return static_cast<std::uint32_t>(p);
  }
  throw ValidationError("unknown table label '" + table + "' (expected \"ordinary\" or \"mod<p>\")");
}

ResolvedChar resolve_spec(const CharacterTable& t, const std::vector<BrauerTable>& brauers,
                          const MuSpec& spec, std::uint64_t k) {
  ResolvedChar r;
  if (spec.table == "ordinary") {
    auto i = t.character_index(spec.character);
    if (!i) throw ValidationError("unknown ordinary character '" + spec.character + "'");
    r.chr = &t.characters[*i];
    r.deg = t.degree(*i);
    return r;
  }
  std::uint32_t p = parse_mod_prime(spec.table);
  if (k % p == 0) {
    throw ValidationError("mod-" + std::to_string(p) +
                          " characters only constrain unit orders coprime to " + std::to_string(p));
  }
  const BrauerTable* found = nullptr;
  for (const auto& b : brauers) {
    if (b.prime == p) {
      found = &b;
      break;
    }
  }
  if (found == nullptr) throw ValidationError("no mod-" + std::to_string(p) + " table loaded");
  auto i = found->character_index(spec.character);
  if (!i) {
    throw ValidationError("unknown character '" + spec.character + "' in mod-" +
                          std::to_string(p) + " table");
  }
  r.chr = &found->characters[*i];
  r.brauer = found;
  r.deg = found->degree(*i);
  return r;
}

}  // namespace

ConstraintSystem build_system(const CharacterTable& t, const std::vector<BrauerTable>& brauers,
                              std::uint64_t k, const Selection& sel, const Tower& lower) {
  if (k == 0) throw ValidationError("unit order must be positive");
  ConstraintSystem sys;
  sys.order = k;
  sys.support = support_classes(t, k);
  if (k == 1) return sys;

  const std::vector<std::uint64_t> divs = divisors(k);
  std::map<std::uint64_t, std::vector<std::uint32_t>> power_support;
  for (std::uint64_t m : divs) {
    if (m == 1 || m == k) continue;
    auto it = lower.find(m);
    if (it == lower.end()) {
      throw ValidationError("missing augmentations for the power of order " + std::to_string(m));
    }
    power_support[m] = support_classes(t, m);
    if (it->second.size() != power_support[m].size()) {
      throw ValidationError("augmentation vector for order " + std::to_string(m) +
                            " has length " + std::to_string(it->second.size()) + ", expected " +
                            std::to_string(power_support[m].size()));
    }
  }

  for (const MuSpec& spec : sel.specs_for(k, t, brauers)) {
    ResolvedChar rc = resolve_spec(t, brauers, spec, k);

    // Character values at all nontrivial powers u^d. The power of order k/d
    // is determined by `lower`, except d = k which lands on the identity.
    std::map<std::uint64_t, Cyclotomic> chi_power;
    for (std::uint64_t d : divs) {
      if (d == 1) continue;
      std::uint64_t m = k / d;
      if (m == 1) {
        chi_power[d] = Cyclotomic(rc.deg);
        continue;
      }
      Cyclotomic acc;
      const auto& sup = power_support[m];
      const auto& nu = lower.at(m);
      for (std::size_t i = 0; i < sup.size(); ++i) {
        if (nu[i] == 0) continue;
        acc += rc.value(sup[i]) * Rational(nu[i]);
      }
      chi_power[d] = std::move(acc);
    }

    std::vector<std::uint64_t> ls = spec.ls;
    if (ls.empty()) {
      ls.resize(k);
      std::iota(ls.begin(), ls.end(), 0);
    }
    for (std::uint64_t l : ls) {
      if (l >= k) {
        throw ValidationError("multiplicity index " + std::to_string(l) +
                              " out of range for order " + std::to_string(k));
      }
      MuRow row;
      row.character = spec.character;
      row.table = spec.table;
      row.l = l;
      row.cap = Integer(k) * rc.deg;
      row.coeffs.reserve(sys.support.size());
      const Cyclotomic zeta = Cyclotomic::root_of_unity(static_cast<std::uint32_t>(k),
                                                        -static_cast<std::int64_t>(l));
      for (std::uint32_t c : sys.support) {
        row.coeffs.push_back(to_integer((rc.value(c) * zeta).trace_over(static_cast<std::uint32_t>(k))));
      }
      Integer constant = 0;
      for (std::uint64_t d : divs) {
        if (d == 1) continue;
        auto n = static_cast<std::uint32_t>(k / d);
        Cyclotomic term =
            chi_power.at(d) * Cyclotomic::root_of_unity(n, -static_cast<std::int64_t>(l));
        constant += to_integer(term.trace_over(n));
      }
      row.constant = std::move(constant);
      sys.rows.push_back(std::move(row));
    }
  }
  return sys;
}

std::vector<Tower> divisor_cases(std::uint64_t k,
                                 const std::map<std::uint64_t, std::vector<Tower>>& solved) {
  std::vector<Tower> cases = {Tower{}};
  for (std::uint32_t p : distinct_prime_factors(k)) {
    std::uint64_t m = k / p;
    if (m == 1) continue;
    auto it = solved.find(m);
    if (it == solved.end()) {
      throw ValidationError("missing solved towers for order " + std::to_string(m));
    }
    std::vector<Tower> next;
    for (const Tower& base : cases) {
      for (const Tower& tower : it->second) {
        Tower merged = base;
        bool compatible = true;
        for (const auto& [ord, nu] : tower) {
          auto [pos, inserted] = merged.emplace(ord, nu);
          if (!inserted && pos->second != nu) {
            compatible = false;
            break;
          }
        }
        if (compatible) next.push_back(std::move(merged));
      }
    }
    cases = std::move(next);
  }
  return cases;
}

bool is_trivial_solution(const CharacterTable& t, const std::vector<std::uint32_t>& support,
                         const NuVector& nu, std::uint64_t k) {
  int ones = 0;
  std::size_t where = 0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] == 0) continue;
    if (nu[i] != 1) return false;
    ++ones;
    where = i;
  }
  return ones == 1 && t.classes[support[where]].order == k;
}

std::vector<Tower> trivial_towers(const CharacterTable& t, std::uint64_t k) {
  if (k == 1) return {Tower{}};
  std::vector<Tower> out;
  const std::vector<std::uint64_t> divs = divisors(k);
  std::map<std::uint64_t, std::vector<std::uint32_t>> sup;
  for (std::uint64_t m : divs) {
    if (m > 1) sup[m] = support_classes(t, m);
  }
  for (std::uint32_t c = 1; c < t.classes.size(); ++c) {
    if (t.classes[c].order != k) continue;
    Tower tower;
    for (std::uint64_t m : divs) {
      if (m == 1) continue;
      std::uint32_t pc = power_class(t, c, k / m);
      const auto& s = sup[m];
      auto pos = std::lower_bound(s.begin(), s.end(), pc);
      if (pos == s.end() || *pos != pc) {
        throw ValidationError("power map leaves the support of order " + std::to_string(m));
      }
      NuVector nu(s.size(), Integer(0));
      nu[static_cast<std::size_t>(pos - s.begin())] = 1;
      tower[m] = std::move(nu);
    }
    out.push_back(std::move(tower));
  }
  return out;
}

Selection Selection::full() { return Selection{}; }

Selection Selection::paper() {
  Selection s = from_json(nlohmann::json::parse(detail::kPaperSelectionsJson), "paper");
  s.mode_ = Mode::paper;
  return s;
}

Selection Selection::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open selection file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("invalid JSON in " + path + ": " + std::string(e.what()));
  }
  return from_json(j, "file:" + path);
}

Selection Selection::from_json(const nlohmann::json& j, std::string label) {
  Selection s;
  s.mode_ = Mode::file;
  s.label_ = std::move(label);
  if (!j.is_object()) throw ValidationError("a selection must be an object keyed by unit order");
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::uint64_t k = 0;
    {
      const std::string& key = it.key();
      std::size_t pos = 0;
      bool ok = !key.empty() && key.find_first_not_of("0123456789") == std::string::npos;
      if (ok) {
        k = std::stoull(key, &pos);
        ok = pos == key.size() && k >= 2;
      }
      if (!ok) throw ValidationError("selection key '" + key + "' is not a unit order >= 2");
    }
    if (!it.value().is_array()) {
      throw ValidationError("selection for order " + it.key() + " must be an array");
    }
    std::vector<MuSpec> specs;
    for (const auto& e : it.value()) {
      if (!e.is_object() || !e.contains("character") || !e.contains("table") || !e.contains("l") ||
          !e.at("character").is_string() || !e.at("table").is_string() || !e.at("l").is_array()) {
        throw ValidationError("selection entries for order " + it.key() +
                              " need string fields 'character' and 'table' and an array 'l'");
      }
      MuSpec spec;
      spec.character = e.at("character").get<std::string>();
      spec.table = e.at("table").get<std::string>();
      if (spec.table != "ordinary") parse_mod_prime(spec.table);
      std::set<std::uint64_t> ls;
      for (const auto& lv : e.at("l")) {
        bool in_range = lv.is_number_unsigned()
                            ? lv.get<std::uint64_t>() < k
                            : lv.is_number_integer() && lv.get<std::int64_t>() >= 0 &&
                                  static_cast<std::uint64_t>(lv.get<std::int64_t>()) < k;
        if (!in_range) {
          throw ValidationError("multiplicity indices for order " + it.key() +
                                " must be integers in [0, " + std::to_string(k) + ")");
        }
        ls.insert(lv.get<std::uint64_t>());
      }
      spec.ls.assign(ls.begin(), ls.end());
      specs.push_back(std::move(spec));
    }
    s.entries_[k] = std::move(specs);
  }
  return s;
}

std::vector<MuSpec> Selection::specs_for(std::uint64_t k, const CharacterTable& t,
                                         const std::vector<BrauerTable>& brauers) const {
  if (mode_ == Mode::full) {
    std::vector<MuSpec> out;
    out.reserve(t.characters.size());
    for (const auto& chr : t.characters) out.push_back({chr.name, "ordinary", {}});
    for (const auto& b : brauers) {
      if (k % b.prime == 0) continue;
      for (const auto& chr : b.characters) {
        out.push_back({chr.name, "mod" + std::to_string(b.prime), {}});
      }
    }
    return out;
  }
  auto it = entries_.find(k);
  if (it == entries_.end()) return {};
  return it->second;
}

}  // namespace helpkit
