#include "helpkit/report.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace helpkit {

namespace {

using nlohmann::json;

json integer_to_json(const Integer& v) {
  static const Integer lo{std::numeric_limits<std::int64_t>::min()};
  static const Integer hi{std::numeric_limits<std::int64_t>::max()};
  if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
  return v.str();
}

Integer integer_from_json(const json& j, const std::string& what) {
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

const json& member(const json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw ValidationError(what + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError(what + ": missing field \"" + key + "\"");
  return *it;
}

std::uint64_t u64_from_json(const json& j, const std::string& what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  throw ValidationError(what + ": expected a non-negative integer");
}

bool bool_from_json(const json& j, const std::string& what) {
  if (!j.is_boolean()) throw ValidationError(what + ": expected a boolean");
  return j.get<bool>();
}

std::string string_from_json(const json& j, const std::string& what) {
  if (!j.is_string()) throw ValidationError(what + ": expected a string");
  return j.get<std::string>();
}

OrderStatus order_status_from_string(const std::string& s, const std::string& what) {
  for (OrderStatus v : {OrderStatus::excluded, OrderStatus::trivial_only,
                        OrderStatus::constrained, OrderStatus::skipped})
    if (s == to_string(v)) return v;
  throw ValidationError(what + ": unknown status \"" + s + "\"");
}

std::string completeness_to_string(Completeness c) {
  switch (c) {
    case Completeness::exact: return "exact";
    case Completeness::aggregated: return "aggregated";
    case Completeness::unknown: return "unknown";
  }
  return "unknown";
}

Completeness completeness_from_string(const std::string& s, const std::string& what) {
  for (Completeness v : {Completeness::exact, Completeness::aggregated, Completeness::unknown})
    if (s == completeness_to_string(v)) return v;
  throw ValidationError(what + ": unknown completeness \"" + s + "\"");
}

json nu_to_json(const NuVector& nu) {
  json out = json::array();
  for (const Integer& v : nu) out.push_back(integer_to_json(v));
  return out;
}

NuVector nu_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + ": expected an array");
  NuVector nu;
  nu.reserve(j.size());
  for (const json& v : j) nu.push_back(integer_from_json(v, what));
  return nu;
}

json tower_to_json(const Tower& tower) {
  json out = json::object();
  for (const auto& [level, nu] : tower) out[std::to_string(level)] = nu_to_json(nu);
  return out;
}

Tower tower_from_json(const json& j, const std::string& what) {
  if (!j.is_object()) throw ValidationError(what + ": expected an object");
  Tower tower;
  for (const auto& [key, value] : j.items()) {
    std::uint64_t level = 0;
    try {
      std::size_t used = 0;
      level = std::stoull(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ValidationError(what + ": level key \"" + key + "\" is not an integer");
    }
    tower[level] = nu_from_json(value, what + " level " + key);
  }
  return tower;
}

json graph_to_json(const PrimeGraph& g) {
  json edges = json::array();
  for (const auto& [p, q] : g.edges) edges.push_back(json::array({p, q}));
  return json{{"vertices", g.vertices}, {"edges", edges}};
}

PrimeGraph graph_from_json(const json& j, const std::string& what) {
  PrimeGraph g;
  for (const json& v : member(j, "vertices", what))
    g.vertices.push_back(u64_from_json(v, what + " vertex"));
  for (const json& e : member(j, "edges", what)) {
    if (!e.is_array() || e.size() != 2)
      throw ValidationError(what + ": each edge must be a pair");
    g.edges.emplace_back(u64_from_json(e[0], what + " edge"),
                         u64_from_json(e[1], what + " edge"));
  }
  for (const auto& [p, q] : g.edges) {
    const auto& vs = g.vertices;
    if (p >= q || std::find(vs.begin(), vs.end(), p) == vs.end() ||
        std::find(vs.begin(), vs.end(), q) == vs.end())
      throw ValidationError(what + ": edge {" + std::to_string(p) + "," +
                            std::to_string(q) + "} not between ordered vertices");
  }
  return g;
}

json order_to_json(std::uint64_t k, const OrderResult& r,
                   const std::vector<std::string>& support) {
  json cases = json::array();
  for (const CaseResult& c : r.cases) {
    json sols = json::array();
    for (const NuVector& nu : c.solutions) sols.push_back(nu_to_json(nu));
    cases.push_back(json{{"lower", tower_to_json(c.lower)},
                         {"solutions", std::move(sols)},
                         {"completeness", completeness_to_string(c.completeness)},
                         {"aborted", c.aborted}});
  }
  json solutions = json::array();
  for (const Tower& tower : r.solutions) solutions.push_back(tower_to_json(tower));
  return json{{"order", k},
              {"status", to_string(r.status)},
              {"zc", to_string(zc_status(r))},
              {"element_order", r.element_order},
              {"exhaustive", r.exhaustive},
              {"cases_total", r.cases_total},
              {"cases_examined", r.cases_examined},
              {"note", r.note},
              {"support", support},
              {"solutions", std::move(solutions)},
              {"cases", std::move(cases)}};
}

void fill_supports(const CharacterTable& table, SpectrumReport& rep) {
  for (const auto& [k, result] : rep.verdicts) {
    std::vector<std::string>& names = rep.supports[k];
    for (std::uint32_t c : support_classes(table, k)) names.push_back(table.classes[c].name);
  }
}

std::string joined_orders(const std::vector<std::uint64_t>& orders) {
  std::ostringstream os;
  for (std::size_t i = 0; i < orders.size(); ++i) os << (i ? ", " : "") << orders[i];
  return os.str();
}

std::string graph_line(const PrimeGraph& g) {
  std::ostringstream os;
  os << "vertices " << joined_orders(g.vertices);
  if (g.edges.empty()) {
    os << "; no edges";
  } else {
    os << "; edges";
    for (const auto& [p, q] : g.edges) os << " {" << p << "," << q << "}";
  }
  return os.str();
}

}  // namespace

SpectrumReport make_report(const CharacterTable& table, const SpectrumResult& spectrum) {
  SpectrumReport rep;
  rep.group = table.group;
  rep.verdicts = spectrum.verdicts;
  rep.graph_g = prime_graph_of_group(table);
  rep.graph_v.vertices = rep.graph_g.vertices;
  std::set<std::pair<std::uint64_t, std::uint64_t>> edges(rep.graph_g.edges.begin(),
                                                          rep.graph_g.edges.end());
  const auto& vs = rep.graph_g.vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const auto it = rep.verdicts.find(vs[i] * vs[j]);
      if (it != rep.verdicts.end() && it->second.status != OrderStatus::excluded)
        edges.emplace(vs[i], vs[j]);
    }
  }
  rep.graph_v.edges.assign(edges.begin(), edges.end());
  fill_supports(table, rep);
  return rep;
}

SpectrumReport make_report(const CharacterTable& table, const KimmerleResult& kimmerle) {
  SpectrumReport rep;
  rep.group = table.group;
  rep.verdicts = kimmerle.spectrum.verdicts;
  rep.graph_g = kimmerle.graph_g;
  rep.graph_v = kimmerle.graph_v;
  rep.kc_evaluated = true;
  rep.kc_confirmed = kimmerle.confirmed;
  rep.kc_inconclusive = kimmerle.inconclusive;
  rep.skipped_orders = kimmerle.skipped_orders;
  fill_supports(table, rep);
  return rep;
}

nlohmann::json report_to_json(const SpectrumReport& rep) {
  static const std::vector<std::string> no_support;
  json orders = json::array();
  for (const auto& [k, result] : rep.verdicts) {
    const auto it = rep.supports.find(k);
    orders.push_back(order_to_json(k, result,
                                   it == rep.supports.end() ? no_support : it->second));
  }
  return json{{"group", rep.group},
              {"orders", std::move(orders)},
              {"prime_graph_group", graph_to_json(rep.graph_g)},
              {"prime_graph_units", graph_to_json(rep.graph_v)},
              {"kimmerle", json{{"evaluated", rep.kc_evaluated},
                                {"confirmed", rep.kc_confirmed},
                                {"inconclusive", rep.kc_inconclusive},
                                {"skipped_orders", rep.skipped_orders}}}};
}

SpectrumReport parse_spectrum_report(const nlohmann::json& j) {
  SpectrumReport rep;
  rep.group = string_from_json(member(j, "group", "report"), "report group");

  const json& orders = member(j, "orders", "report");
  if (!orders.is_array()) throw ValidationError("report: \"orders\" must be an array");
  for (const json& entry : orders) {
    const std::uint64_t k = u64_from_json(member(entry, "order", "order entry"), "order");
    const std::string what = "order " + std::to_string(k);
    if (rep.verdicts.count(k)) throw ValidationError(what + ": duplicate entry");

    OrderResult r;
    r.order = k;
    r.status = order_status_from_string(
        string_from_json(member(entry, "status", what), what + " status"), what);
    r.element_order = bool_from_json(member(entry, "element_order", what), what);
    r.exhaustive = bool_from_json(member(entry, "exhaustive", what), what);
    r.cases_total = u64_from_json(member(entry, "cases_total", what), what);
    r.cases_examined = u64_from_json(member(entry, "cases_examined", what), what);
    r.note = string_from_json(member(entry, "note", what), what + " note");
    for (const json& c : member(entry, "cases", what)) {
      CaseResult cr;
      cr.lower = tower_from_json(member(c, "lower", what), what + " case lower");
      for (const json& nu : member(c, "solutions", what))
        cr.solutions.push_back(nu_from_json(nu, what + " case solution"));
      cr.completeness = completeness_from_string(
          string_from_json(member(c, "completeness", what), what), what);
      cr.aborted = bool_from_json(member(c, "aborted", what), what);
      r.cases.push_back(std::move(cr));
    }
    for (const json& tower : member(entry, "solutions", what))
      r.solutions.push_back(tower_from_json(tower, what + " solution"));

    const std::string zc = string_from_json(member(entry, "zc", what), what + " zc");
    if (zc != to_string(zc_status(r)))
      throw ValidationError(what + ": zc label \"" + zc + "\" contradicts status \"" +
                            to_string(r.status) + "\"");

    std::vector<std::string> support;
    for (const json& name : member(entry, "support", what))
      support.push_back(string_from_json(name, what + " support"));

    rep.supports.emplace(k, std::move(support));
    rep.verdicts.emplace(k, std::move(r));
  }

  rep.graph_g = graph_from_json(member(j, "prime_graph_group", "report"), "group graph");
  rep.graph_v = graph_from_json(member(j, "prime_graph_units", "report"), "unit graph");
  const std::set<std::pair<std::uint64_t, std::uint64_t>> unit_edges(rep.graph_v.edges.begin(),
                                                                     rep.graph_v.edges.end());
  for (const auto& edge : rep.graph_g.edges)
    if (!unit_edges.count(edge))
      throw ValidationError("report: the group graph has an edge the unit graph lacks");

  const json& kc = member(j, "kimmerle", "report");
  rep.kc_evaluated = bool_from_json(member(kc, "evaluated", "kimmerle"), "kimmerle evaluated");
  rep.kc_confirmed = bool_from_json(member(kc, "confirmed", "kimmerle"), "kimmerle confirmed");
  rep.kc_inconclusive =
      bool_from_json(member(kc, "inconclusive", "kimmerle"), "kimmerle inconclusive");
  for (const json& v : member(kc, "skipped_orders", "kimmerle"))
    rep.skipped_orders.push_back(u64_from_json(v, "kimmerle skipped order"));
  return rep;
}

std::string report_to_markdown(const SpectrumReport& rep) {
  std::ostringstream os;
  os << "# Torsion unit spectrum: " << rep.group << "\n\n";
  os << "## Prime graphs\n\n";
  os << "- group: " << graph_line(rep.graph_g) << "\n";
  os << "- normalized units: " << graph_line(rep.graph_v) << "\n";
  if (!rep.kc_evaluated) {
    os << "- Kimmerle check: not part of this run\n";
  } else if (rep.kc_confirmed) {
    os << "- Kimmerle check: confirmed, the prime graphs agree\n";
  } else if (rep.kc_inconclusive) {
    os << "- Kimmerle check: inconclusive, orders " << joined_orders(rep.skipped_orders)
       << " left unresolved\n";
  } else {
    os << "- Kimmerle check: not confirmed, the unit graph gained edges\n";
  }

  for (const auto& [k, r] : rep.verdicts) {
    os << "\n## Order " << k << ": " << to_string(r.status) << "\n\n";
    if (!r.note.empty()) os << r.note << "\n\n";
    os << "- rational conjugacy: " << to_string(zc_status(r)) << "\n";
    os << "- cases examined: " << r.cases_examined << " of " << r.cases_total << "\n";
    os << "- solutions: " << r.solutions.size()
       << (r.exhaustive ? " (complete)" : " (partial)") << "\n";
    if (r.solutions.empty()) continue;

    std::vector<std::string> support;
    if (const auto it = rep.supports.find(k); it != rep.supports.end()) support = it->second;
    const std::size_t width = r.solutions.front().count(k) ? r.solutions.front().at(k).size() : 0;
    while (support.size() < width) support.push_back("c" + std::to_string(support.size()));

    const bool towers = std::any_of(r.solutions.begin(), r.solutions.end(),
                                    [](const Tower& t) { return t.size() > 1; });
    os << "\n|";
    for (std::size_t i = 0; i < width; ++i) os << " nu(" << support[i] << ") |";
    if (towers) os << " powers |";
    os << "\n|";
    for (std::size_t i = 0; i < width; ++i) os << "---:|";
    if (towers) os << "---|";
    os << "\n";
    for (const Tower& tower : r.solutions) {
      os << "|";
      const auto top = tower.find(k);
      for (std::size_t i = 0; i < width; ++i)
        os << " " << (top != tower.end() && i < top->second.size() ? top->second[i].str() : "")
           << " |";
      if (towers) {
        os << " ";
        bool first = true;
        for (const auto& [level, nu] : tower) {
          if (level == k) continue;
          os << (first ? "" : "; ") << level << ": (";
          for (std::size_t i = 0; i < nu.size(); ++i) os << (i ? ", " : "") << nu[i].str();
          os << ")";
          first = false;
        }
        os << " |";
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace helpkit
