#include "helpkit/zassenhaus.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <set>
#include <stdexcept>

#include "helpkit/cyclotomic.hpp"

namespace helpkit {

std::string to_string(OrderStatus status) {
  switch (status) {
    case OrderStatus::excluded: return "excluded";
    case OrderStatus::trivial_only: return "trivial-only";
    case OrderStatus::constrained: return "constrained";
    case OrderStatus::skipped: return "skipped";
  }
  return "unknown";
}

std::string to_string(ZcStatus status) {
  switch (status) {
    case ZcStatus::holds: return "holds";
    case ZcStatus::not_decided: return "not decided";
    case ZcStatus::no_units: return "no units";
    case ZcStatus::unresolved: return "unresolved";
  }
  return "unknown";
}

ZcStatus zc_status(const OrderResult& result) {
  switch (result.status) {
    case OrderStatus::excluded: return ZcStatus::no_units;
    case OrderStatus::trivial_only: return ZcStatus::holds;
    case OrderStatus::constrained: return ZcStatus::not_decided;
    case OrderStatus::skipped: return ZcStatus::unresolved;
  }
  return ZcStatus::unresolved;
}

namespace {

bool tower_is_trivial(const CharacterTable& table, const Tower& tower) {
  for (const auto& [level, nu] : tower) {
    if (!is_trivial_solution(table, support_classes(table, level), nu, level))
      return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

OrderResult admissible_tuples(const CharacterTable& table,
                              const std::vector<BrauerTable>& brauers,
                              std::uint64_t k, const Selection& selection,
                              const std::map<std::uint64_t, OrderResult>& spectra,
                              const Budget& budget, unsigned jobs) {
  if (k < 2) throw std::invalid_argument("unit order must be at least 2");
  OrderResult res;
  res.order = k;
  for (const auto& cls : table.classes)
    if (cls.order == k) res.element_order = true;

  if (table.exponent % k != 0) {
    res.status = OrderStatus::excluded;
    res.note = "not a divisor of the exponent";
    return res;
  }

  std::map<std::uint64_t, std::vector<Tower>> solved;
  for (std::uint64_t p : prime_factors_u64(k)) {
    const std::uint64_t m = k / p;
    if (m <= 1 || solved.count(m)) continue;
    auto it = spectra.find(m);
    if (it == spectra.end())
      throw std::logic_error("missing verdict for order " + std::to_string(m) +
                             " needed by order " + std::to_string(k));
    const OrderResult& sub = it->second;
    if (sub.status == OrderStatus::skipped || !sub.exhaustive) {
      res.status = OrderStatus::skipped;
      res.note = "order " + std::to_string(m) + " unresolved";
      return res;
    }
    solved[m] = sub.solutions;
  }

  const auto cases = divisor_cases(k, solved);
  res.cases_total = cases.size();

  if (budget.max_cases && cases.size() > *budget.max_cases) {
    res.status = OrderStatus::skipped;
    res.note = std::to_string(cases.size()) + " cases exceed the case budget of " +
               std::to_string(*budget.max_cases);
    return res;
  }

  SolveLimits limits;
  if (budget.max_seconds) {
    limits.deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(*budget.max_seconds));
  }

  const auto solve_case = [&](const Tower& lower) {
    const auto sys = build_system(table, brauers, k, selection, lower);
    auto out = solve_system(sys, limits);
    CaseResult cr;
    cr.lower = lower;
    cr.solutions = std::move(out.solutions);
    cr.completeness = out.completeness;
    cr.aborted = out.aborted;
    return cr;
  };

  res.cases.resize(cases.size());
  if (jobs > 1 && cases.size() > 1) {
    std::size_t next = 0;
    while (next < cases.size()) {
      const std::size_t batch = std::min<std::size_t>(jobs, cases.size() - next);
      std::vector<std::future<CaseResult>> futures;
      futures.reserve(batch);
      for (std::size_t i = 0; i < batch; ++i)
        futures.push_back(std::async(std::launch::async, solve_case,
                                     std::cref(cases[next + i])));
      for (std::size_t i = 0; i < batch; ++i) res.cases[next + i] = futures[i].get();
      next += batch;
    }
  } else {
    for (std::size_t i = 0; i < cases.size(); ++i) res.cases[i] = solve_case(cases[i]);
  }
  res.cases_examined = res.cases.size();

  bool any_aborted = false;
  bool any_unknown = false;
  bool all_exact = true;
  for (const CaseResult& cr : res.cases) {
    any_aborted = any_aborted || cr.aborted;
    any_unknown = any_unknown || cr.completeness == Completeness::unknown;
    all_exact = all_exact && cr.completeness == Completeness::exact;
    for (const NuVector& nu : cr.solutions) {
      Tower full = cr.lower;
      full[k] = nu;
      res.solutions.push_back(std::move(full));
    }
  }
  std::sort(res.solutions.begin(), res.solutions.end());
  res.solutions.erase(std::unique(res.solutions.begin(), res.solutions.end()),
                      res.solutions.end());

  res.exhaustive = !any_aborted && !any_unknown && all_exact;
  if (any_aborted || any_unknown) {
    if (!res.solutions.empty()) {
      res.status = OrderStatus::constrained;
      res.note = any_aborted ? "partial: time budget interrupted the enumeration"
                             : "partial: some cases have free directions";
    } else {
      res.status = OrderStatus::skipped;
      res.note = any_aborted ? "time budget exhausted"
                             : "free directions prevent a verdict";
    }
  } else if (res.solutions.empty()) {
    res.status = OrderStatus::excluded;
    res.exhaustive = true;
  } else if (all_exact &&
             std::all_of(res.solutions.begin(), res.solutions.end(),
                         [&](const Tower& tw) { return tower_is_trivial(table, tw); })) {
    res.status = OrderStatus::trivial_only;
  } else {
    res.status = OrderStatus::constrained;
    if (!all_exact)
      res.note = "solution families listed by one representative each";
  }

  if (res.element_order && res.status == OrderStatus::excluded)
    throw std::logic_error("order " + std::to_string(k) +
                           " is an element order but came out excluded; "
                           "the table data must be inconsistent");
  return res;
}

SpectrumResult order_spectrum(const CharacterTable& table,
                              const std::vector<BrauerTable>& brauers,
                              const Selection& selection,
                              const SpectrumOptions& options) {
  std::set<std::uint64_t> targets;
  if (options.orders.empty()) {
    for (std::uint64_t d : divisors(table.exponent))
      if (d > 1) targets.insert(d);
  } else {
    for (std::uint64_t k : options.orders) {
      if (k < 2) throw std::invalid_argument("unit order must be at least 2");
      targets.insert(k);
      if (table.exponent % k == 0)
        for (std::uint64_t d : divisors(k))
          if (d > 1) targets.insert(d);
    }
  }

  SpectrumResult out;
  for (std::uint64_t k : targets)
    out.verdicts.emplace(k, admissible_tuples(table, brauers, k, selection,
                                              out.verdicts, options.budget,
                                              options.jobs));
  return out;
}

PrimeGraph prime_graph_of_group(const CharacterTable& table) {
  PrimeGraph g;
  const Integer order = table.order;
  Integer rest = order;
  for (std::uint64_t p = 2; Integer(p) * p <= rest; ++p) {
    if (rest % p != 0) continue;
    g.vertices.push_back(p);
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) g.vertices.push_back(rest.convert_to<std::uint64_t>());

  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
      const std::uint64_t pq = g.vertices[i] * g.vertices[j];
      const bool edge = std::any_of(table.classes.begin(), table.classes.end(),
                                    [&](const ConjugacyClass& cls) {
                                      return cls.order % pq == 0;
                                    });
      if (edge) g.edges.emplace_back(g.vertices[i], g.vertices[j]);
    }
  }
  return g;
}

KimmerleResult kimmerle_check(const CharacterTable& table,
                              const std::vector<BrauerTable>& brauers,
                              const Selection& selection, const Budget& budget,
                              unsigned jobs) {
  KimmerleResult res;
  res.graph_g = prime_graph_of_group(table);

  SpectrumOptions options;
  options.budget = budget;
  options.jobs = jobs;
  for (std::size_t i = 0; i < res.graph_g.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < res.graph_g.vertices.size(); ++j)
      options.orders.push_back(res.graph_g.vertices[i] * res.graph_g.vertices[j]);
  res.spectrum = order_spectrum(table, brauers, selection, options);

  res.graph_v.vertices = res.graph_g.vertices;
  const std::set<std::pair<std::uint64_t, std::uint64_t>> group_edges(
      res.graph_g.edges.begin(), res.graph_g.edges.end());
  for (std::size_t i = 0; i < res.graph_g.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < res.graph_g.vertices.size(); ++j) {
      const std::uint64_t p = res.graph_g.vertices[i];
      const std::uint64_t q = res.graph_g.vertices[j];
      const OrderResult& verdict = res.spectrum.verdicts.at(p * q);
      if (verdict.status == OrderStatus::skipped) res.skipped_orders.push_back(p * q);
      if (verdict.status != OrderStatus::excluded)
        res.graph_v.edges.emplace_back(p, q);
    }
  }
  res.inconclusive = !res.skipped_orders.empty();
  res.confirmed = !res.inconclusive && res.graph_v.edges == res.graph_g.edges;
  return res;
}

}  // namespace helpkit
