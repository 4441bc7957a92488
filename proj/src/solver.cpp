#include "helpkit/solver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>

#include "helpkit/rational.hpp"

namespace helpkit {
namespace {

// A linear form sum(a[i]*x[i]) constrained to lo <= value <= hi.  Rows built
// from character data additionally require value + shift == 0 (mod order).
struct Band {
  std::vector<Integer> a;
  Integer lo;
  Integer hi;
  bool modular = false;
  Integer shift = 0;
};

Integer positive_mod(const Integer& v, const Integer& m) {
  Integer r = v % m;
  if (r < 0) r += m;
  return r;
}

Integer min_term(const Integer& a, const Integer& lo, const Integer& hi) {
  return a >= 0 ? a * lo : a * hi;
}

Integer max_term(const Integer& a, const Integer& lo, const Integer& hi) {
  return a >= 0 ? a * hi : a * lo;
}

// Gauss-Jordan inverse of a square rational matrix; empty result if singular.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return {};
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational d = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational f = m[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[row][j] -= f * m[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

class Search {
 public:
  Search(std::vector<Band> bands, std::size_t vars, Integer order,
         const SolveLimits& limits)
      : bands_(std::move(bands)), vars_(vars), order_(std::move(order)),
        deadline_(limits.deadline) {}

  // Returns false when the variable boxes prove the system infeasible.
  bool bound() {
    if (!initial_boxes()) return false;
    for (int sweep = 0; sweep < 64; ++sweep) {
      bool changed = false;
      for (const Band& band : bands_) {
        if (!tighten(band, changed)) return false;
      }
      if (!changed) break;
    }
    return true;
  }

  bool enumerate(std::vector<std::vector<Integer>>& out) {
    order_vars();
    build_suffix_tables();
    partial_.assign(bands_.size(), Integer(0));
    value_.assign(vars_, Integer(0));
    aborted_ = false;
    dfs(0, out);
    return !aborted_;
  }

  const std::vector<Integer>& lower() const { return lo_; }
  const std::vector<Integer>& upper() const { return hi_; }

 private:
  // Seed finite per-variable boxes by inverting a full-rank row subset and
  // pushing the row windows through the inverse.  Without full column rank
  // no finite box exists, reported as failure by returning an empty box set.
  bool initial_boxes() {
    std::vector<std::size_t> chosen;
    std::vector<std::vector<Rational>> echelon;
    std::vector<std::size_t> pivots;
    for (std::size_t r = 0; r < bands_.size() && chosen.size() < vars_; ++r) {
      std::vector<Rational> row(vars_);
      for (std::size_t i = 0; i < vars_; ++i) row[i] = Rational(bands_[r].a[i]);
      for (std::size_t b = 0; b < echelon.size(); ++b) {
        if (row[pivots[b]] == 0) continue;
        const Rational f = row[pivots[b]];
        for (std::size_t i = 0; i < vars_; ++i) row[i] -= f * echelon[b][i];
      }
      std::size_t p = 0;
      while (p < vars_ && row[p] == 0) ++p;
      if (p == vars_) continue;
      const Rational d = row[p];
      for (std::size_t i = 0; i < vars_; ++i) row[i] /= d;
      echelon.push_back(std::move(row));
      pivots.push_back(p);
      chosen.push_back(r);
    }
    if (chosen.size() < vars_) return rank_deficient_ = true, false;

    std::vector<std::vector<Rational>> m(vars_, std::vector<Rational>(vars_));
    for (std::size_t r = 0; r < vars_; ++r)
      for (std::size_t i = 0; i < vars_; ++i)
        m[r][i] = Rational(bands_[chosen[r]].a[i]);
    const auto inv = invert(std::move(m));
    if (inv.empty()) return rank_deficient_ = true, false;

    lo_.assign(vars_, Integer(0));
    hi_.assign(vars_, Integer(0));
    for (std::size_t i = 0; i < vars_; ++i) {
      Rational lo(0), hi(0);
      for (std::size_t r = 0; r < vars_; ++r) {
        const Band& band = bands_[chosen[r]];
        const Rational& c = inv[i][r];
        if (c >= 0) {
          lo += c * Rational(band.lo);
          hi += c * Rational(band.hi);
        } else {
          lo += c * Rational(band.hi);
          hi += c * Rational(band.lo);
        }
      }
      lo_[i] = ceil_rational(lo);
      hi_[i] = floor_rational(hi);
      if (lo_[i] > hi_[i]) return false;
    }
    return true;
  }

  bool tighten(const Band& band, bool& changed) {
    Integer total_min(0), total_max(0);
    for (std::size_t i = 0; i < vars_; ++i) {
      total_min += min_term(band.a[i], lo_[i], hi_[i]);
      total_max += max_term(band.a[i], lo_[i], hi_[i]);
    }
    if (total_min > band.hi || total_max < band.lo) return false;
    for (std::size_t i = 0; i < vars_; ++i) {
      const Integer& a = band.a[i];
      if (a == 0) continue;
      const Integer rest_min = total_min - min_term(a, lo_[i], hi_[i]);
      const Integer rest_max = total_max - max_term(a, lo_[i], hi_[i]);
      // a*x must fit in [band.lo - rest_max, band.hi - rest_min]
      Integer t_lo = band.lo - rest_max;
      Integer t_hi = band.hi - rest_min;
      Integer new_lo, new_hi;
      if (a > 0) {
        new_lo = ceil_div(t_lo, a);
        new_hi = floor_div(t_hi, a);
      } else {
        new_lo = ceil_div(t_hi, a);
        new_hi = floor_div(t_lo, a);
      }
      if (new_lo > lo_[i]) {
        lo_[i] = new_lo;
        changed = true;
      }
      if (new_hi < hi_[i]) {
        hi_[i] = new_hi;
        changed = true;
      }
      if (lo_[i] > hi_[i]) return false;
      total_min = 0;
      total_max = 0;
      for (std::size_t j = 0; j < vars_; ++j) {
        total_min += min_term(band.a[j], lo_[j], hi_[j]);
        total_max += max_term(band.a[j], lo_[j], hi_[j]);
      }
    }
    return true;
  }

  void order_vars() {
    order_idx_.resize(vars_);
    std::iota(order_idx_.begin(), order_idx_.end(), std::size_t{0});
    std::vector<Integer> weight(vars_, Integer(0));
    for (const Band& band : bands_)
      for (std::size_t i = 0; i < vars_; ++i) {
        Integer v = abs(band.a[i]);
        if (v > weight[i]) weight[i] = std::move(v);
      }
    std::stable_sort(order_idx_.begin(), order_idx_.end(),
                     [&](std::size_t x, std::size_t y) { return weight[x] > weight[y]; });
  }

  void build_suffix_tables() {
    const std::size_t depth = vars_ + 1;
    suf_min_.assign(depth, std::vector<Integer>(bands_.size(), Integer(0)));
    suf_max_.assign(depth, std::vector<Integer>(bands_.size(), Integer(0)));
    for (std::size_t d = vars_; d-- > 0;) {
      const std::size_t v = order_idx_[d];
      for (std::size_t r = 0; r < bands_.size(); ++r) {
        suf_min_[d][r] = suf_min_[d + 1][r] + min_term(bands_[r].a[v], lo_[v], hi_[v]);
        suf_max_[d][r] = suf_max_[d + 1][r] + max_term(bands_[r].a[v], lo_[v], hi_[v]);
      }
    }
  }

  bool expired() {
    if (!deadline_) return false;
    if (++ticks_ % 1024 != 1) return aborted_;
    if (std::chrono::steady_clock::now() > *deadline_) aborted_ = true;
    return aborted_;
  }

  void dfs(std::size_t depth, std::vector<std::vector<Integer>>& out) {
    if (expired()) return;
    if (depth == vars_) {
      for (std::size_t r = 0; r < bands_.size(); ++r) {
        const Band& band = bands_[r];
        if (partial_[r] < band.lo || partial_[r] > band.hi) return;
        if (band.modular && positive_mod(partial_[r] + band.shift, order_) != 0) return;
      }
      out.push_back(value_);
      return;
    }
    const std::size_t v = order_idx_[depth];
    Integer from = lo_[v];
    Integer to = hi_[v];
    for (std::size_t r = 0; r < bands_.size(); ++r) {
      const Band& band = bands_[r];
      const Integer& a = band.a[v];
      if (a == 0) {
        if (partial_[r] + suf_min_[depth][r] > band.hi) return;
        if (partial_[r] + suf_max_[depth][r] < band.lo) return;
        continue;
      }
      // a*x constrained by what the remaining variables can still absorb.
      const Integer t_lo = band.lo - partial_[r] - suf_max_[depth + 1][r];
      const Integer t_hi = band.hi - partial_[r] - suf_min_[depth + 1][r];
      Integer cand_lo, cand_hi;
      if (a > 0) {
        cand_lo = ceil_div(t_lo, a);
        cand_hi = floor_div(t_hi, a);
      } else {
        cand_lo = ceil_div(t_hi, a);
        cand_hi = floor_div(t_lo, a);
      }
      if (cand_lo > from) from = cand_lo;
      if (cand_hi < to) to = cand_hi;
      if (from > to) return;
    }
    for (Integer x = from; x <= to; ++x) {
      if (expired()) return;
      value_[v] = x;
      for (std::size_t r = 0; r < bands_.size(); ++r) partial_[r] += bands_[r].a[v] * x;
      dfs(depth + 1, out);
      for (std::size_t r = 0; r < bands_.size(); ++r) partial_[r] -= bands_[r].a[v] * x;
    }
    value_[v] = 0;
  }

 public:
  bool rank_deficient_ = false;
  bool aborted_ = false;

 private:
  std::vector<Band> bands_;
  std::size_t vars_;
  Integer order_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::vector<Integer> lo_, hi_;
  std::vector<std::size_t> order_idx_;
  std::vector<std::vector<Integer>> suf_min_, suf_max_;
  std::vector<Integer> partial_;
  std::vector<Integer> value_;
  std::uint64_t ticks_ = 0;
};

}  // namespace

SolveOutcome solve_system(const ConstraintSystem& sys, const SolveLimits& limits) {
  SolveOutcome out;
  const std::size_t n = sys.support.size();
  if (n == 0) return out;  // sum(nu) = 1 has no solution over no classes

  const Integer order(sys.order);

  // Constant rows decide themselves; contradictory ones end the search.
  std::vector<const MuRow*> live;
  for (const MuRow& row : sys.rows) {
    const bool zero = std::all_of(row.coeffs.begin(), row.coeffs.end(),
                                  [](const Integer& c) { return c == 0; });
    if (!zero) {
      live.push_back(&row);
      continue;
    }
    if (row.constant < 0 || row.constant > row.cap ||
        positive_mod(row.constant, order) != 0)
      return out;
  }

  // Classes no selected row can tell apart collapse into one aggregate
  // variable; a singleton-only grouping keeps the enumeration exact.
  std::map<std::vector<Integer>, std::vector<std::size_t>> grouping;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Integer> column;
    column.reserve(live.size());
    for (const MuRow* row : live) column.push_back(row->coeffs[i]);
    grouping[std::move(column)].push_back(i);
  }
  std::vector<std::vector<std::size_t>> groups;
  groups.reserve(grouping.size());
  for (auto& [column, members] : grouping) groups.push_back(std::move(members));
  std::sort(groups.begin(), groups.end());
  const std::size_t m = groups.size();
  const bool merged = m != n;
  out.completeness = merged ? Completeness::aggregated : Completeness::exact;

  std::vector<Band> bands;
  {
    Band ones;
    ones.a.assign(m, Integer(1));
    ones.lo = 1;
    ones.hi = 1;
    bands.push_back(std::move(ones));
  }
  std::set<std::tuple<std::vector<Integer>, Integer, Integer>> seen;
  for (const MuRow* row : live) {
    Band band;
    band.a.reserve(m);
    for (const auto& group : groups) band.a.push_back(row->coeffs[group.front()]);
    band.lo = -row->constant;
    band.hi = row->cap - row->constant;
    band.modular = true;
    band.shift = row->constant;
    if (!seen.emplace(band.a, band.lo, band.hi).second) continue;
    bands.push_back(std::move(band));
  }
  const auto widest = [](const Band& band) {
    Integer m(0);
    for (const Integer& c : band.a) {
      Integer v = abs(c);
      if (v > m) m = std::move(v);
    }
    return m;
  };
  std::stable_sort(bands.begin() + 1, bands.end(), [&](const Band& x, const Band& y) {
    return widest(x) < widest(y);
  });

  Search search(std::move(bands), m, order, limits);
  if (!search.bound()) {
    if (search.rank_deficient_) {
      out.completeness = Completeness::unknown;
      return out;
    }
    return out;  // boxes crossed: infeasible, completeness already honest
  }

  std::vector<std::vector<Integer>> found;
  const bool finished = search.enumerate(found);
  out.aborted = !finished;

  std::sort(found.begin(), found.end());
  out.solutions.reserve(found.size());
  for (const auto& w : found) {
    NuVector nu(n, Integer(0));
    for (std::size_t g = 0; g < m; ++g) nu[groups[g].front()] = w[g];
    out.solutions.push_back(std::move(nu));
  }
  std::sort(out.solutions.begin(), out.solutions.end());
  out.feasible = !out.solutions.empty();
  return out;
}

}  // namespace helpkit
