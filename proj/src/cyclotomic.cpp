#include "helpkit/cyclotomic.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace helpkit {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::vector<std::uint32_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint32_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(static_cast<std::uint32_t>(p));
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(static_cast<std::uint32_t>(n));
  return ps;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw std::domain_error("euler_phi(0)");
  std::uint64_t result = n;
  for (std::uint64_t p : distinct_prime_factors(n)) result = result / p * (p - 1);
  return result;
}

int moebius(std::uint64_t n) {
  if (n == 0) throw std::domain_error("moebius(0)");
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> ds;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

namespace {

std::shared_mutex g_phi_poly_mutex;
std::map<std::uint32_t, std::vector<Integer>> g_phi_polys;

// Exact division of integer polynomials (divisor monic), quotient returned.
std::vector<Integer> poly_div_exact(const std::vector<Integer>& num, const std::vector<Integer>& den) {
  std::vector<Integer> rem = num;
  std::vector<Integer> quot(num.size() - den.size() + 1, Integer(0));
  for (std::size_t i = num.size(); i-- >= den.size();) {
    Integer c = rem[i];
    if (c != 0) {
      std::size_t shift = i - (den.size() - 1);
      quot[shift] = c;
      for (std::size_t j = 0; j < den.size(); ++j) rem[shift + j] -= c * den[j];
    }
    if (i == den.size() - 1) break;
  }
  return quot;
}

std::vector<Integer> compute_cyclotomic_poly(std::uint32_t n) {
  // x^n - 1 divided by the product of Phi_d for proper divisors d.
  std::vector<Integer> poly(n + 1, Integer(0));
  poly[0] = -1;
  poly[n] = 1;
  for (std::uint64_t d : divisors(n)) {
    if (d == n) continue;
    poly = poly_div_exact(poly, cyclotomic_polynomial(static_cast<std::uint32_t>(d)));
  }
  return poly;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(std::uint32_t n) {
  if (n == 0) throw std::domain_error("cyclotomic_polynomial(0)");
  {
    std::shared_lock lock(g_phi_poly_mutex);
    auto it = g_phi_polys.find(n);
    if (it != g_phi_polys.end()) return it->second;
  }
  // Compute outside the lock; recursion takes the lock again.
  std::vector<Integer> poly = n == 1 ? std::vector<Integer>{Integer(-1), Integer(1)}
                                     : compute_cyclotomic_poly(n);
  std::unique_lock lock(g_phi_poly_mutex);
  return g_phi_polys.emplace(n, std::move(poly)).first->second;
}

namespace {

// Reduce a dense coefficient vector of length n modulo Phi_n in place;
// afterwards only indices < phi(n) are nonzero.
void reduce_mod_cyclotomic(std::uint32_t n, std::vector<Rational>& c) {
  const std::vector<Integer>& phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = c.size(); i-- > deg;) {
    if (c[i] == 0) continue;
    Rational lead = c[i];
    std::size_t shift = i - deg;
    for (std::size_t j = 0; j < phi.size(); ++j) {
      if (phi[j] != 0) c[shift + j] -= lead * Rational(phi[j]);
    }
  }
}

struct DescentBasis {
  // Reduced power-basis representations of zeta_n^(p*t), t < phi(n/p).
  std::vector<std::vector<Rational>> columns;
};

std::shared_mutex g_descent_mutex;
std::map<std::pair<std::uint32_t, std::uint32_t>, DescentBasis> g_descent_cache;

const DescentBasis& descent_basis(std::uint32_t n, std::uint32_t p) {
  auto key = std::make_pair(n, p);
  {
    std::shared_lock lock(g_descent_mutex);
    auto it = g_descent_cache.find(key);
    if (it != g_descent_cache.end()) return it->second;
  }
  DescentBasis basis;
  const std::uint32_t m = n / p;
  const std::size_t dim_n = euler_phi(n);
  const std::size_t dim_m = euler_phi(m);
  basis.columns.reserve(dim_m);
  for (std::size_t t = 0; t < dim_m; ++t) {
    std::vector<Rational> col(n, Rational(0));
    col[(static_cast<std::uint64_t>(p) * t) % n] = 1;
    reduce_mod_cyclotomic(n, col);
    col.resize(dim_n);
    basis.columns.push_back(std::move(col));
  }
  std::unique_lock lock(g_descent_mutex);
  return g_descent_cache.emplace(key, std::move(basis)).first->second;
}

// Solve sum_t a_t * columns[t] = r; returns empty vector when inconsistent.
std::vector<Rational> solve_descent(const DescentBasis& basis, const std::vector<Rational>& r) {
  const std::size_t rows = r.size();
  const std::size_t cols = basis.columns.size();
  std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(cols + 1, Rational(0)));
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) aug[i][j] = basis.columns[j][i];
  for (std::size_t i = 0; i < rows; ++i) aug[i][cols] = r[i];

  std::vector<std::size_t> pivot_of_col(cols, SIZE_MAX);
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pr = SIZE_MAX;
    for (std::size_t i = row; i < rows; ++i) {
      if (aug[i][col] != 0) {
        pr = i;
        break;
      }
    }
    if (pr == SIZE_MAX) continue;
    std::swap(aug[row], aug[pr]);
    Rational inv = aug[row][col];
    for (std::size_t j = col; j <= cols; ++j) aug[row][j] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || aug[i][col] == 0) continue;
      Rational f = aug[i][col];
      for (std::size_t j = col; j <= cols; ++j) aug[i][j] -= f * aug[row][j];
    }
    pivot_of_col[col] = row;
    ++row;
  }
  // Consistency: all remaining rows must have zero rhs.
  for (std::size_t i = row; i < rows; ++i)
    if (aug[i][cols] != 0) return {};
  std::vector<Rational> a(cols, Rational(0));
  for (std::size_t col = 0; col < cols; ++col)
    if (pivot_of_col[col] != SIZE_MAX) a[col] = aug[pivot_of_col[col]][cols];
  return a;
}

}  // namespace

Cyclotomic::Cyclotomic(const Rational& r) {
  if (r != 0) coeffs_[0] = r;
}
Cyclotomic::Cyclotomic(const Integer& n) : Cyclotomic(Rational(n)) {}
Cyclotomic::Cyclotomic(long n) : Cyclotomic(Rational(n)) {}

Cyclotomic Cyclotomic::root_of_unity(std::uint32_t n, std::int64_t e) {
  if (n == 0) throw std::domain_error("root_of_unity: order 0");
  std::int64_t folded = e % static_cast<std::int64_t>(n);
  if (folded < 0) folded += n;
  std::vector<Rational> dense(n, Rational(0));
  dense[static_cast<std::size_t>(folded)] = 1;
  return canonicalize(n, std::move(dense));
}

Cyclotomic Cyclotomic::from_terms(std::uint32_t n, const std::map<std::uint32_t, Rational>& terms) {
  if (n == 0) throw std::domain_error("from_terms: conductor 0");
  std::vector<Rational> dense(n, Rational(0));
  for (const auto& [e, c] : terms) dense[e % n] += c;
  return canonicalize(n, std::move(dense));
}

Cyclotomic Cyclotomic::canonicalize(std::uint32_t n, std::vector<Rational> dense) {
  dense.resize(std::max<std::size_t>(dense.size(), n), Rational(0));
  // Fold exponents >= n.
  for (std::size_t i = dense.size(); i-- > n;) {
    if (dense[i] != 0) {
      dense[i % n] += dense[i];
      dense[i] = 0;
    }
  }
  dense.resize(n);

  // Conductors congruent to 2 mod 4 are never minimal:
  // zeta_{2m} = -zeta_m^((m+1)/2) for odd m.
  while (n % 4 == 2) {
    std::uint32_t m = n / 2;
    std::vector<Rational> folded(m, Rational(0));
    for (std::uint32_t k = 0; k < n; ++k) {
      if (dense[k] == 0) continue;
      std::uint64_t e = (static_cast<std::uint64_t>(k) * ((m + 1) / 2)) % m;
      if (k % 2 == 0)
        folded[e] += dense[k];
      else
        folded[e] -= dense[k];
    }
    dense = std::move(folded);
    n = m;
  }

  if (n > 1) reduce_mod_cyclotomic(n, dense);

  // Conductor minimization: repeatedly try to descend by a prime factor.
  while (n > 1) {
    const std::size_t dim = euler_phi(n);
    bool all_zero = true;
    for (std::size_t i = 0; i < dim; ++i)
      if (dense[i] != 0) {
        all_zero = false;
        break;
      }
    bool rational_only = all_zero || std::all_of(dense.begin() + 1, dense.begin() + dim,
                                                 [](const Rational& c) { return c == 0; });
    if (rational_only) {
      Rational c0 = dense.empty() ? Rational(0) : dense[0];
      dense.assign(1, c0);
      n = 1;
      break;
    }

    bool descended = false;
    for (std::uint32_t p : distinct_prime_factors(n)) {
      const std::uint32_t m = n / p;
      // Quick necessary check: fixed by Gal(Q(zeta_n)/Q(zeta_m))?
      bool fixed = true;
      for (std::uint64_t j = 1 + m; j < n && fixed; j += m) {
        if (gcd_u64(j, n) != 1) continue;
        std::vector<Rational> image(n, Rational(0));
        for (std::size_t k = 0; k < dim; ++k)
          if (dense[k] != 0) image[(j * k) % n] += dense[k];
        reduce_mod_cyclotomic(n, image);
        for (std::size_t k = 0; k < dim; ++k) {
          if (image[k] != dense[k]) {
            fixed = false;
            break;
          }
        }
      }
      if (!fixed) continue;
      std::vector<Rational> rhs(dense.begin(), dense.begin() + dim);
      std::vector<Rational> sub = solve_descent(descent_basis(n, p), rhs);
      if (sub.empty()) continue;  // not actually in the subfield
      // sub are coefficients on zeta_m^t, t < phi(m); recurse to fold 2 mod 4.
      if (m % 4 == 2 || m == 1) {
        std::vector<Rational> re(m == 1 ? 1 : m, Rational(0));
        for (std::size_t t = 0; t < sub.size(); ++t) re[t % re.size()] += sub[t];
        return canonicalize(m, std::move(re));
      }
      dense = std::move(sub);
      dense.resize(m, Rational(0));
      n = m;
      descended = true;
      break;
    }
    if (!descended) break;
  }

  Cyclotomic out;
  out.conductor_ = n;
  std::size_t dim = n == 1 ? 1 : euler_phi(n);
  for (std::size_t i = 0; i < std::min(dim, dense.size()); ++i)
    if (dense[i] != 0) out.coeffs_[static_cast<std::uint32_t>(i)] = dense[i];
  return out;
}

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) throw std::domain_error("cyclotomic is not rational: " + to_string());
  auto it = coeffs_.find(0);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

bool Cyclotomic::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const auto& kv) { return is_integer(kv.second); });
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& [e, c] : out.coeffs_) c = -c;
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  std::uint64_t big = std::lcm<std::uint64_t>(conductor_, o.conductor_);
  std::vector<Rational> dense(big, Rational(0));
  std::uint64_t sa = big / conductor_, sb = big / o.conductor_;
  for (const auto& [e, c] : coeffs_) dense[e * sa] += c;
  for (const auto& [e, c] : o.coeffs_) dense[e * sb] += c;
  *this = canonicalize(static_cast<std::uint32_t>(big), std::move(dense));
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  std::uint64_t big = std::lcm<std::uint64_t>(conductor_, o.conductor_);
  std::vector<Rational> dense(big, Rational(0));
  std::uint64_t sa = big / conductor_, sb = big / o.conductor_;
  for (const auto& [ea, ca] : coeffs_)
    for (const auto& [eb, cb] : o.coeffs_) dense[(ea * sa + eb * sb) % big] += ca * cb;
  *this = canonicalize(static_cast<std::uint32_t>(big), std::move(dense));
  return *this;
}

Cyclotomic Cyclotomic::operator*(const Rational& r) const {
  if (r == 0) return Cyclotomic();
  Cyclotomic out = *this;
  for (auto& [e, c] : out.coeffs_) c *= r;
  return out;
}

Cyclotomic Cyclotomic::galois(std::int64_t j) const {
  std::int64_t n = conductor_;
  std::int64_t jm = j % n;
  if (jm < 0) jm += n;
  if (n == 1) return *this;
  if (gcd_u64(static_cast<std::uint64_t>(jm), static_cast<std::uint64_t>(n)) != 1)
    throw std::domain_error("galois: exponent not coprime to conductor");
  std::vector<Rational> dense(conductor_, Rational(0));
  for (const auto& [e, c] : coeffs_) dense[(static_cast<std::uint64_t>(e) * jm) % n] += c;
  return canonicalize(conductor_, std::move(dense));
}

Rational Cyclotomic::trace_to_rationals() const {
  // Linear extension of Tr(zeta_n^k) = mu(m) * phi(n)/phi(m), m = n/gcd(n,k).
  Rational total(0);
  const std::uint64_t n = conductor_;
  const std::uint64_t phi_n = euler_phi(n);
  for (const auto& [e, c] : coeffs_) {
    std::uint64_t m = n / gcd_u64(n, e);
    total += c * Rational(Integer(moebius(m)) * Integer(phi_n / euler_phi(m)));
  }
  return total;
}

Rational Cyclotomic::trace_over(std::uint32_t n) const {
  if (n == 0 || n % conductor_ != 0)
    throw std::domain_error("trace_over: conductor " + std::to_string(conductor_) +
                            " does not divide " + std::to_string(n));
  return trace_to_rationals() * Rational(Integer(euler_phi(n) / euler_phi(conductor_)));
}

std::string Cyclotomic::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << rational_to_string(c) << ")";
    if (e != 0) os << "*z" << conductor_ << "^" << e;
  }
  return os.str();
}

nlohmann::json Cyclotomic::to_json() const {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [e, c] : coeffs_) coeffs[std::to_string(e)] = rational_to_string(c);
  return nlohmann::json{{"conductor", conductor_}, {"coeffs", coeffs}};
}

Cyclotomic Cyclotomic::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs"))
    throw std::invalid_argument("cyclotomic JSON must have conductor and coeffs");
  std::int64_t n = j.at("conductor").get<std::int64_t>();
  if (n < 1) throw std::invalid_argument("cyclotomic conductor must be positive");
  std::map<std::uint32_t, Rational> terms;
  for (const auto& [key, value] : j.at("coeffs").items()) {
    std::size_t pos = 0;
    unsigned long e = std::stoul(key, &pos);
    if (pos != key.size()) throw std::invalid_argument("bad exponent key: " + key);
    Rational c;
    if (value.is_string())
      c = parse_rational(value.get<std::string>());
    else if (value.is_number_integer())
      c = Rational(value.get<std::int64_t>());
    else
      throw std::invalid_argument("coefficient must be a string or integer");
    terms[static_cast<std::uint32_t>(e % n)] += c;
  }
  return from_terms(static_cast<std::uint32_t>(n), terms);
}

bool Cyclotomic::operator<(const Cyclotomic& o) const {
  if (conductor_ != o.conductor_) return conductor_ < o.conductor_;
  return std::lexicographical_compare(
      coeffs_.begin(), coeffs_.end(), o.coeffs_.begin(), o.coeffs_.end(),
      [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
      });
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + text);
  }
}

Integer floor_div(const Integer& a, const Integer& b) {
  if (b == 0) throw std::domain_error("floor_div by zero");
  Integer q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  if (b == 0) throw std::domain_error("ceil_div by zero");
  Integer q = a / b, r = a % b;
  if (r != 0 && ((r < 0) == (b < 0))) ++q;
  return q;
}

}  // namespace helpkit
