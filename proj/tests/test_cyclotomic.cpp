#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "helpkit/cyclotomic.hpp"

using helpkit::Cyclotomic;
using helpkit::Integer;
using helpkit::Rational;

namespace {

Cyclotomic zeta(std::uint32_t n, std::int64_t e = 1) { return Cyclotomic::root_of_unity(n, e); }

// Independent trace oracle: explicit sum over all Galois automorphisms.
Rational trace_by_galois_sum(const Cyclotomic& a) {
  Cyclotomic total;
  std::uint32_t n = a.conductor();
  for (std::uint32_t j = 1; j <= n; ++j) {
    if (helpkit::gcd_u64(j, n) == 1) total += a.galois(j);
  }
  return total.rational_value();
}

}  // namespace

TEST_SUITE_BEGIN("cyclotomic");

TEST_CASE("euler phi and moebius") {
  CHECK(helpkit::euler_phi(1) == 1);
  CHECK(helpkit::euler_phi(12) == 4);
  CHECK(helpkit::euler_phi(77) == 60);
  CHECK(helpkit::euler_phi(9240) == 1920);
  CHECK(helpkit::moebius(1) == 1);
  CHECK(helpkit::moebius(2) == -1);
  CHECK(helpkit::moebius(6) == 1);
  CHECK(helpkit::moebius(12) == 0);
  CHECK(helpkit::moebius(30) == -1);
  CHECK(helpkit::divisors(28) == std::vector<std::uint64_t>{1, 2, 4, 7, 14, 28});
}

TEST_CASE("cyclotomic polynomials") {
  auto phi1 = helpkit::cyclotomic_polynomial(1);
  CHECK(phi1 == std::vector<Integer>{Integer(-1), Integer(1)});
  auto phi12 = helpkit::cyclotomic_polynomial(12);  // x^4 - x^2 + 1
  CHECK(phi12 == std::vector<Integer>{Integer(1), Integer(0), Integer(-1), Integer(0), Integer(1)});
  auto phi105 = helpkit::cyclotomic_polynomial(105);  // first with a coefficient of magnitude 2
  CHECK(phi105[7] == -2);
  CHECK(phi105.size() == helpkit::euler_phi(105) + 1);
}

TEST_CASE("canonical form and conductor minimization") {
  // zeta_3^2 reduces against Phi_3 = x^2 + x + 1.
  Cyclotomic z3sq = zeta(3, 2);
  CHECK(z3sq.conductor() == 3);
  CHECK(z3sq.coefficients() == std::map<std::uint32_t, Rational>{{0, Rational(-1)}, {1, Rational(-1)}});

  // zeta_8^2 is a primitive fourth root: conductor drops to 4.
  Cyclotomic i = zeta(8, 2);
  CHECK(i.conductor() == 4);
  CHECK(i == zeta(4, 1));
  CHECK(i * i == Cyclotomic(-1L));

  // Conductors congruent to 2 mod 4 fold away: zeta_6 = -zeta_3^2.
  Cyclotomic z6 = zeta(6, 1);
  CHECK(z6.conductor() == 3);
  CHECK(z6 == -zeta(3, 2));

  // Full vanishing sums collapse to zero at conductor 1.
  Cyclotomic s;
  for (int e = 0; e < 5; ++e) s += zeta(5, e);
  CHECK(s.is_zero());
  CHECK(s.conductor() == 1);

  // A rational disguised at a large conductor.
  Cyclotomic r = zeta(12, 6);  // = -1
  CHECK(r.is_rational());
  CHECK(r.rational_value() == -1);

  // sqrt(2) = zeta_8 + zeta_8^-1 genuinely needs conductor 8.
  Cyclotomic sqrt2 = zeta(8, 1) + zeta(8, -1);
  CHECK(sqrt2.conductor() == 8);
  CHECK(sqrt2 * sqrt2 == Cyclotomic(2L));
}

TEST_CASE("ring operations") {
  // Golden ratio pieces: (zeta_5 + zeta_5^4)(zeta_5^2 + zeta_5^3) = -1.
  Cyclotomic a = zeta(5, 1) + zeta(5, 4);
  Cyclotomic b = zeta(5, 2) + zeta(5, 3);
  CHECK(a * b == Cyclotomic(-1L));
  CHECK(a + b == Cyclotomic(-1L));

  // Mixed conductors embed into the lcm.
  Cyclotomic c = zeta(3) + zeta(4);
  CHECK(c.conductor() == 12);
  CHECK(c - zeta(4) == zeta(3));

  // Scalar multiplication.
  CHECK((a * Rational(2)).trace_to_rationals() == Rational(-2) * 2);
}

TEST_CASE("galois action") {
  Cyclotomic z5 = zeta(5);
  CHECK(z5.galois(2) == zeta(5, 2));
  CHECK(z5.galois(-1) == zeta(5, 4));
  CHECK(z5.conj() == zeta(5, 4));
  CHECK_THROWS(zeta(10).galois(5));

  // Galois fixes rationals.
  CHECK(Cyclotomic(Rational(7, 3)).galois(5) == Cyclotomic(Rational(7, 3)));

  // sigma_j sigma_k = sigma_{jk}.
  Cyclotomic x = zeta(35, 1) + zeta(35, 6) * Rational(1, 2);
  CHECK(x.galois(2).galois(3) == x.galois(6));
}

TEST_CASE("traces") {
  CHECK(zeta(5).trace_to_rationals() == -1);        // mu(5) = -1
  CHECK(zeta(12, 6).trace_to_rationals() == -1);    // -1 at conductor 1 after folding
  CHECK(Cyclotomic(1L).trace_over(12) == 4);        // phi(12) * 1
  CHECK(zeta(12).trace_to_rationals() == 0);        // mu(12) = 0
  CHECK(zeta(8, 2).trace_over(8) == 0);             // i has trace 0 from Q(zeta_8)
  CHECK(zeta(7).trace_over(14) == -1);
  CHECK(zeta(7).trace_over(77) == -10);             // scales by phi(77)/phi(7) = 10
  CHECK_THROWS(zeta(5).trace_over(12));

  // eta_0 * eta_1 for the quadratic periods mod 11: trace identities used later.
  Cyclotomic eta0, eta1;
  for (int q : {1, 3, 4, 5, 9}) eta0 += zeta(11, q);
  for (int q : {2, 6, 7, 8, 10}) eta1 += zeta(11, q);
  CHECK((eta0 * eta1).rational_value() == 3);
  CHECK((eta0 * zeta(11, -1)).trace_to_rationals() == 6);
  CHECK((eta1 * zeta(11, -1)).trace_to_rationals() == -5);
}

TEST_CASE("trace agrees with brute-force galois sums up to conductor 60") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (std::uint32_t n = 1; n <= 60; ++n) {
    std::uniform_int_distribution<std::uint32_t> expo(0, n - 1);
    for (int rep = 0; rep < 3; ++rep) {
      std::map<std::uint32_t, Rational> terms;
      for (int t = 0; t < 4; ++t) terms[expo(rng)] += Rational(coeff(rng), 1 + (t % 2));
      Cyclotomic x = Cyclotomic::from_terms(n, terms);
      CHECK(x.trace_to_rationals() == trace_by_galois_sum(x));
      // Moebius formula for the scaled variant.
      if (x.conductor() != 0 && n % x.conductor() == 0) {
        Rational scaled = x.trace_over(n);
        Rational expect = x.trace_to_rationals() *
                          Rational(Integer(helpkit::euler_phi(n) / helpkit::euler_phi(x.conductor())));
        CHECK(scaled == expect);
      }
    }
  }
}

TEST_CASE("normalization is stable under re-normalization") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (std::uint32_t n : {4u, 8u, 9u, 12u, 15u, 24u, 40u, 60u}) {
    std::uniform_int_distribution<std::uint32_t> expo(0, n - 1);
    for (int rep = 0; rep < 5; ++rep) {
      std::map<std::uint32_t, Rational> terms;
      for (int t = 0; t < 3; ++t) terms[expo(rng)] += coeff(rng);
      Cyclotomic x = Cyclotomic::from_terms(n, terms);
      Cyclotomic y = Cyclotomic::from_terms(x.conductor(), x.coefficients());
      CHECK(x == y);
      // Conductor is genuinely minimal: no coefficient pattern at a proper
      // divisor reproduces the element (spot check via galois stability).
      for (std::uint32_t p : helpkit::distinct_prime_factors(x.conductor())) {
        std::uint32_t m = x.conductor() / p;
        bool fixed_by_all = true;
        for (std::uint32_t j = 1; j < x.conductor(); ++j) {
          if (helpkit::gcd_u64(j, x.conductor()) != 1 || j % m != 1 % m) continue;
          if (x.galois(j) != x) fixed_by_all = false;
        }
        CHECK_FALSE(fixed_by_all);
      }
    }
  }
}

TEST_CASE("json round trip is bit exact") {
  Cyclotomic x = zeta(20, 3) * Rational(-7, 2) + Cyclotomic(Rational(1, 3));
  nlohmann::json j = x.to_json();
  CHECK(Cyclotomic::from_json(j) == x);
  CHECK(j.at("conductor").get<int>() == x.conductor());

  // Reader accepts non-canonical input and normalizes.
  nlohmann::json weird = {{"conductor", 6}, {"coeffs", {{"1", "1"}}}};
  Cyclotomic y = Cyclotomic::from_json(weird);
  CHECK(y.conductor() == 3);
  CHECK(y.to_json().at("conductor").get<int>() == 3);

  CHECK_THROWS(Cyclotomic::from_json(nlohmann::json{{"conductor", 0}, {"coeffs", nlohmann::json::object()}}));
  CHECK_THROWS(Cyclotomic::from_json(nlohmann::json{{"conductor", 5}, {"coeffs", {{"x", "1"}}}}));
}

TEST_CASE("rational parsing and integer division helpers") {
  CHECK(helpkit::parse_rational("-3/6") == Rational(-1, 2));
  CHECK(helpkit::parse_rational("12") == Rational(12));
  CHECK_THROWS(helpkit::parse_rational("1/0"));
  CHECK_THROWS(helpkit::parse_rational("a/b"));
  CHECK(helpkit::rational_to_string(Rational(-4, 8)) == "-1/2");
  CHECK(helpkit::floor_div(Integer(-7), Integer(2)) == -4);
  CHECK(helpkit::ceil_div(Integer(-7), Integer(2)) == -3);
  CHECK(helpkit::floor_div(Integer(7), Integer(2)) == 3);
  CHECK(helpkit::ceil_div(Integer(7), Integer(2)) == 4);
}

TEST_SUITE_END();
