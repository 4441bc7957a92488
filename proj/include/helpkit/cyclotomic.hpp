#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "helpkit/rational.hpp"

namespace helpkit {

// Elementary number theory, all by trial division (inputs stay tiny).
std::uint64_t euler_phi(std::uint64_t n);
int moebius(std::uint64_t n);
std::vector<std::uint32_t> distinct_prime_factors(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// Coefficients of the n-th cyclotomic polynomial, constant term first,
// degree phi(n). Cached and thread-safe.
const std::vector<Integer>& cyclotomic_polynomial(std::uint32_t n);

// An element of an abelian number field, stored in the power basis
// {zeta_n^0, ..., zeta_n^(phi(n)-1)} of the smallest cyclotomic field
// containing it. The representation is canonical: reduced modulo the n-th
// cyclotomic polynomial, conductor-minimal (rationals always live at
// conductor 1, and the conductor is never congruent to 2 mod 4), and zero
// coefficients are never stored. Equality is representation equality.
class Cyclotomic {
 public:
  Cyclotomic() = default;  // zero
  explicit Cyclotomic(const Rational& r);
  explicit Cyclotomic(const Integer& n);
  explicit Cyclotomic(long n);

  // zeta_n^e (e may be negative; it is folded mod n).
  static Cyclotomic root_of_unity(std::uint32_t n, std::int64_t e);
  // Normalizes an arbitrary exponent->coefficient list at conductor n.
  static Cyclotomic from_terms(std::uint32_t n, const std::map<std::uint32_t, Rational>& terms);

  std::uint32_t conductor() const { return conductor_; }
  const std::map<std::uint32_t, Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return conductor_ == 1; }
  // Requires is_rational().
  Rational rational_value() const;
  bool is_integral() const;  // all coefficients have denominator 1

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  Cyclotomic operator*(const Rational& r) const;

  bool operator==(const Cyclotomic& o) const {
    return conductor_ == o.conductor_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  // Galois automorphism zeta -> zeta^j; j must be coprime to the conductor.
  Cyclotomic galois(std::int64_t j) const;
  Cyclotomic conj() const { return galois(-1); }

  // Trace to the rationals from the field of the element's (minimal)
  // conductor: sum of all Galois conjugates.
  Rational trace_to_rationals() const;
  // Trace from Q(zeta_n); the conductor must divide n. Scales by the
  // degree [Q(zeta_n) : Q(zeta_conductor)].
  Rational trace_over(std::uint32_t n) const;

  std::string to_string() const;

  // {"conductor": n, "coeffs": {"<exp>": "p/q" | "<int>"}}, canonical on write.
  nlohmann::json to_json() const;
  static Cyclotomic from_json(const nlohmann::json& j);

  // Total order (conductor, then coefficient maps); used for canonical sorting.
  bool operator<(const Cyclotomic& o) const;

 private:
  static Cyclotomic canonicalize(std::uint32_t n, std::vector<Rational> dense);

  std::uint32_t conductor_ = 1;
  std::map<std::uint32_t, Rational> coeffs_;
};

inline Cyclotomic operator*(const Rational& r, const Cyclotomic& c) { return c * r; }

}  // namespace helpkit
