// Term classification: probable primality, perfect powers, prime powers,
// and verified lower bounds on the number of distinct prime factors.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eds/integer.hpp"

namespace eds {

// Miller-Rabin.  Deterministic base set {2,3,...,41} for n < 3.317e24; above
// that, `rounds` bases derived deterministically from n (reproducible runs).
bool is_probable_prime(const Integer& n, int rounds);

// Maximal-exponent representation n = b^e with e >= 2, if one exists.
std::optional<std::pair<Integer, unsigned long>> perfect_power(const Integer& n);

struct TermClass {
  enum class Kind { Unit, ProbablePrime, PrimePower, CompositeLength, Unknown };
  Kind kind = Kind::Unknown;
  size_t digits = 0;
  // PrimePower
  Integer base = 0;
  unsigned long exponent = 0;
  // CompositeLength: verified lower bound on the number of distinct primes;
  // complete means the factorization into primes is fully known.
  int length = 0;
  bool complete = false;

  std::string str() const;
};

// trial_bound bounds trial division (effective up to the 10^6 sieve);
// mr_rounds feeds Miller-Rabin.
TermClass classify_term(const Integer& B, long trial_bound, int mr_rounds);

// Primes <= limit (shared sieve helper).
const std::vector<long>& primes_up_to_million();

// Full set of prime divisors of n (trial division plus Pollard rho); meant
// for the small integers that appear as discriminants and denominators, not
// for sequence terms.
std::set<Integer> prime_divisors(const Integer& n);

}  // namespace eds
