#include "eds/classify.hpp"

#include <algorithm>
#include <mutex>

namespace eds {

namespace {

// Miller-Rabin witness test; n odd >= 3, 2 <= a < n-1.
bool mr_witness_passes(const Integer& n, const Integer& a) {
  Integer n1 = n - Integer(1);
  Integer d = n1;
  unsigned long s = d.remove_factor(2);
  Integer x = Integer::powmod(a, d, n);
  if (x.is_one() || x == n1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = Integer::mod(x * x, n);
    if (x == n1) return true;
    if (x.is_one()) return false;
  }
  return false;
}

}  // namespace

bool is_probable_prime(const Integer& n, int rounds) {
  if (n < Integer(2)) fail(ErrorCode::InvalidInput, "primality test needs n >= 2");
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L}) {
    if (n == Integer(p)) return true;
    if (n.divisible_by(Integer(p))) return false;
  }
  // deterministic set valid below 3.317e24
  static const Integer det_limit("3317044064679887385961981");
  if (n < det_limit) {
    for (long a : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L})
      if (!mr_witness_passes(n, Integer(a))) return false;
    return true;
  }
  // bases derived deterministically from n via an LCG seeded by n mod 2^32-5
  unsigned long seed = mpz_fdiv_ui(n.raw(), 4294967291UL);
  Integer span = n - Integer(3);
  unsigned long state = seed * 6364136223846793005UL + 1442695040888963407UL;
  for (int i = 0; i < std::max(rounds, 1); ++i) {
    state = state * 6364136223846793005UL + 1442695040888963407UL;
    Integer a = Integer(2) + Integer::mod(Integer((long)(state >> 1)), span);
    if (!mr_witness_passes(n, a)) return false;
  }
  return true;
}

std::optional<std::pair<Integer, unsigned long>> perfect_power(const Integer& n) {
  if (n < Integer(2)) fail(ErrorCode::InvalidInput, "perfect_power needs n >= 2");
  for (unsigned long k = n.bit_length(); k >= 2; --k) {
    auto [root, exact] = n.kth_root(k);
    if (exact && root >= Integer(2)) return std::make_pair(root, k);
  }
  return std::nullopt;
}

const std::vector<long>& primes_up_to_million() {
  static std::vector<long> primes = [] {
    const long limit = 1000000;
    std::vector<bool> composite(static_cast<size_t>(limit) + 1, false);
    std::vector<long> out;
    for (long i = 2; i <= limit; ++i) {
      if (composite[static_cast<size_t>(i)]) continue;
      out.push_back(i);
      for (long j = i * i; j <= limit; j += i) composite[static_cast<size_t>(j)] = true;
    }
    return out;
  }();
  return primes;
}


namespace {

Integer pollard_rho(const Integer& n) {
  // Brent-style rho; n odd composite here
  for (long c = 1;; ++c) {
    Integer x(2), y(2), d(1);
    Integer cc(c);
    auto step = [&](const Integer& v) { return Integer::mod(v * v + cc, n); };
    while (d.is_one()) {
      x = step(x);
      y = step(step(y));
      d = Integer::gcd((x - y).abs(), n);
    }
    if (d != n) return d;
  }
}

void factor_into(const Integer& n_in, std::set<Integer>& out) {
  Integer n = n_in.abs();
  if (n <= Integer(1)) return;
  for (long p : {2L, 3L, 5L}) {
    Integer P(p);
    if (n.remove_factor(P) > 0) out.insert(P);
  }
  for (long d = 7; d < 100000 && Integer(d) * Integer(d) <= n; d += 2) {
    Integer D(d);
    if (n.remove_factor(D) > 0) out.insert(D);
  }
  if (n.is_one()) return;
  if (is_probable_prime(n, 40)) {
    out.insert(n);
    return;
  }
  if (auto pp = perfect_power(n)) {
    factor_into(pp->first, out);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(Integer::divexact(n, d), out);
}

}  // namespace

std::set<Integer> prime_divisors(const Integer& n) {
  std::set<Integer> out;
  factor_into(n, out);
  return out;
}

std::string TermClass::str() const {
  switch (kind) {
    case Kind::Unit: return "unit";
    case Kind::ProbablePrime: return "probable_prime";
    case Kind::PrimePower:
      return "prime_power(" + base.str() + "^" + std::to_string(exponent) + ")";
    case Kind::CompositeLength:
      return "composite_length(" + std::to_string(length) + (complete ? ",complete" : ",lower_bound") + ")";
    case Kind::Unknown: return "unknown";
  }
  return "unknown";
}

TermClass classify_term(const Integer& B, long trial_bound, int mr_rounds) {
  if (B.sign() <= 0) fail(ErrorCode::InvalidInput, "classify_term needs B >= 1");
  TermClass out;
  out.digits = B.digits10();
  if (B.is_one()) {
    out.kind = TermClass::Kind::Unit;
    return out;
  }
  if (is_probable_prime(B, mr_rounds)) {
    out.kind = TermClass::Kind::ProbablePrime;
    return out;
  }
  if (auto pp = perfect_power(B)) {
    if (is_probable_prime(pp->first, mr_rounds)) {
      out.kind = TermClass::Kind::PrimePower;
      out.base = pp->first;
      out.exponent = pp->second;
      return out;
    }
  }
  // distinct primes by trial division, then judge the cofactor
  Integer rest = B;
  int distinct = 0;
  for (long p : primes_up_to_million()) {
    if (p > trial_bound) break;
    if (Integer(p) * Integer(p) > rest) break;
    if (rest.remove_factor(Integer(p)) > 0) ++distinct;
  }
  if (rest.is_one()) {
    out.kind = TermClass::Kind::CompositeLength;
    out.length = distinct;
    out.complete = true;
    return out;
  }
  if (rest <= Integer(trial_bound) * Integer(trial_bound) || is_probable_prime(rest, mr_rounds)) {
    // cofactor below the trial square is prime; count it
    out.kind = TermClass::Kind::CompositeLength;
    out.length = distinct + 1;
    out.complete = true;
    return out;
  }
  if (auto pp = perfect_power(rest); pp && is_probable_prime(pp->first, mr_rounds)) {
    out.kind = TermClass::Kind::CompositeLength;
    out.length = distinct + 1;
    out.complete = true;
    return out;
  }
  if (distinct == 0) {
    out.kind = TermClass::Kind::Unknown;  // composite, no structure found
    return out;
  }
  out.kind = TermClass::Kind::CompositeLength;
  out.length = distinct + 1;  // the composite cofactor holds at least one more prime
  out.complete = false;
  return out;
}

}  // namespace eds
