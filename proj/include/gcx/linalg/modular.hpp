#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "gcx/rational.hpp"

namespace gcx {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return r;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::domain_error("inv_mod: zero is not invertible");
  return pow_mod(a, p - 2, p);
}

// Deterministic Miller-Rabin for n < 2^64.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Random primes in (2^30, 2^31).
inline std::vector<std::uint64_t> random_primes(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist((1ull << 30) + 1, (1ull << 31) - 1);
  std::vector<std::uint64_t> out;
  while (out.size() < count) {
    std::uint64_t c = dist(rng) | 1ull;
    if (!is_prime_u64(c)) continue;
    bool dup = false;
    for (auto q : out) dup = dup || q == c;
    if (!dup) out.push_back(c);
  }
  return out;
}

inline std::uint64_t reduce_mod(std::int64_t v, std::uint64_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t reduce_mod(const Integer& v, std::uint64_t p) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
  return r.get_ui();
}

// Throws std::domain_error when p divides the denominator.
inline std::uint64_t reduce_mod(const Rational& v, std::uint64_t p) {
  std::uint64_t num = reduce_mod(Integer(v.get_num()), p);
  std::uint64_t den = reduce_mod(Integer(v.get_den()), p);
  return mul_mod(num, inv_mod(den, p), p);
}

}  // namespace gcx
