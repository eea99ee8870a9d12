#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "wittc/bigint.hpp"

namespace wittc {

/// Largest e with p^e | n. Throws std::domain_error for n == 0.
inline unsigned padic_valuation(BigInt n, std::uint64_t p) {
  if (n == 0) throw std::domain_error("p-adic valuation of 0 is infinite");
  if (p < 2) throw std::invalid_argument("valuation base must be a prime");
  unsigned e = 0;
  const BigInt bp = p;
  while (n % bp == 0) {
    n /= bp;
    ++e;
  }
  return e;
}

inline unsigned padic_valuation(std::int64_t n, std::uint64_t p) {
  return padic_valuation(BigInt(n), p);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

inline std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

/// Least prime p with p ≡ residue (mod modulus); requires gcd(residue, modulus) = 1.
inline std::uint64_t least_prime_in_class(std::uint64_t residue, std::uint64_t modulus) {
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
  if (std::gcd(residue, modulus) != 1) {
    throw std::invalid_argument("residue class is not coprime to the modulus");
  }
  std::uint64_t c = residue % modulus;
  if (c == 0) c = modulus;  // modulus 1
  while (!is_prime(c)) c += modulus;
  return c;
}

/// Distinct prime divisors in ascending order.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Kronecker symbol (D / p) for a prime p.
inline int kronecker_symbol(std::int64_t disc, std::uint64_t p) {
  if (p == 2) {
    if (disc % 2 == 0) return 0;
    const std::int64_t r = ((disc % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  const std::int64_t sp = static_cast<std::int64_t>(p);
  const std::uint64_t a = static_cast<std::uint64_t>(((disc % sp) + sp) % sp);
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

}  // namespace wittc
