#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "wittc/arith.hpp"
#include "wittc/quadratic.hpp"

namespace wittc {

/// Nonzero ideal of Z, i.e. a positive integer kept as prime exponents.
class IdealQ {
 public:
  IdealQ() = default;
  explicit IdealQ(std::map<std::uint64_t, unsigned> exponents) : exps_(std::move(exponents)) {
    for (auto it = exps_.begin(); it != exps_.end();) {
      if (!is_prime(it->first)) throw std::invalid_argument("ideal exponent key is not prime");
      it = it->second == 0 ? exps_.erase(it) : std::next(it);
    }
  }
  static IdealQ prime(std::uint64_t p, unsigned e = 1) { return IdealQ({{p, e}}); }

  const std::map<std::uint64_t, unsigned>& exponents() const { return exps_; }
  bool is_unit() const { return exps_.empty(); }

  unsigned valuation(std::uint64_t p) const {
    auto it = exps_.find(p);
    return it == exps_.end() ? 0 : it->second;
  }

  BigInt value() const {
    BigInt v = 1;
    for (const auto& [p, e] : exps_) v *= ipow(BigInt(p), e);
    return v;
  }

  /// Factorization word: primes with multiplicity, ascending.
  std::vector<std::uint64_t> word() const {
    std::vector<std::uint64_t> w;
    for (const auto& [p, e] : exps_) w.insert(w.end(), e, p);
    return w;
  }

  friend IdealQ operator*(const IdealQ& x, const IdealQ& y) {
    IdealQ r = x;
    for (const auto& [p, e] : y.exps_) r.exps_[p] += e;
    return r;
  }
  friend bool operator==(const IdealQ& x, const IdealQ& y) { return x.exps_ == y.exps_; }
  friend bool operator<(const IdealQ& x, const IdealQ& y) { return x.value() < y.value(); }

  bool divides(const IdealQ& other) const {
    for (const auto& [p, e] : exps_)
      if (other.valuation(p) < e) return false;
    return true;
  }

  std::string to_string() const { return value().str(); }

 private:
  std::map<std::uint64_t, unsigned> exps_;
};

namespace detail {

inline std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of n >= 1: trial division up to 10^4, then Pollard rho.
inline IdealQ factor(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factor needs a positive integer");
  std::map<std::uint64_t, unsigned> exps;
  for (std::uint64_t d = 2; d < 10000 && d * d <= n; ++d) {
    while (n % d == 0) {
      ++exps[d];
      n /= d;
    }
  }
  detail::factor_into(n, exps);
  return IdealQ(std::move(exps));
}

/// Factorization of an arbitrary-precision input, rejected above `bound`.
inline IdealQ factor(const BigInt& n, const BigInt& bound = BigInt(std::numeric_limits<std::uint64_t>::max())) {
  if (n <= 0) throw std::invalid_argument("factor needs a positive integer");
  if (n > bound) throw std::out_of_range("integer exceeds the factorization bound: " + n.str());
  return factor(to_u64(n));
}

/// Number of ideals dividing d: prod (1 + v_p(d)).
inline std::uint64_t divisor_count(const IdealQ& d) {
  std::uint64_t s = 1;
  for (const auto& [p, e] : d.exponents()) s *= (1 + e);
  return s;
}

/// All divisors of d in ascending order of value.
inline std::vector<IdealQ> divisors(const IdealQ& d) {
  std::vector<IdealQ> out{IdealQ()};
  for (const auto& [p, e] : d.exponents()) {
    std::vector<IdealQ> next;
    for (const auto& x : out)
      for (unsigned k = 0; k <= e; ++k) next.push_back(x * IdealQ::prime(p, k));
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Nonzero ideal of a quadratic ring as a multiset of prime ideals.
class IdealL {
 public:
  IdealL() = default;
  IdealL(QuadRing ring, std::map<PrimeOfL, unsigned> exponents) : ring_(ring), exps_(std::move(exponents)) {
    for (auto it = exps_.begin(); it != exps_.end();) {
      if (!(common_ring(ring_, it->first.generator.ring()) == ring_)) {
        throw std::invalid_argument("prime ideal from another ring");
      }
      it = it->second == 0 ? exps_.erase(it) : std::next(it);
    }
  }
  static IdealL prime(const PrimeOfL& P, unsigned e = 1) { return IdealL(P.generator.ring(), {{P, e}}); }

  const QuadRing& ring() const { return ring_; }
  const std::map<PrimeOfL, unsigned>& exponents() const { return exps_; }
  bool is_unit() const { return exps_.empty(); }

  unsigned valuation(const PrimeOfL& P) const {
    auto it = exps_.find(P);
    return it == exps_.end() ? 0 : it->second;
  }

  friend IdealL operator*(const IdealL& x, const IdealL& y) {
    IdealL r(x.is_unit() ? y.ring_ : x.ring_, x.exps_);
    for (const auto& [P, e] : y.exps_) r.exps_[P] += e;
    return r;
  }

  /// Prime labels with multiplicity, e.g. {"1+1*w", "3"}.
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& [P, e] : exps_) out.insert(out.end(), e, P.label());
    return out;
  }

 private:
  QuadRing ring_ = QuadRing::integers();
  std::map<PrimeOfL, unsigned> exps_;
};

/// Norm map I_L -> I_Q, P |-> p^f.
inline IdealQ norm_ideal(const IdealL& A) {
  IdealQ out;
  for (const auto& [P, e] : A.exponents()) out = out * IdealQ::prime(P.p, P.inertia_degree * e);
  return out;
}

/// The prime ideal generated by `pi`, which must be a prime element.
inline PrimeOfL prime_of_generator(const QuadInt& pi) {
  const BigInt n = abs(pi.norm());
  if (n < 2) throw std::invalid_argument("not a prime element: " + pi.to_string());
  IdealQ f = factor(n);
  if (f.exponents().size() != 1) throw std::invalid_argument("not a prime element: " + pi.to_string());
  const std::uint64_t p = f.exponents().begin()->first;
  for (const auto& P : split_prime(p, pi.ring())) {
    auto q = pi.divide(P.generator);
    if (q && abs(q->norm()) == 1) return P;
  }
  throw std::invalid_argument("not a prime element: " + pi.to_string());
}

}  // namespace wittc
