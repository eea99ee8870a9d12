#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wittc/arith.hpp"
#include "wittc/bigint.hpp"
#include "wittc/ideal.hpp"
#include "wittc/quadratic.hpp"
#include "wittc/witt_vector.hpp"

namespace wittc {

enum class CheckStatus { ok, counterexample, inconclusive };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::ok: return "ok";
    case CheckStatus::counterexample: return "counterexample";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

/// How membership sweeps evaluate coefficients. `residue` works modulo the
/// exact congruence modulus (a BigInt), `full` materialises every value.
enum class Route { residue, full };

namespace detail {

/// Runs body(i) for i in [0, count) on `workers` threads, round-robin.
inline void parallel_indices(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline bool congruent_mod(const QuadInt& x, const QuadInt& y, const BigInt& m) { return (x - y).divisible_by(m); }

inline BigInt max_coordinate_gap(const std::vector<QuadInt>& values) {
  BigInt gap = 0;
  for (const auto& x : values)
    for (const auto& y : values) {
      const QuadInt d = x - y;
      gap = std::max({gap, BigInt(abs(d.a())), BigInt(abs(d.b()))});
    }
  return gap;
}

/// Exact proof that a periodic family satisfies xi_{pn} = xi_n mod p^{1+v_p(n)}
/// for every prime p and every n.
inline bool periodic_congruences_hold(const PeriodicRep& rep) {
  const std::uint64_t f = rep.modulus;
  const BigInt gap = max_coordinate_gap(rep.values);
  auto at = [&](std::uint64_t r) -> const QuadInt& { return rep.values[r % f]; };
  // Primes coprime to f fill every coprime residue class, and n mod f is then
  // unconstrained, so large p-adic valuations force exact invariance.
  for (std::uint64_t c = 1; c < f; ++c) {
    if (std::gcd(c, f) != 1) continue;
    for (std::uint64_t r = 0; r < f; ++r)
      if (at(mulmod(c, r, f)) != at(r)) return false;
  }
  for (std::uint64_t p : prime_divisors(f)) {
    // n = p^v u with p not dividing u; n mod f depends on (p^v mod f, u mod f).
    std::map<std::uint64_t, unsigned> seen_after_exact;
    std::uint64_t pv = 1 % f;
    BigInt modulus = p;  // p^{1+v}
    for (unsigned v = 0;; ++v) {
      const bool exact = modulus > gap;
      if (exact && seen_after_exact.count(pv)) break;
      if (exact) seen_after_exact[pv] = v;
      for (std::uint64_t u = 0; u < f; ++u) {
        if (u % p == 0) continue;
        const std::uint64_t n = mulmod(pv, u, f);
        if (!congruent_mod(at(mulmod(p, n, f)), at(n), modulus)) return false;
      }
      pv = mulmod(pv, p, f);
      modulus *= p;
    }
  }
  return true;
}

}  // namespace detail

/// Outcome of the Witt congruence sweep. `proven` means the congruence holds
/// at every prime and index, not only inside the bounds.
struct MembershipResult {
  CheckStatus status = CheckStatus::ok;
  bool proven = false;
  std::uint64_t p = 0;
  std::uint64_t a = 0;
  std::string note;
};

/// Sweeps xi_{pa} = xi_a mod p^{1+v_p(a)} over primes p <= prime_bound and
/// 1 <= a <= index_bound. Reports the least failing (p, a) lexicographically.
inline MembershipResult check_membership_Z(const WittVector& xi, std::uint64_t prime_bound, std::uint64_t index_bound,
                                           unsigned workers = 1, Route route = Route::residue) {
  const auto primes = primes_up_to(prime_bound);
  struct PerPrime {
    std::optional<std::uint64_t> fail;
    bool unevaluable = false;
  };
  std::vector<PerPrime> per(primes.size());
  detail::parallel_indices(primes.size(), workers, [&](std::size_t i) {
    const std::uint64_t p = primes[i];
    for (std::uint64_t a = 1; a <= index_bound; ++a) {
      if (!xi.evaluable(a) || !xi.evaluable(p * a)) {
        per[i].unevaluable = true;
        continue;
      }
      const BigInt m = ipow(BigInt(p), 1 + padic_valuation(static_cast<std::int64_t>(a), p));
      bool holds;
      if (route == Route::residue) {
        holds = coefficient_mod(xi, p * a, m) == coefficient_mod(xi, a, m);
      } else {
        holds = detail::congruent_mod(coefficient(xi, p * a), coefficient(xi, a), m);
      }
      if (!holds) {
        per[i].fail = a;
        return;
      }
    }
  });
  MembershipResult out;
  bool unevaluable = false;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (per[i].fail) {
      out.status = CheckStatus::counterexample;
      out.p = primes[i];
      out.a = *per[i].fail;
      out.note = "xi_" + std::to_string(out.p * out.a) + " != xi_" + std::to_string(out.a) + " mod " +
                 std::to_string(out.p) + "^" + std::to_string(1 + padic_valuation(static_cast<std::int64_t>(out.a), out.p));
      return out;
    }
    unevaluable = unevaluable || per[i].unevaluable;
  }
  if (unevaluable) {
    out.status = CheckStatus::inconclusive;
    out.note = "some indices lie beyond the table bound";
    return out;
  }
  if (xi.is_geometric()) {
    const auto& terms = xi.as_geometric().terms;
    out.proven = std::all_of(terms.begin(), terms.end(),
                             [](const GeometricTerm& t) { return t.c.is_rational() && t.base.is_rational(); });
  } else if (xi.is_periodic()) {
    out.proven = detail::periodic_congruences_hold(xi.as_periodic());
  }
  out.note = out.proven ? "holds for all primes and indices" : "holds within bounds";
  return out;
}

/// Outcome of the derivative tower check. On failure `path` is the prime
/// sequence whose last derivative is not integral at index `a`.
struct DerivativeResult {
  CheckStatus status = CheckStatus::ok;
  std::vector<std::uint64_t> path;
  std::uint64_t a = 0;
  std::string note;
};

namespace detail {

struct DerivativeEval {
  std::optional<QuadInt> value;                // known modulo the stage modulus
  std::vector<std::uint64_t> failed_path;      // set when a division was inexact
  std::uint64_t failed_index = 0;
  bool unevaluable = false;
};

/// delta_{path[j-1]} ... delta_{path[0]} xi at n. With Route::residue the value
/// is exact modulo prod(path[j..]), which is all later stages need.
inline DerivativeEval derivative_at(const WittVector& xi, const std::vector<std::uint64_t>& path, std::size_t j,
                                    std::uint64_t n, Route route) {
  DerivativeEval out;
  if (j == 0) {
    if (!xi.evaluable(n)) {
      out.unevaluable = true;
      return out;
    }
    if (route == Route::full) {
      out.value = coefficient(xi, n);
    } else {
      BigInt m = 1;
      for (std::uint64_t q : path) m *= q;
      out.value = coefficient_mod(xi, n, m);
    }
    return out;
  }
  const std::uint64_t p = path[j - 1];
  DerivativeEval shifted = derivative_at(xi, path, j - 1, p * n, route);
  if (!shifted.value) return shifted;
  DerivativeEval here = derivative_at(xi, path, j - 1, n, route);
  if (!here.value) return here;
  QuadInt numerator;
  BigInt rest = 1;
  if (route == Route::full) {
    numerator = *shifted.value - here.value->pow(p);
  } else {
    for (std::size_t i = j; i < path.size(); ++i) rest *= path[i];
    const BigInt m = rest * p;
    numerator = (*shifted.value - here.value->pow_mod(p, m)).mod_int(m);
  }
  if (!numerator.divisible_by(BigInt(p))) {
    out.failed_path.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(j));
    out.failed_index = n;
    return out;
  }
  out.value = numerator.div_exact(BigInt(p));
  if (route == Route::residue) out.value = out.value->mod_int(rest);
  return out;
}

}  // namespace detail

/// Exact value of the iterated derivative delta_{path[k-1]} ... delta_{path[0]} xi
/// at index a. Throws std::domain_error when some stage is not integral.
inline QuadInt iterated_derivative(const WittVector& xi, const std::vector<std::uint64_t>& path, std::uint64_t a) {
  for (std::uint64_t p : path)
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  auto r = detail::derivative_at(xi, path, path.size(), a, Route::full);
  if (r.unevaluable) throw std::out_of_range("derivative needs coefficients beyond the table bound");
  if (!r.value) throw std::domain_error("derivative is not integral at index " + std::to_string(r.failed_index));
  return *r.value;
}

/// Checks integrality of every iterated derivative along prime paths of
/// length 1..depth at indices 1..index_bound. Paths are visited by length,
/// then lexicographically by position in `primes`; the first failure wins.
inline DerivativeResult check_membership_derivative(const WittVector& xi, const std::vector<std::uint64_t>& primes,
                                                    unsigned depth, std::uint64_t index_bound, unsigned workers = 1,
                                                    Route route = Route::residue) {
  for (std::uint64_t p : primes)
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  std::vector<std::vector<std::uint64_t>> paths;
  std::vector<std::vector<std::uint64_t>> layer{{}};
  for (unsigned k = 1; k <= depth; ++k) {
    std::vector<std::vector<std::uint64_t>> next;
    for (const auto& prefix : layer)
      for (std::uint64_t p : primes) {
        auto path = prefix;
        path.push_back(p);
        next.push_back(path);
      }
    paths.insert(paths.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  struct PerPath {
    std::optional<detail::DerivativeEval> fail;
    std::uint64_t a = 0;
    bool unevaluable = false;
  };
  std::vector<PerPath> per(paths.size());
  detail::parallel_indices(paths.size(), workers, [&](std::size_t i) {
    for (std::uint64_t a = 1; a <= index_bound; ++a) {
      auto r = detail::derivative_at(xi, paths[i], paths[i].size(), a, route);
      if (r.unevaluable) {
        per[i].unevaluable = true;
        continue;
      }
      if (!r.value) {
        per[i].fail = std::move(r);
        per[i].a = a;
        return;
      }
    }
  });
  DerivativeResult out;
  bool unevaluable = false;
  for (auto& r : per) {
    if (r.fail) {
      out.status = CheckStatus::counterexample;
      out.path = r.fail->failed_path;
      out.a = r.fail->failed_index;
      out.note = "derivative not integral";
      return out;
    }
    unevaluable = unevaluable || r.unevaluable;
  }
  if (unevaluable) {
    out.status = CheckStatus::inconclusive;
    out.note = "some indices lie beyond the table bound";
  }
  return out;
}

/// x in P^k, decided by k exact divisions by the generator.
inline bool in_prime_power(QuadInt x, const PrimeOfL& P, unsigned k) {
  for (unsigned i = 0; i < k; ++i) {
    if (x.is_zero()) return true;
    auto q = x.divide(P.generator);
    if (!q) return false;
    x = *q;
  }
  return true;
}

struct LemmaBoundResult {
  CheckStatus status = CheckStatus::ok;
  std::uint64_t a = 0;
  std::string note;
};

/// Checks xi_{p^f a} - xi_a in P^{1 + floor(v_p(a)/f)} for 1 <= a <= index_bound,
/// where f is the inertia degree of P over p.
inline LemmaBoundResult check_lemma_bound(const WittVector& xi, std::uint64_t p, const PrimeOfL& P,
                                          std::uint64_t index_bound) {
  if (P.p != p) throw std::invalid_argument("prime ideal does not lie above " + std::to_string(p));
  const std::uint64_t q = ipow(BigInt(p), P.inertia_degree).convert_to<std::uint64_t>();
  LemmaBoundResult out;
  bool unevaluable = false;
  for (std::uint64_t a = 1; a <= index_bound; ++a) {
    if (!xi.evaluable(q * a)) {
      unevaluable = true;
      continue;
    }
    const unsigned k = 1 + padic_valuation(static_cast<std::int64_t>(a), p) / P.inertia_degree;
    const QuadInt diff = coefficient(xi, q * a).in_ring(P.generator.ring()) - coefficient(xi, a);
    if (!in_prime_power(diff, P, k)) {
      out.status = CheckStatus::counterexample;
      out.a = a;
      out.note = "xi_" + std::to_string(q * a) + " - xi_" + std::to_string(a) + " not in (" + P.label() + ")^" +
                 std::to_string(k);
      return out;
    }
  }
  if (unevaluable) out.status = CheckStatus::inconclusive;
  return out;
}

/// The family (xi_{N A}) indexed by ideals A of O_L.
class NormPullback {
 public:
  NormPullback(WittVector xi, QuadRing ring) : xi_(std::move(xi)), ring_(ring) {
    common_ring(xi_.ring(), ring_);
    if (ring_.is_integers()) throw std::invalid_argument("norm pullback needs a quadratic ring");
  }

  const QuadRing& ring() const { return ring_; }
  const WittVector& source() const { return xi_; }

  QuadInt operator()(const IdealL& A) const { return coefficient(xi_, norm_ideal(A)).in_ring(ring_); }

 private:
  WittVector xi_;
  QuadRing ring_;
};

inline NormPullback norm_pullback(const WittVector& xi, const QuadRing& ring) { return NormPullback(xi, ring); }

struct PullbackCheckResult {
  CheckStatus status = CheckStatus::ok;
  std::size_t checked = 0;
  std::string prime;                // failing P
  std::vector<std::string> ideal;   // failing A as prime labels
};

/// Checks zeta_{P A} = zeta_A mod P^{1 + v_P(A)} for zeta = N* xi, every P in
/// `primes` and every A supported on `primes` with exponents <= max_exponent.
inline PullbackCheckResult check_pullback_congruence(const NormPullback& zeta, const std::vector<PrimeOfL>& primes,
                                                     unsigned max_exponent) {
  PullbackCheckResult out;
  std::vector<unsigned> exps(primes.size(), 0);
  while (true) {
    std::map<PrimeOfL, unsigned> m;
    for (std::size_t i = 0; i < primes.size(); ++i) m[primes[i]] += exps[i];
    const IdealL A(zeta.ring(), m);
    const QuadInt base = zeta(A);
    for (const auto& P : primes) {
      const QuadInt shifted = zeta(A * IdealL::prime(P));
      ++out.checked;
      if (!in_prime_power(shifted - base, P, 1 + A.valuation(P))) {
        out.status = CheckStatus::counterexample;
        out.prime = P.label();
        out.ideal = A.labels();
        return out;
      }
    }
    std::size_t i = 0;
    while (i < exps.size() && exps[i] == max_exponent) exps[i++] = 0;
    if (i == exps.size()) break;
    ++exps[i];
  }
  return out;
}

}  // namespace wittc
