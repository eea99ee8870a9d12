#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wittc/arith.hpp"
#include "wittc/bigint.hpp"
#include "wittc/ideal.hpp"
#include "wittc/witt_vector.hpp"

namespace wittc {

/// a ~_f b over Q. The generator of a b^{-1} is forced to be a/b, and
/// a/b in 1 + f b^{-1} Z means a = b + k f.
inline bool dr_congruent(const BigInt& a, const BigInt& b, const BigInt& f) {
  if (a < 1 || b < 1 || f < 1) throw std::invalid_argument("ideals and modulus must be positive");
  return floor_mod(a - b, f) == 0;
}

inline bool dr_congruent(const IdealQ& a, const IdealQ& b, std::uint64_t f) {
  return dr_congruent(a.value(), b.value(), BigInt(f));
}

/// Residues mod f under multiplication; class of n is n mod f.
struct DrQuotient {
  std::uint64_t modulus = 1;
  std::vector<std::vector<std::uint64_t>> table;

  std::uint64_t class_of(const BigInt& n) const { return to_u64(floor_mod(n, BigInt(modulus))); }

  /// Header row and column of residues, then the products.
  std::string to_csv() const {
    std::ostringstream os;
    os << "*";
    for (std::uint64_t r = 0; r < modulus; ++r) os << ',' << r;
    os << '\n';
    for (std::uint64_t r = 0; r < modulus; ++r) {
      os << r;
      for (std::uint64_t s = 0; s < modulus; ++s) os << ',' << table[r][s];
      os << '\n';
    }
    return os.str();
  }
};

inline DrQuotient dr_quotient(std::uint64_t f) {
  if (f == 0) throw std::invalid_argument("modulus must be positive");
  DrQuotient q{f, std::vector<std::vector<std::uint64_t>>(f, std::vector<std::uint64_t>(f))};
  for (std::uint64_t r = 0; r < f; ++r)
    for (std::uint64_t s = 0; s < f; ++s) q.table[r][s] = mulmod(r, s, f);
  return q;
}

struct PeriodicityResult {
  bool holds = false;
  bool exact = false;
  std::uint64_t a = 0;  // a = b mod f with xi_a != xi_b when !holds
  std::uint64_t b = 0;
};

/// Whether xi_a = xi_b whenever a = b mod f. Exact for periodic and
/// unity-geometric vectors; otherwise a scan over a, b <= bound.
inline PeriodicityResult periodicity_check(const WittVector& xi, std::uint64_t f, std::uint64_t bound) {
  if (f == 0) throw std::invalid_argument("modulus must be positive");
  PeriodicityResult out;
  if (xi.is_periodic() || is_unity_geometric(xi)) {
    const PeriodicRep rep = xi.is_periodic() ? xi.as_periodic() : detail::unity_geometric_to_periodic(xi);
    const std::uint64_t m = rep.modulus;
    out.exact = true;
    // Shifts by f generate every admissible move between residues mod m.
    for (std::uint64_t n = 1; n <= m; ++n) {
      if (rep.values[n % m] != rep.values[(n + f) % m]) {
        out.a = n;
        out.b = n + f;
        return out;
      }
    }
    out.holds = true;
    return out;
  }
  for (std::uint64_t a = 1; a + f <= bound; ++a) {
    if (!xi.evaluable(a + f)) break;
    if (coefficient(xi, a) != coefficient(xi, a + f)) {
      out.a = a;
      out.b = a + f;
      return out;
    }
  }
  out.holds = true;
  return out;
}

enum class ModulusStatus { found, none, inconclusive };

struct MinimalModulus {
  ModulusStatus status = ModulusStatus::inconclusive;
  std::uint64_t modulus = 0;
  std::string note;
};

/// Least f with exact periodicity, searched among divisors of the period the
/// representation guarantees.
inline MinimalModulus minimal_modulus(const WittVector& xi) {
  MinimalModulus out;
  std::uint64_t period = 0;
  if (xi.is_periodic()) {
    period = xi.as_periodic().modulus;
  } else if (is_unity_geometric(xi)) {
    period = unity_period(xi);
  } else if (xi.is_geometric()) {
    out.status = ModulusStatus::none;
    out.note = "coefficient set is infinite";
    return out;
  } else {
    out.note = "representation gives no a-priori period";
    return out;
  }
  for (const auto& d : divisors(factor(period))) {
    const std::uint64_t f = to_u64(d.value());
    if (periodicity_check(xi, f, 0).holds) {
      out.status = ModulusStatus::found;
      out.modulus = f;
      return out;
    }
  }
  throw std::logic_error("period bound is not a period");
}

}  // namespace wittc
