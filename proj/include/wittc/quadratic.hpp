#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "wittc/arith.hpp"
#include "wittc/bigint.hpp"

namespace wittc {

/// Raised when an operation needs ring structure this library does not model
/// (e.g. prime splitting in a quadratic ring of class number > 1).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OmegaKind { integers, sqrt, half };

/// Ring of integers of Q(sqrt d) with basis {1, w}: w = sqrt(d) when
/// d = 2,3 mod 4 and w = (1 + sqrt(d))/2 when d = 1 mod 4. The degenerate
/// ring Z (no w) is also a QuadRing so that every coefficient shares a type.
class QuadRing {
 public:
  static QuadRing integers() { return QuadRing(0, OmegaKind::integers); }

  static QuadRing make(std::int64_t d) {
    if (d == 0 || d == 1) throw std::invalid_argument("quadratic ring needs d != 0, 1");
    const std::uint64_t ad = static_cast<std::uint64_t>(d < 0 ? -d : d);
    for (std::uint64_t k = 2; k * k <= ad; ++k) {
      if (ad % (k * k) == 0) throw std::invalid_argument("d must be squarefree");
    }
    const std::int64_t r = ((d % 4) + 4) % 4;
    return QuadRing(d, r == 1 ? OmegaKind::half : OmegaKind::sqrt);
  }

  bool is_integers() const { return kind_ == OmegaKind::integers; }
  std::int64_t d() const { return d_; }
  OmegaKind omega_kind() const { return kind_; }

  std::int64_t discriminant() const {
    switch (kind_) {
      case OmegaKind::integers: return 1;
      case OmegaKind::sqrt: return 4 * d_;
      case OmegaKind::half: return d_;
    }
    return 1;
  }

  // w satisfies w^2 = omega_trace * w - omega_norm.
  std::int64_t omega_trace() const { return kind_ == OmegaKind::half ? 1 : 0; }
  std::int64_t omega_norm() const {
    switch (kind_) {
      case OmegaKind::integers: return 0;
      case OmegaKind::sqrt: return -d_;
      case OmegaKind::half: return (1 - d_) / 4;
    }
    return 0;
  }

  bool is_imaginary() const { return !is_integers() && d_ < 0; }

  bool class_number_one() const {
    if (is_integers()) return true;
    static constexpr std::array<std::int64_t, 9> kImag{-1, -2, -3, -7, -11, -19, -43, -67, -163};
    static constexpr std::array<std::int64_t, 38> kReal{2,  3,  5,  6,  7,  11, 13, 14, 17, 19, 21, 22, 23,
                                                        29, 31, 33, 37, 38, 41, 43, 46, 47, 53, 57, 59, 61,
                                                        62, 67, 69, 71, 73, 77, 83, 86, 89, 93, 94, 97};
    if (d_ < 0) return std::find(kImag.begin(), kImag.end(), d_) != kImag.end();
    return std::find(kReal.begin(), kReal.end(), d_) != kReal.end();
  }

  bool operator==(const QuadRing& o) const { return kind_ == o.kind_ && d_ == o.d_; }

  std::string tag() const { return is_integers() ? "Z" : "O(Q(sqrt(" + std::to_string(d_) + ")))"; }

 private:
  QuadRing(std::int64_t d, OmegaKind kind) : d_(d), kind_(kind) {}
  std::int64_t d_;
  OmegaKind kind_;
};

inline QuadRing common_ring(const QuadRing& x, const QuadRing& y) {
  if (x == y) return x;
  if (x.is_integers()) return y;
  if (y.is_integers()) return x;
  throw std::invalid_argument("coefficient rings differ: " + x.tag() + " vs " + y.tag());
}

/// Element a + b*w of a QuadRing.
class QuadInt {
 public:
  QuadInt() : ring_(QuadRing::integers()) {}
  explicit QuadInt(QuadRing ring, BigInt a = 0, BigInt b = 0) : ring_(ring), a_(std::move(a)), b_(std::move(b)) {
    if (ring_.is_integers() && b_ != 0) throw std::invalid_argument("element of Z cannot have a w-part");
  }
  static QuadInt omega(const QuadRing& ring) {
    if (ring.is_integers()) throw std::invalid_argument("Z has no w");
    return QuadInt(ring, 0, 1);
  }

  const QuadRing& ring() const { return ring_; }
  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  /// Same element viewed in a ring that contains this one.
  QuadInt in_ring(const QuadRing& target) const {
    if (target == ring_) return *this;
    if (ring_.is_integers()) return QuadInt(target, a_, 0);
    if (target.is_integers() && b_ == 0) return QuadInt(target, a_, 0);
    throw std::invalid_argument("cannot move element of " + ring_.tag() + " into " + target.tag());
  }

  friend QuadInt operator+(const QuadInt& x, const QuadInt& y) {
    return QuadInt(common_ring(x.ring_, y.ring_), x.a_ + y.a_, x.b_ + y.b_);
  }
  friend QuadInt operator-(const QuadInt& x, const QuadInt& y) {
    return QuadInt(common_ring(x.ring_, y.ring_), x.a_ - y.a_, x.b_ - y.b_);
  }
  friend QuadInt operator*(const QuadInt& x, const QuadInt& y) {
    const QuadRing r = common_ring(x.ring_, y.ring_);
    const BigInt be = x.b_ * y.b_;
    return QuadInt(r, x.a_ * y.a_ - r.omega_norm() * be, x.a_ * y.b_ + x.b_ * y.a_ + r.omega_trace() * be);
  }
  QuadInt operator-() const { return QuadInt(ring_, -a_, -b_); }
  QuadInt& operator+=(const QuadInt& y) { return *this = *this + y; }
  QuadInt& operator-=(const QuadInt& y) { return *this = *this - y; }
  QuadInt& operator*=(const QuadInt& y) { return *this = *this * y; }

  friend bool operator==(const QuadInt& x, const QuadInt& y) {
    if (!(x.ring_ == y.ring_) && !x.ring_.is_integers() && !y.ring_.is_integers()) return false;
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadInt& x, const QuadInt& y) { return !(x == y); }
  /// Coordinate order; used for canonical sorting only.
  friend bool operator<(const QuadInt& x, const QuadInt& y) {
    return std::tie(x.a_, x.b_) < std::tie(y.a_, y.b_);
  }

  BigInt norm() const { return a_ * a_ + ring_.omega_trace() * a_ * b_ + ring_.omega_norm() * b_ * b_; }
  BigInt trace() const { return 2 * a_ + ring_.omega_trace() * b_; }

  /// Image under the nontrivial automorphism; identity on Z.
  QuadInt conjugate() const { return QuadInt(ring_, a_ + ring_.omega_trace() * b_, -b_); }

  QuadInt pow(std::uint64_t exp) const {
    QuadInt result(ring_, 1, 0);
    QuadInt base = *this;
    while (exp > 0) {
      if (exp & 1U) result *= base;
      exp >>= 1U;
      if (exp > 0) base *= base;
    }
    return result;
  }

  bool divisible_by(const BigInt& n) const { return a_ % n == 0 && b_ % n == 0; }

  QuadInt div_exact(const BigInt& n) const {
    if (!divisible_by(n)) throw std::domain_error("inexact division by " + n.str());
    return QuadInt(ring_, a_ / n, b_ / n);
  }

  /// x / y when the quotient lies in the ring.
  std::optional<QuadInt> divide(const QuadInt& y) const {
    if (y.is_zero()) throw std::domain_error("division by zero");
    const QuadRing r = common_ring(ring_, y.ring_);
    const QuadInt num = in_ring(r) * y.in_ring(r).conjugate();
    const BigInt n = y.norm();
    if (!num.divisible_by(n)) return std::nullopt;
    return QuadInt(r, num.a_ / n, num.b_ / n);
  }

  /// Coordinates reduced to [0, m).
  QuadInt mod_int(const BigInt& m) const { return QuadInt(ring_, floor_mod(a_, m), floor_mod(b_, m)); }

  QuadInt pow_mod(std::uint64_t exp, const BigInt& m) const {
    QuadInt result = QuadInt(ring_, 1, 0).mod_int(m);
    QuadInt base = mod_int(m);
    while (exp > 0) {
      if (exp & 1U) result = (result * base).mod_int(m);
      exp >>= 1U;
      if (exp > 0) base = (base * base).mod_int(m);
    }
    return result;
  }

  /// Order as a root of unity (1,2,3,4 or 6), or nullopt.
  std::optional<unsigned> root_of_unity_order() const {
    if (norm() != 1) return std::nullopt;
    const QuadInt one(ring_, 1, 0);
    for (unsigned k : {1U, 2U, 3U, 4U, 6U}) {
      if (pow(k) == one) return k;
    }
    return std::nullopt;
  }

  /// "a", or "a+b*w" / "a-b*w" when the w-part is nonzero.
  std::string to_string() const {
    if (b_ == 0) return a_.str();
    const BigInt ab = b_ < 0 ? BigInt(-b_) : b_;
    return a_.str() + (b_ < 0 ? "-" : "+") + ab.str() + "*w";
  }

  /// Accepts "a", "a+b*w", "a-b*w", "b*w", "w", "-w", "a+w"; for d = -1
  /// the letter i may stand for w.
  static QuadInt parse(const QuadRing& ring, const std::string& text) {
    std::string s;
    for (char ch : text)
      if (ch != ' ') s += ch;
    if (s.empty()) throw std::invalid_argument("empty coefficient");
    const char last = s.back();
    const bool has_omega = last == 'w' || (last == 'i' && !ring.is_integers() && ring.d() == -1);
    if (!has_omega) return QuadInt(ring, parse_bigint(s), 0);
    if (ring.is_integers()) throw std::invalid_argument("coefficient of Z cannot mention w: " + text);
    s.pop_back();
    if (!s.empty() && s.back() == '*') {
      s.pop_back();
      if (s.empty() || s.back() < '0' || s.back() > '9') throw std::invalid_argument("malformed coefficient: " + text);
    }
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
      if (s[k] == '+' || s[k] == '-') {
        split = k;
        break;
      }
    }
    std::string a_text = split == std::string::npos ? "" : s.substr(0, split);
    std::string b_text = split == std::string::npos ? s : s.substr(split);
    BigInt a = a_text.empty() ? BigInt(0) : parse_bigint(a_text);
    BigInt b;
    if (b_text.empty() || b_text == "+") {
      b = 1;
    } else if (b_text == "-") {
      b = -1;
    } else {
      b = parse_bigint(b_text);
    }
    return QuadInt(ring, a, b);
  }

 private:
  QuadRing ring_;
  BigInt a_;
  BigInt b_;
};

inline std::ostream& operator<<(std::ostream& os, const QuadInt& x) { return os << x.to_string(); }

/// Units of finite order in the ring (all units for imaginary rings).
inline std::vector<QuadInt> torsion_units(const QuadRing& ring) {
  std::vector<QuadInt> units{QuadInt(ring, 1), QuadInt(ring, -1)};
  if (ring.is_integers()) return units;
  if (ring.d() == -1) {
    units.push_back(QuadInt(ring, 0, 1));
    units.push_back(QuadInt(ring, 0, -1));
  } else if (ring.d() == -3) {
    const QuadInt w = QuadInt::omega(ring);
    for (unsigned k = 1; k < 6; ++k) {
      if (k == 3) continue;
      units.push_back(w.pow(k));
    }
  }
  return units;
}

/// Associate of x chosen to maximise (a, b) over the torsion units.
inline QuadInt canonical_associate(const QuadInt& x) {
  QuadInt best = x;
  for (const auto& u : torsion_units(x.ring())) {
    QuadInt c = x * u;
    if (std::tie(c.a(), c.b()) > std::tie(best.a(), best.b())) best = c;
  }
  return best;
}

inline QuadInt galois_conjugate(const QuadInt& x) { return x.conjugate(); }

enum class SplitKind { split, inert, ramified };

inline std::string to_string(SplitKind k) {
  switch (k) {
    case SplitKind::split: return "split";
    case SplitKind::inert: return "inert";
    case SplitKind::ramified: return "ramified";
  }
  return "?";
}

/// A prime ideal P = (generator) of a class-number-one quadratic ring.
struct PrimeOfL {
  std::uint64_t p = 0;
  SplitKind kind = SplitKind::inert;
  unsigned inertia_degree = 1;
  QuadInt generator;
  /// For split primes: r in [0, p) with w = r (mod P).
  std::optional<std::uint64_t> hensel_root;

  std::string label() const { return generator.to_string(); }

  friend bool operator==(const PrimeOfL& x, const PrimeOfL& y) {
    return x.p == y.p && x.generator == y.generator;
  }
  friend bool operator<(const PrimeOfL& x, const PrimeOfL& y) {
    return std::tie(x.p, x.generator) < std::tie(y.p, y.generator);
  }
};

namespace detail {

inline std::optional<BigInt> exact_sqrt(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

// Some pi with |N(pi)| = p, by solving the norm form for a at each b.
inline std::optional<QuadInt> find_norm_p(const QuadRing& ring, std::uint64_t p, std::int64_t b_limit) {
  const BigInt t = ring.omega_trace();
  const BigInt n = ring.omega_norm();
  for (std::int64_t b = 0; b <= b_limit; ++b) {
    for (int sign : {1, -1}) {
      // a^2 + t*b*a + n*b^2 - sign*p = 0
      const BigInt bb = b;
      const BigInt disc = t * t * bb * bb - 4 * (n * bb * bb - sign * BigInt(p));
      auto root = exact_sqrt(disc);
      if (!root) continue;
      for (const BigInt& num : {BigInt(-t * bb + *root), BigInt(-t * bb - *root)}) {
        if (num % 2 != 0) continue;
        QuadInt cand(ring, num / 2, bb);
        const BigInt nrm = cand.norm();
        if (nrm == p || nrm == -BigInt(p)) return cand;
      }
    }
  }
  return std::nullopt;
}

inline std::uint64_t omega_residue(const QuadInt& pi, std::uint64_t p) {
  // pi = a + b w lies in P, so w = -a / b (mod p).
  const std::uint64_t a = to_u64(floor_mod(pi.a(), p));
  const std::uint64_t b = to_u64(floor_mod(pi.b(), p));
  const std::uint64_t binv = powmod(b, p - 2, p);
  return mulmod((p - a) % p, binv, p);
}

}  // namespace detail

/// All primes of the ring above the rational prime p.
inline std::vector<PrimeOfL> split_prime(std::uint64_t p, const QuadRing& ring) {
  if (!is_prime(p)) throw std::invalid_argument("split_prime needs a rational prime");
  if (ring.is_integers()) {
    return {PrimeOfL{p, SplitKind::inert, 1, QuadInt(ring, p), std::nullopt}};
  }
  if (!ring.class_number_one()) {
    throw CapabilityError("prime splitting needs a class-number-one ring; d = " + std::to_string(ring.d()));
  }
  const int chi = kronecker_symbol(ring.discriminant(), p);
  if (chi == -1) return {PrimeOfL{p, SplitKind::inert, 2, QuadInt(ring, p), std::nullopt}};
  const std::int64_t limit = ring.is_imaginary() ? static_cast<std::int64_t>(2 * std::sqrt(static_cast<double>(p)) + 2)
                                                 : 2'000'000;
  auto pi = detail::find_norm_p(ring, p, limit);
  if (!pi) throw CapabilityError("no generator of norm +-" + std::to_string(p) + " found");
  if (chi == 0) return {PrimeOfL{p, SplitKind::ramified, 1, canonical_associate(*pi), std::nullopt}};
  std::vector<PrimeOfL> out;
  for (const QuadInt& g : {*pi, pi->conjugate()}) {
    const QuadInt c = canonical_associate(g);
    out.push_back(PrimeOfL{p, SplitKind::split, 1, c, detail::omega_residue(c, p)});
  }
  std::sort(out.begin(), out.end(), [](const PrimeOfL& x, const PrimeOfL& y) {
    return std::tie(x.generator.a(), x.generator.b()) > std::tie(y.generator.a(), y.generator.b());
  });
  return out;
}

/// Largest k with x in P^k.
inline unsigned valuation_at_prime(QuadInt x, const PrimeOfL& prime) {
  if (x.is_zero()) throw std::domain_error("valuation of 0 is infinite");
  unsigned v = 0;
  while (true) {
    auto q = x.divide(prime.generator);
    if (!q) return v;
    x = *q;
    ++v;
  }
}

enum class GaloisElement { identity, conjugation };

/// Frobenius of an unramified rational prime in a quadratic ring.
inline GaloisElement artin_frobenius(std::uint64_t p, const QuadRing& ring) {
  if (ring.is_integers()) return GaloisElement::identity;
  const int chi = kronecker_symbol(ring.discriminant(), p);
  if (chi == 0) throw std::domain_error(std::to_string(p) + " is ramified; no Frobenius element");
  return chi == 1 ? GaloisElement::identity : GaloisElement::conjugation;
}

inline QuadInt apply(GaloisElement g, const QuadInt& x) {
  return g == GaloisElement::identity ? x : x.conjugate();
}

}  // namespace wittc
