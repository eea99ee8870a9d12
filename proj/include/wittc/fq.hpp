#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wittc/arith.hpp"

namespace wittc {

inline constexpr unsigned kMaxFqDegree = 8;
using FqCoords = std::array<std::uint32_t, kMaxFqDegree>;

namespace detail {

// Dense polynomials over F_p, lowest degree first.
using PolyP = std::vector<std::uint64_t>;

inline void trim(PolyP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline PolyP poly_mod(PolyP a, const PolyP& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = powmod(m.back(), p - 2, p);
  while (a.size() >= m.size()) {
    const std::uint64_t factor = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(factor, m[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

inline PolyP poly_mul_mod(const PolyP& a, const PolyP& b, const PolyP& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyP prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  return poly_mod(std::move(prod), m, p);
}

inline PolyP poly_pow_mod(PolyP base, std::uint64_t exp, const PolyP& m, std::uint64_t p) {
  PolyP result{1};
  base = poly_mod(std::move(base), m, p);
  while (exp > 0) {
    if (exp & 1U) result = poly_mul_mod(result, base, m, p);
    base = poly_mul_mod(base, base, m, p);
    exp >>= 1U;
  }
  return result;
}

inline PolyP poly_gcd(PolyP a, PolyP b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyP r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod m
inline PolyP frobenius_power_of_x(unsigned k, const PolyP& m, std::uint64_t p) {
  PolyP x{0, 1};
  PolyP cur = poly_mod(x, m, p);
  for (unsigned i = 0; i < k; ++i) cur = poly_pow_mod(cur, p, m, p);
  return cur;
}

// Rabin's irreducibility test for a monic polynomial of degree e over F_p.
inline bool is_irreducible(const PolyP& f, std::uint64_t p) {
  const unsigned e = static_cast<unsigned>(f.size() - 1);
  if (e == 0) return false;
  if (e == 1) return true;
  const PolyP x{0, 1};
  auto minus_x = [&](PolyP g) {
    if (g.size() < 2) g.resize(2, 0);
    g[1] = (g[1] + p - 1) % p;
    trim(g);
    return g;
  };
  if (!minus_x(frobenius_power_of_x(e, f, p)).empty()) return false;
  for (std::uint64_t r : prime_divisors(e)) {
    PolyP g = minus_x(frobenius_power_of_x(e / static_cast<unsigned>(r), f, p));
    PolyP d = poly_gcd(f, g, p);
    if (d.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

/// The field F_{p^e}, realised as F_p[x]/(m) for the lexicographically least
/// monic irreducible m of degree e (coefficients read c_0 first, smallest
/// base-p encoding of (c_0..c_{e-1}) wins).
class FqField {
 public:
  static std::shared_ptr<const FqField> make(std::uint32_t p, unsigned e = 1) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (e == 0 || e > kMaxFqDegree) {
      throw std::invalid_argument("extension degree must be in 1.." + std::to_string(kMaxFqDegree));
    }
    unsigned __int128 q = 1;
    for (unsigned i = 0; i < e; ++i) q *= p;
    if (q >> 62) throw std::invalid_argument("field too large");
    return std::shared_ptr<const FqField>(new FqField(p, e, least_irreducible(p, e)));
  }

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint64_t order() const {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e_; ++i) q *= p_;
    return q;
  }
  /// Monic modulus, lowest degree first, length e + 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  bool same_as(const FqField& other) const { return p_ == other.p_ && e_ == other.e_; }

  FqCoords add(const FqCoords& a, const FqCoords& b) const {
    FqCoords r{};
    for (unsigned i = 0; i < e_; ++i) r[i] = static_cast<std::uint32_t>((std::uint64_t{a[i]} + b[i]) % p_);
    return r;
  }

  FqCoords sub(const FqCoords& a, const FqCoords& b) const {
    FqCoords r{};
    for (unsigned i = 0; i < e_; ++i) r[i] = static_cast<std::uint32_t>((std::uint64_t{a[i]} + p_ - b[i]) % p_);
    return r;
  }

  FqCoords mul(const FqCoords& a, const FqCoords& b) const {
    if (e_ == 1) {
      FqCoords r{};
      r[0] = static_cast<std::uint32_t>(std::uint64_t{a[0]} * b[0] % p_);
      return r;
    }
    std::array<std::uint64_t, 2 * kMaxFqDegree> prod{};
    for (unsigned i = 0; i < e_; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < e_; ++j) {
        prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
      }
    }
    for (unsigned k = 2 * e_ - 2; k >= e_; --k) {
      const std::uint64_t c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (unsigned i = 0; i < e_; ++i) {
        prod[k - e_ + i] = (prod[k - e_ + i] + (p_ - c) * modulus_[i]) % p_;
      }
    }
    FqCoords r{};
    for (unsigned i = 0; i < e_; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
    return r;
  }

 private:
  FqField(std::uint32_t p, unsigned e, std::vector<std::uint32_t> modulus)
      : p_(p), e_(e), modulus_(std::move(modulus)) {}

  static std::vector<std::uint32_t> least_irreducible(std::uint32_t p, unsigned e) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < e; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      detail::PolyP f(e + 1, 0);
      std::uint64_t c = code;
      for (unsigned i = 0; i < e; ++i) {
        f[i] = c % p;
        c /= p;
      }
      f[e] = 1;
      if (detail::is_irreducible(f, p)) {
        return std::vector<std::uint32_t>(f.begin(), f.end());
      }
    }
    throw std::logic_error("no irreducible polynomial found");
  }

  std::uint32_t p_;
  unsigned e_;
  std::vector<std::uint32_t> modulus_;
};

using FqFieldPtr = std::shared_ptr<const FqField>;

class FqElem {
 public:
  FqElem(FqFieldPtr field, FqCoords coords) : field_(std::move(field)), coords_(coords) {}

  static FqElem zero(FqFieldPtr field) { return FqElem(std::move(field), FqCoords{}); }
  static FqElem one(FqFieldPtr field) { return from_int(std::move(field), 1); }
  static FqElem from_int(FqFieldPtr field, std::int64_t n) {
    FqCoords c{};
    const std::int64_t p = field->characteristic();
    c[0] = static_cast<std::uint32_t>(((n % p) + p) % p);
    return FqElem(std::move(field), c);
  }
  static FqElem from_coords(FqFieldPtr field, const std::vector<std::int64_t>& coords) {
    if (coords.size() != field->degree()) {
      throw std::invalid_argument("coordinate count must equal the extension degree");
    }
    FqCoords c{};
    const std::int64_t p = field->characteristic();
    for (std::size_t i = 0; i < coords.size(); ++i) {
      c[i] = static_cast<std::uint32_t>(((coords[i] % p) + p) % p);
    }
    return FqElem(std::move(field), c);
  }

  /// Every element of the field, in coordinate-code order. Small fields only.
  static std::vector<FqElem> all(const FqFieldPtr& field) {
    std::vector<FqElem> out;
    const std::uint64_t q = field->order();
    out.reserve(q);
    for (std::uint64_t code = 0; code < q; ++code) {
      FqCoords c{};
      std::uint64_t k = code;
      for (unsigned i = 0; i < field->degree(); ++i) {
        c[i] = static_cast<std::uint32_t>(k % field->characteristic());
        k /= field->characteristic();
      }
      out.emplace_back(field, c);
    }
    return out;
  }

  const FqFieldPtr& field() const { return field_; }
  const FqCoords& coords() const { return coords_; }
  bool is_zero() const {
    for (unsigned i = 0; i < field_->degree(); ++i)
      if (coords_[i] != 0) return false;
    return true;
  }

  FqElem operator+(const FqElem& o) const { return FqElem(field_, field_->add(coords_, checked(o).coords_)); }
  FqElem operator-(const FqElem& o) const { return FqElem(field_, field_->sub(coords_, checked(o).coords_)); }
  FqElem operator*(const FqElem& o) const { return FqElem(field_, field_->mul(coords_, checked(o).coords_)); }
  FqElem operator-() const { return FqElem(field_, field_->sub(FqCoords{}, coords_)); }
  FqElem& operator+=(const FqElem& o) { return *this = *this + o; }
  FqElem& operator*=(const FqElem& o) { return *this = *this * o; }

  bool operator==(const FqElem& o) const {
    if (!field_->same_as(*o.field_)) return false;
    for (unsigned i = 0; i < field_->degree(); ++i)
      if (coords_[i] != o.coords_[i]) return false;
    return true;
  }

  FqElem pow(std::uint64_t exp) const {
    FqElem result = one(field_);
    FqElem base = *this;
    while (exp > 0) {
      if (exp & 1U) result *= base;
      base *= base;
      exp >>= 1U;
    }
    return result;
  }

  FqElem frobenius() const { return pow(field_->characteristic()); }

  /// The unique y with y^p = x, computed as x^(p^(e-1)).
  FqElem inverse_frobenius() const {
    FqElem y = *this;
    for (unsigned i = 1; i < field_->degree(); ++i) y = y.frobenius();
    return y;
  }

  FqElem inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in a finite field");
    return pow(field_->order() - 2);
  }

  /// "[c0,c1,...]" in the polynomial basis, constant coordinate first.
  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (unsigned i = 0; i < field_->degree(); ++i) {
      if (i) os << ',';
      os << coords_[i];
    }
    os << ']';
    return os.str();
  }

  static FqElem parse(const FqFieldPtr& field, const std::string& text) {
    std::vector<std::int64_t> coords;
    std::string body = text;
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
      throw std::invalid_argument("finite field element must look like [c0,c1,...]: " + text);
    }
    body = body.substr(1, body.size() - 2);
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      coords.push_back(parse_bigint(tok).convert_to<std::int64_t>());
    }
    return from_coords(field, coords);
  }

 private:
  const FqElem& checked(const FqElem& o) const {
    if (field_ != o.field_ && !field_->same_as(*o.field_)) {
      throw std::invalid_argument("finite field mismatch");
    }
    return o;
  }

  FqFieldPtr field_;
  FqCoords coords_;
};

inline FqElem fq_inverse_frobenius(const FqElem& x) { return x.inverse_frobenius(); }

}  // namespace wittc
