#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace wittc {

using BigInt = boost::multiprecision::mpz_int;

inline BigInt ipow(BigInt base, std::uint64_t exp) {
  BigInt result = 1;
  while (exp > 0) {
    if (exp & 1U) result *= base;
    exp >>= 1U;
    if (exp > 0) base *= base;
  }
  return result;
}

// Least nonnegative residue; m > 0.
inline BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline std::string to_string(const BigInt& x) { return x.str(); }

inline BigInt parse_bigint(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw std::invalid_argument("empty integer literal");
  for (std::size_t k = i; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9') {
      throw std::invalid_argument("malformed integer literal: " + std::string(text));
    }
  }
  return BigInt(std::string(text[0] == '+' ? text.substr(1) : text));
}

inline bool fits_u64(const BigInt& x) {
  return x >= 0 && x <= BigInt(std::numeric_limits<std::uint64_t>::max());
}

inline std::uint64_t to_u64(const BigInt& x) {
  if (!fits_u64(x)) throw std::out_of_range("integer does not fit in 64 bits: " + x.str());
  return x.convert_to<std::uint64_t>();
}

}  // namespace wittc
