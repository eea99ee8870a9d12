#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

#include "wittc/wittc.hpp"

namespace wittc::testing {

inline std::string fixture(const std::string& name) { return std::string(WITTC_FIXTURES) + "/" + name; }

inline WittVector load(const std::string& name) { return witt_from_json(read_json_file(fixture(name))); }

inline const QuadRing& Z() {
  static const QuadRing r = QuadRing::integers();
  return r;
}

inline const QuadRing& Gauss() {
  static const QuadRing r = QuadRing::make(-1);
  return r;
}

inline QuadInt zi(std::int64_t a) { return QuadInt(Z(), a); }
inline QuadInt gi(std::int64_t a, std::int64_t b) { return QuadInt(Gauss(), a, b); }

/// Seeds are pinned so property tests are reproducible.
inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(0x5eed0000ULL + salt); }

// Searches the generator t directly: (a)(b)^-1 = (t) forces t = +-a/b; keep the
// positive one and test t - 1 in f b^-1 Z, i.e. (a - b)/b = k f/b for some integer k.
inline bool t_search(std::int64_t a, std::int64_t b, std::int64_t f) {
  for (int sign : {1, -1}) {
    const std::int64_t tn = sign * a, td = b;  // t = tn / td
    if (tn <= 0) continue;
    for (std::int64_t k = -400; k <= 400; ++k) {
      // tn/td - 1 == k f / b  <=>  (tn - td) b == k f td
      if ((tn - td) * b == k * f * td) return true;
    }
  }
  return false;
}

struct Run {
  int code = -1;
  std::string out;
};

/// Runs a shell command and captures stdout.
inline Run shell(const std::string& cmd) {
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + cmd);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace wittc::testing
