#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wittc/deligne_ribet.hpp"
#include "wittc/membership.hpp"
#include "wittc/orbit.hpp"
#include "wittc/witt_vector.hpp"

namespace wittc {

enum class Verdict { proven, refuted, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::proven: return "proven";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct Condition {
  Verdict verdict = Verdict::inconclusive;
  std::string detail;
};

struct ReportLimits {
  std::uint64_t prime_bound = 100;
  std::uint64_t index_bound = 2000;
  unsigned depth = 2;
  std::size_t max_states = 512;
  std::uint64_t roundtrip_bound = 10000;
  unsigned workers = 1;
};

/// The four equivalent integrality conditions plus supporting invariants.
struct IntegralityReport {
  Condition monic;               // (1) a monic integer polynomial kills xi
  Condition finite_coefficients; // (2) C_xi is finite
  Condition finite_orbit;        // (3) the psi-orbit is finite
  Condition automatic;           // (4) a DFAO over the primes generates xi
  std::optional<std::string> minimal_polynomial;
  std::optional<std::size_t> orbit_size;
  MinimalModulus minimal_modulus;
  std::optional<std::size_t> algebra_dimension;
  Condition membership;          // informational: bounded Witt congruences

  Verdict overall() const {
    const Condition* all[] = {&monic, &finite_coefficients, &finite_orbit, &automatic};
    bool proven = true;
    for (const Condition* c : all) {
      if (c->verdict == Verdict::refuted) return Verdict::refuted;
      proven = proven && c->verdict == Verdict::proven;
    }
    return proven ? Verdict::proven : Verdict::inconclusive;
  }
};

namespace detail {

inline std::string join_indices(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline std::string count_of(std::size_t n, const std::string& noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

inline Condition membership_line(const WittVector& xi, const ReportLimits& lim) {
  Condition c;
  if (xi.ring().is_integers()) {
    const auto r = check_membership_Z(xi, lim.prime_bound, lim.index_bound, lim.workers);
    if (r.status == CheckStatus::counterexample) {
      c.verdict = Verdict::refuted;
      c.detail = "congruence fails at (p=" + std::to_string(r.p) + ",a=" + std::to_string(r.a) + ")";
    } else if (r.status == CheckStatus::inconclusive) {
      c.detail = r.note;
    } else {
      c.verdict = r.proven ? Verdict::proven : Verdict::inconclusive;
      c.detail = "congruence " + r.note;
    }
    return c;
  }
  std::vector<std::uint64_t> primes = primes_up_to(std::min<std::uint64_t>(lim.prime_bound, 20));
  const std::uint64_t bound = std::min<std::uint64_t>(lim.index_bound, 200);
  const auto r = check_membership_derivative(xi, primes, lim.depth, bound, lim.workers);
  if (r.status == CheckStatus::counterexample) {
    c.verdict = Verdict::refuted;
    c.detail = "derivative along (" + join_indices(r.path) + ") not integral at a=" + std::to_string(r.a);
  } else if (r.status == CheckStatus::inconclusive) {
    c.detail = r.note;
  } else {
    c.detail = "derivatives integral to depth " + std::to_string(lim.depth) + " within bounds";
  }
  return c;
}

}  // namespace detail

inline IntegralityReport integrality_report(const WittVector& xi, const ReportLimits& lim = {}) {
  IntegralityReport rep;
  rep.membership = detail::membership_line(xi, lim);
  rep.minimal_modulus = minimal_modulus(xi);

  const CoefficientSet cs = coefficient_set(xi);
  if (cs.kind == CoefficientSetKind::exact_infinite) {
    const std::string why = "coefficient set infinite: base " + cs.witness_base->to_string() +
                            " is not a root of unity; heights grow along n = " + detail::join_indices(cs.growth_chain);
    rep.finite_coefficients = {Verdict::refuted, why};
    rep.monic = {Verdict::refuted, "no monic polynomial has infinitely many roots"};
    rep.finite_orbit = {Verdict::refuted, "orbit states carry infinitely many coefficients"};
    rep.automatic = {Verdict::refuted, "an automaton has finitely many outputs"};
    return rep;
  }
  if (cs.kind == CoefficientSetKind::bounded_scan) {
    const std::string why = "table of bound " + std::to_string(cs.bound) + " has " + std::to_string(cs.values.size()) +
                            " distinct values; tables never prove integrality";
    rep.finite_coefficients = {Verdict::inconclusive, why};
    rep.monic = {Verdict::inconclusive, why};
    rep.finite_orbit = {Verdict::inconclusive, why};
    rep.automatic = {Verdict::inconclusive, why};
    return rep;
  }

  rep.finite_coefficients = {Verdict::proven, detail::count_of(cs.values.size(), "distinct coefficient")};
  const IntPoly mp = minimal_polynomial(cs);
  rep.minimal_polynomial = mp.to_string();
  rep.monic = {Verdict::proven, "annihilated by " + mp.to_string()};

  const OrbitResult o = orbit(xi, lim.max_states);
  if (!o.complete) {
    rep.finite_orbit = {Verdict::inconclusive, o.note};
    rep.automatic = {Verdict::inconclusive, "orbit incomplete"};
    return rep;
  }
  rep.orbit_size = o.states.size();
  rep.finite_orbit = {Verdict::proven, detail::count_of(o.states.size(), "state")};
  rep.algebra_dimension = algebra_dimension(o);

  const auto [d, c] = orbit_to_dfao(o);
  const WittVector machine = dfao_to_witt(d, c, xi.ring());
  for (std::uint64_t n = 1; n <= lim.roundtrip_bound; ++n) {
    if (coefficient(machine, n) != coefficient(xi, n)) {
      rep.automatic = {Verdict::refuted, "synthesized automaton disagrees at n = " + std::to_string(n)};
      return rep;
    }
  }
  rep.automatic = {Verdict::proven, std::to_string(d.size()) + "-state automaton reproduces n <= " +
                                        std::to_string(lim.roundtrip_bound)};
  return rep;
}

}  // namespace wittc
