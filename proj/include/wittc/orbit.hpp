#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wittc/arith.hpp"
#include "wittc/bigint.hpp"
#include "wittc/dfao.hpp"
#include "wittc/ideal.hpp"
#include "wittc/quadratic.hpp"
#include "wittc/witt_vector.hpp"

namespace wittc {

enum class CoefficientSetKind { exact_finite, exact_infinite, bounded_scan };

/// The value set of a vector. For exact_infinite, `witness_base` is a
/// non-torsion base and `growth_chain` lists indices whose coefficients have
/// strictly increasing height max(|a|, |b|).
struct CoefficientSet {
  CoefficientSetKind kind = CoefficientSetKind::exact_finite;
  std::set<QuadInt> values;
  std::optional<QuadInt> witness_base;
  std::vector<std::uint64_t> growth_chain;
  std::uint64_t bound = 0;

  bool finite() const { return kind == CoefficientSetKind::exact_finite; }
};

inline BigInt height(const QuadInt& x) { return std::max(BigInt(abs(x.a())), BigInt(abs(x.b()))); }

inline CoefficientSet coefficient_set(const WittVector& xi, std::size_t chain_length = 8) {
  CoefficientSet out;
  if (xi.is_periodic()) {
    out.values.insert(xi.as_periodic().values.begin(), xi.as_periodic().values.end());
  } else if (xi.is_automaton()) {
    const auto& rep = xi.as_automaton();
    for (std::size_t s : reachable_states(rep.dfao, rep.classifier, rep.dfao.initial)) out.values.insert(rep.dfao.output[s]);
  } else if (xi.is_table()) {
    out.kind = CoefficientSetKind::bounded_scan;
    out.values.insert(xi.as_table().values.begin(), xi.as_table().values.end());
    out.bound = xi.as_table().bound;
  } else if (is_unity_geometric(xi)) {
    const std::uint64_t n = unity_period(xi);
    for (std::uint64_t k = 1; k <= n; ++k) out.values.insert(coefficient(xi, k));
    if (xi.as_geometric().terms.empty()) out.values.insert(QuadInt(xi.ring()));
  } else {
    out.kind = CoefficientSetKind::exact_infinite;
    for (const auto& t : xi.as_geometric().terms) {
      if (!t.base.root_of_unity_order()) {
        out.witness_base = t.base;
        break;
      }
    }
    BigInt record = -1;
    for (std::uint64_t n = 1; out.growth_chain.size() < chain_length && n <= 4096; ++n) {
      const BigInt h = height(coefficient(xi, n));
      if (h > record) {
        record = h;
        out.growth_chain.push_back(n);
      }
    }
  }
  return out;
}

/// d_xi with sigma(d) and the orbit bound |C|^sigma(d).
struct DivisorBound {
  IdealQ d;
  std::uint64_t sigma = 1;
  std::size_t coefficient_count = 0;
  BigInt orbit_bound = 1;
};

/// v_p(d) is the largest e with some nonzero difference of coefficients in
/// p^e O_L, i.e. the p-adic valuation of the difference's content gcd(a, b).
inline DivisorBound divisor_bound(const CoefficientSet& c) {
  if (!c.finite()) throw std::domain_error("divisor bound needs an exactly finite coefficient set");
  std::map<std::uint64_t, unsigned> exps;
  for (auto x = c.values.begin(); x != c.values.end(); ++x) {
    for (auto y = std::next(x); y != c.values.end(); ++y) {
      const QuadInt diff = *x - *y;
      const BigInt content = gcd(diff.a(), diff.b());
      const IdealQ f = factor(abs(content));
      for (const auto& [p, e] : f.exponents()) exps[p] = std::max(exps[p], e);
    }
  }
  DivisorBound out;
  out.d = IdealQ(exps);
  out.sigma = divisor_count(out.d);
  out.coefficient_count = c.values.size();
  out.orbit_bound = ipow(BigInt(c.values.size()), out.sigma);
  return out;
}

inline DivisorBound divisor_bound(const WittVector& xi) { return divisor_bound(coefficient_set(xi)); }

/// Closure of a vector under the Frobenius shifts. Transitions are keyed by
/// the classifier's symbols; when `complete` is false they may be partial.
struct OrbitResult {
  QuadRing ring = QuadRing::integers();
  std::vector<WittVector> states;
  PrimeClassifier classifier;
  std::vector<std::map<std::string, std::size_t>> transition;
  std::size_t initial = 0;
  bool complete = false;
  std::optional<DivisorBound> certificate;
  std::string note;
};

namespace detail {

inline std::uint64_t abs_discriminant(const QuadRing& r) {
  const std::int64_t d = r.discriminant();
  return static_cast<std::uint64_t>(d < 0 ? -d : d);
}

inline OrbitResult closure(const WittVector& xi, const PrimeClassifier& c, std::size_t max_states) {
  OrbitResult o;
  o.ring = xi.ring();
  o.classifier = c;
  o.states.push_back(xi);
  const auto symbols = c.symbols();
  std::vector<std::uint64_t> reps;
  for (const auto& s : symbols) reps.push_back(c.representative(s));
  for (std::size_t k = 0; k < o.states.size(); ++k) {
    std::map<std::string, std::size_t> row;
    for (std::size_t j = 0; j < symbols.size(); ++j) {
      WittVector next = frobenius_shift(o.states[k], reps[j]);
      auto it = std::find(o.states.begin(), o.states.end(), next);
      if (it == o.states.end()) {
        if (o.states.size() >= max_states) {
          o.transition.push_back(std::move(row));
          o.note = "state limit " + std::to_string(max_states) + " reached";
          return o;
        }
        o.states.push_back(std::move(next));
        it = std::prev(o.states.end());
      }
      row[symbols[j]] = static_cast<std::size_t>(it - o.states.begin());
    }
    o.transition.push_back(std::move(row));
  }
  o.complete = true;
  return o;
}

/// Exploration by explicit primes only; never claims completeness.
inline OrbitResult explore(const WittVector& xi, std::size_t max_states, std::uint64_t prime_limit) {
  std::set<std::uint64_t> primes;
  for (std::uint64_t p : primes_up_to(prime_limit)) primes.insert(p);
  // Modulus 1 with one class; the class column stays empty.
  PrimeClassifier c(primes, 1, {{0, "c0"}});
  OrbitResult o;
  o.ring = xi.ring();
  o.classifier = c;
  o.states.push_back(xi);
  for (std::size_t k = 0; k < o.states.size(); ++k) {
    std::map<std::string, std::size_t> row;
    for (std::uint64_t p : primes) {
      WittVector next = frobenius_shift(o.states[k], p);
      auto it = std::find(o.states.begin(), o.states.end(), next);
      if (it == o.states.end()) {
        if (o.states.size() >= max_states) {
          o.transition.push_back(std::move(row));
          o.note = "state limit " + std::to_string(max_states) + " reached";
          return o;
        }
        o.states.push_back(std::move(next));
        it = std::prev(o.states.end());
      }
      row[PrimeClassifier::prime_symbol(p)] = static_cast<std::size_t>(it - o.states.begin());
    }
    o.transition.push_back(std::move(row));
  }
  o.note = "explored primes up to " + std::to_string(prime_limit) + " only";
  return o;
}

}  // namespace detail

/// Breadth-first orbit of xi under psi_p, states named in discovery order.
inline OrbitResult orbit(const WittVector& xi, std::size_t max_states = 512, std::uint64_t explore_prime_limit = 30) {
  if (max_states == 0) throw std::invalid_argument("max_states must be positive");
  OrbitResult o;
  if (xi.is_automaton()) {
    const auto& rep = xi.as_automaton();
    const Dfao m = minimize(rep.dfao, rep.classifier);
    o.ring = xi.ring();
    o.classifier = rep.classifier;
    if (m.size() > max_states) {
      o.states.push_back(xi);
      o.note = "state limit " + std::to_string(max_states) + " reached";
      o.transition.emplace_back();
      return o;
    }
    for (std::size_t s = 0; s < m.size(); ++s) {
      Dfao shifted = m;
      shifted.initial = s;
      o.states.push_back(WittVector::automaton(xi.ring(), std::move(shifted), rep.classifier));
    }
    o.transition = m.delta;
    o.complete = true;
  } else if (xi.is_periodic()) {
    const std::uint64_t f = xi.as_periodic().modulus;
    o = detail::closure(xi, PrimeClassifier::with_default_labels({}, f), max_states);
  } else if (is_unity_geometric(xi)) {
    const std::uint64_t n = unity_period(xi);
    std::set<std::uint64_t> exceptional;
    for (std::uint64_t q : prime_divisors(n * detail::abs_discriminant(xi.ring()))) exceptional.insert(q);
    o = detail::closure(xi, PrimeClassifier::with_default_labels(exceptional, n), max_states);
  } else {
    o = detail::explore(xi, max_states, explore_prime_limit);
  }
  const CoefficientSet cs = coefficient_set(xi);
  if (cs.finite()) o.certificate = divisor_bound(cs);
  return o;
}

/// The machine whose states are the orbit, with tau(eta) = eta_1.
inline std::pair<Dfao, PrimeClassifier> orbit_to_dfao(const OrbitResult& o) {
  if (!o.complete) throw std::invalid_argument("orbit is incomplete; no automaton");
  Dfao d;
  d.ring = o.ring;
  d.initial = o.initial;
  d.delta = o.transition;
  for (std::size_t k = 0; k < o.states.size(); ++k) {
    d.states.push_back("s" + std::to_string(k));
    d.output.push_back(coefficient(o.states[k], 1));
  }
  validate(d, o.classifier);
  return {std::move(d), o.classifier};
}

inline WittVector dfao_to_witt(const Dfao& d, const PrimeClassifier& c, const QuadRing& ring) {
  return WittVector::automaton(ring, d, c);
}

/// Monic polynomial with integer coefficients, low degree first.
struct IntPoly {
  std::vector<BigInt> coeffs;

  std::size_t degree() const { return coeffs.size() - 1; }

  QuadInt evaluate(const QuadInt& x) const {
    QuadInt acc(x.ring());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + QuadInt(x.ring(), *it);
    return acc;
  }

  /// "X^3 - 4X", "X - 7", "X".
  std::string to_string() const {
    std::string s;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      const BigInt& c = coeffs[k];
      if (c == 0) continue;
      const BigInt mag = abs(c);
      if (s.empty()) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      if (mag != 1 || k == 0) s += mag.str();
      if (k >= 1) s += "X";
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
  }
};

/// prod (X - c) over the conjugation closure of the coefficient set.
inline IntPoly minimal_polynomial(const CoefficientSet& c) {
  if (!c.finite()) throw std::domain_error("not integral: coefficient set is not finite");
  std::set<QuadInt> roots;
  for (const auto& v : c.values) {
    roots.insert(v);
    roots.insert(v.conjugate());
  }
  const QuadRing ring = roots.begin()->ring();
  std::vector<QuadInt> poly{QuadInt(ring, 1)};
  for (const auto& r : roots) {
    std::vector<QuadInt> next(poly.size() + 1, QuadInt(ring));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * r;
    }
    poly = std::move(next);
  }
  IntPoly out;
  for (const auto& q : poly) {
    if (!q.is_rational()) throw std::logic_error("conjugation-closed product has a non-rational coefficient");
    out.coeffs.push_back(q.a());
  }
  return out;
}

inline IntPoly minimal_polynomial(const WittVector& xi) { return minimal_polynomial(coefficient_set(xi)); }

namespace detail {

/// Rank over Q of integer rows by fraction-free elimination.
inline std::size_t bareiss_rank(std::vector<std::vector<BigInt>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) m[i][j] = (m[i][j] * m[rank][col] - m[i][col] * m[rank][j]) / prev;
      m[i][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

inline std::vector<BigInt> rational_coordinates(const std::vector<QuadInt>& f) {
  std::vector<BigInt> row;
  row.reserve(2 * f.size());
  for (const auto& x : f) {
    row.push_back(x.a());
    row.push_back(x.b());
  }
  return row;
}

}  // namespace detail

/// Dimension over Q of the algebra generated by 1 and the orbit states.
///
/// Every index n acts on the tuple of orbit states by s_i |-> psi_n s_i, and
/// eta_n depends only on the resulting tuple, so the reachable tuples form a
/// finite separating set of sample points.
inline std::size_t algebra_dimension(const OrbitResult& o, std::size_t max_points = 65536) {
  if (!o.complete) throw std::invalid_argument("algebra dimension needs a complete orbit");
  const std::size_t k = o.states.size();
  const auto symbols = o.classifier.symbols();
  std::vector<std::size_t> start(k);
  for (std::size_t i = 0; i < k; ++i) start[i] = i;
  std::map<std::vector<std::size_t>, std::size_t> seen{{start, 0}};
  std::vector<std::vector<std::size_t>> points{start};
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (const auto& sym : symbols) {
      std::vector<std::size_t> next(k);
      for (std::size_t i = 0; i < k; ++i) next[i] = o.transition[points[j][i]].at(sym);
      if (seen.emplace(next, points.size()).second) {
        if (points.size() >= max_points) throw std::length_error("too many sample points for algebra dimension");
        points.push_back(std::move(next));
      }
    }
  }
  std::vector<QuadInt> outputs;
  for (const auto& s : o.states) outputs.push_back(coefficient(s, 1));

  // Functions on sample points: the constant 1 and each orbit state.
  std::vector<std::vector<QuadInt>> basis;
  std::vector<std::vector<BigInt>> rows;
  auto try_add = [&](std::vector<QuadInt> f) {
    auto candidate = rows;
    candidate.push_back(detail::rational_coordinates(f));
    if (detail::bareiss_rank(candidate) > rows.size()) {
      rows = std::move(candidate);
      basis.push_back(std::move(f));
      return true;
    }
    return false;
  };
  try_add(std::vector<QuadInt>(points.size(), QuadInt(o.ring, 1)));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<QuadInt> f;
    for (const auto& pt : points) f.push_back(outputs[pt[i]]);
    try_add(std::move(f));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t n = basis.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        std::vector<QuadInt> f;
        for (std::size_t j = 0; j < points.size(); ++j) f.push_back(basis[a][j] * basis[b][j]);
        grew = try_add(std::move(f)) || grew;
      }
    }
  }
  return basis.size();
}

}  // namespace wittc
