#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wittc/arith.hpp"
#include "wittc/bigint.hpp"
#include "wittc/dfao.hpp"
#include "wittc/ideal.hpp"
#include "wittc/quadratic.hpp"

namespace wittc {

/// xi_n = values[n mod modulus].
struct PeriodicRep {
  std::uint64_t modulus = 1;
  std::vector<QuadInt> values;
  friend bool operator==(const PeriodicRep&, const PeriodicRep&) = default;
};

struct GeometricTerm {
  QuadInt c;
  QuadInt base;
  friend bool operator==(const GeometricTerm&, const GeometricTerm&) = default;
};

/// xi_n = sum_j c_j * base_j^n.
struct GeometricRep {
  std::vector<GeometricTerm> terms;
  friend bool operator==(const GeometricRep&, const GeometricRep&) = default;
};

/// xi_n = values[n - 1] for 1 <= n <= bound.
struct TableRep {
  std::uint64_t bound = 0;
  std::vector<QuadInt> values;
  friend bool operator==(const TableRep&, const TableRep&) = default;
};

struct AutomatonRep {
  Dfao dfao;
  PrimeClassifier classifier;
  friend bool operator==(const AutomatonRep& x, const AutomatonRep& y) {
    return x.dfao == y.dfao && x.classifier == y.classifier;
  }
};

/// A family (xi_n) indexed by positive integers, in one of four exact forms.
/// Constructors put the representation in canonical form, so equality of
/// vectors of the same kind is structural.
class WittVector {
 public:
  using Rep = std::variant<PeriodicRep, GeometricRep, TableRep, AutomatonRep>;

  static WittVector periodic(const QuadRing& ring, std::uint64_t modulus, std::vector<QuadInt> values) {
    if (modulus == 0) throw std::invalid_argument("period modulus must be positive");
    if (values.size() != modulus) throw std::invalid_argument("periodic table needs exactly modulus entries");
    for (auto& v : values) v = v.in_ring(ring);
    // Shrink to the least period dividing the modulus.
    for (std::uint64_t g = 1; g < modulus; ++g) {
      if (modulus % g != 0) continue;
      bool ok = true;
      for (std::uint64_t r = 0; r < modulus && ok; ++r) ok = values[r] == values[r % g];
      if (ok) {
        values.resize(g);
        modulus = g;
        break;
      }
    }
    return WittVector(ring, PeriodicRep{modulus, std::move(values)});
  }

  static WittVector geometric(const QuadRing& ring, std::vector<GeometricTerm> terms) {
    std::map<QuadInt, QuadInt> merged;
    for (auto& t : terms) {
      const QuadInt base = t.base.in_ring(ring);
      const QuadInt c = t.c.in_ring(ring);
      if (base.is_zero()) continue;  // 0^n = 0 for n >= 1
      auto [it, inserted] = merged.emplace(base, c);
      if (!inserted) it->second += c;
    }
    GeometricRep rep;
    for (auto& [base, c] : merged) {
      if (!c.is_zero()) rep.terms.push_back({c, base});
    }
    return WittVector(ring, std::move(rep));
  }

  static WittVector table(const QuadRing& ring, std::vector<QuadInt> values) {
    for (auto& v : values) v = v.in_ring(ring);
    const std::uint64_t bound = values.size();
    return WittVector(ring, TableRep{bound, std::move(values)});
  }

  /// Rejects machines whose transitions do not commute.
  static WittVector automaton(const QuadRing& ring, Dfao dfao, PrimeClassifier classifier) {
    validate(dfao, classifier);
    if (auto v = check_commutativity(dfao, classifier)) {
      throw std::invalid_argument("automaton transitions do not commute at state " + dfao.states[v->state] + " on " +
                                  v->x + ", " + v->y);
    }
    dfao.ring = ring;
    for (auto& o : dfao.output) o = o.in_ring(ring);
    return WittVector(ring, AutomatonRep{std::move(dfao), std::move(classifier)});
  }

  static WittVector constant(const QuadRing& ring, const QuadInt& c) {
    return geometric(ring, {{c, QuadInt(ring, 1)}});
  }

  const QuadRing& ring() const { return ring_; }
  const Rep& rep() const { return rep_; }

  bool is_periodic() const { return std::holds_alternative<PeriodicRep>(rep_); }
  bool is_geometric() const { return std::holds_alternative<GeometricRep>(rep_); }
  bool is_table() const { return std::holds_alternative<TableRep>(rep_); }
  bool is_automaton() const { return std::holds_alternative<AutomatonRep>(rep_); }

  const PeriodicRep& as_periodic() const { return std::get<PeriodicRep>(rep_); }
  const GeometricRep& as_geometric() const { return std::get<GeometricRep>(rep_); }
  const TableRep& as_table() const { return std::get<TableRep>(rep_); }
  const AutomatonRep& as_automaton() const { return std::get<AutomatonRep>(rep_); }

  /// Every coefficient is defined (everything except tables).
  bool is_total() const { return !is_table(); }

  /// Largest index with a defined coefficient, if finite.
  std::optional<std::uint64_t> bound() const {
    if (is_table()) return as_table().bound;
    return std::nullopt;
  }

  bool evaluable(std::uint64_t n) const { return n >= 1 && (!is_table() || n <= as_table().bound); }

  std::string kind_name() const {
    static constexpr const char* kNames[] = {"periodic", "geometric", "table", "automaton"};
    return kNames[rep_.index()];
  }

  friend bool operator==(const WittVector& x, const WittVector& y) { return x.ring_ == y.ring_ && x.rep_ == y.rep_; }
  friend bool operator!=(const WittVector& x, const WittVector& y) { return !(x == y); }

 private:
  WittVector(QuadRing ring, Rep rep) : ring_(ring), rep_(std::move(rep)) {}

  QuadRing ring_;
  Rep rep_;
};

/// Geometric vector whose bases are all roots of unity (or which is zero).
inline bool is_unity_geometric(const WittVector& xi) {
  if (!xi.is_geometric()) return false;
  for (const auto& t : xi.as_geometric().terms) {
    if (!t.base.root_of_unity_order()) return false;
  }
  return true;
}

/// lcm of the base orders of a unity-geometric vector.
inline std::uint64_t unity_period(const WittVector& xi) {
  std::uint64_t n = 1;
  for (const auto& t : xi.as_geometric().terms) n = std::lcm<std::uint64_t>(n, *t.base.root_of_unity_order());
  return n;
}

namespace detail {

inline void require_evaluable(const WittVector& xi, std::uint64_t n) {
  if (n == 0) throw std::out_of_range("coefficients are indexed by positive integers");
  if (!xi.evaluable(n)) {
    throw std::out_of_range("index " + std::to_string(n) + " beyond table bound " + std::to_string(*xi.bound()));
  }
}

inline std::vector<std::uint64_t> factor_word(std::uint64_t n) { return factor(n).word(); }

}  // namespace detail

/// xi_n.
inline QuadInt coefficient(const WittVector& xi, std::uint64_t n) {
  detail::require_evaluable(xi, n);
  return std::visit(
      [&](const auto& rep) -> QuadInt {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, PeriodicRep>) {
          return rep.values[n % rep.modulus];
        } else if constexpr (std::is_same_v<T, GeometricRep>) {
          QuadInt sum(xi.ring());
          for (const auto& t : rep.terms) sum += t.c * t.base.pow(n);
          return sum;
        } else if constexpr (std::is_same_v<T, TableRep>) {
          return rep.values[n - 1];
        } else {
          return run(rep.dfao, rep.classifier, detail::factor_word(n));
        }
      },
      xi.rep());
}

inline QuadInt coefficient(const WittVector& xi, const IdealQ& a) {
  if (xi.is_automaton()) {
    const auto& rep = xi.as_automaton();
    return run(rep.dfao, rep.classifier, a.word());
  }
  if (xi.is_periodic() && !fits_u64(a.value())) {
    const auto& rep = xi.as_periodic();
    return rep.values[to_u64(floor_mod(a.value(), BigInt(rep.modulus)))];
  }
  const BigInt v = a.value();
  if (!fits_u64(v)) throw std::out_of_range("index too large: " + v.str());
  return coefficient(xi, to_u64(v));
}

/// xi_n with both coordinates reduced mod m; exact, never forms xi_n itself
/// for geometric vectors.
inline QuadInt coefficient_mod(const WittVector& xi, std::uint64_t n, const BigInt& m) {
  if (xi.is_geometric()) {
    detail::require_evaluable(xi, n);
    QuadInt sum(xi.ring());
    for (const auto& t : xi.as_geometric().terms) sum = (sum + t.c.mod_int(m) * t.base.pow_mod(n, m)).mod_int(m);
    return sum;
  }
  return coefficient(xi, n).mod_int(m);
}

namespace detail {

/// Machine computing a periodic vector: state = multiplier residue mod f.
inline WittVector periodic_to_automaton(const QuadRing& ring, const PeriodicRep& rep) {
  const std::uint64_t f = rep.modulus;
  const PrimeClassifier c = PrimeClassifier::with_default_labels({}, f);
  const auto symbols = c.symbols();
  auto multiplier = [&](const std::string& sym) {
    return c.representative(sym) % f;
  };
  std::map<std::uint64_t, std::size_t> index{{1 % f, 0}};
  std::vector<std::uint64_t> residues{1 % f};
  Dfao d;
  d.ring = ring;
  for (std::size_t k = 0; k < residues.size(); ++k) {
    std::map<std::string, std::size_t> row;
    for (const auto& sym : symbols) {
      const std::uint64_t r = mulmod(residues[k], multiplier(sym), f);
      auto [it, inserted] = index.emplace(r, residues.size());
      if (inserted) residues.push_back(r);
      row[sym] = it->second;
    }
    d.delta.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < residues.size(); ++k) {
    d.states.push_back("s" + std::to_string(k));
    d.output.push_back(rep.values[residues[k]]);
  }
  return WittVector::automaton(ring, std::move(d), c);
}

inline PeriodicRep unity_geometric_to_periodic(const WittVector& xi) {
  const std::uint64_t n = unity_period(xi);
  PeriodicRep rep{n, {}};
  for (std::uint64_t r = 0; r < n; ++r) rep.values.push_back(coefficient(xi, r == 0 ? n : r));
  return rep;
}

template <class Op>
WittVector product_machine(const QuadRing& ring, const AutomatonRep& x, const AutomatonRep& y, Op op) {
  std::set<std::uint64_t> exc = x.classifier.exceptional();
  exc.insert(y.classifier.exceptional().begin(), y.classifier.exceptional().end());
  const std::uint64_t m = std::lcm(x.classifier.modulus(), y.classifier.modulus());
  const PrimeClassifier c = PrimeClassifier::with_default_labels(exc, m);
  // Each merged symbol acts through one symbol of each factor.
  std::vector<std::pair<std::string, std::pair<std::string, std::string>>> symbols;
  for (const auto& sym : c.symbols()) {
    std::string sx, sy;
    if (sym.rfind("p=", 0) == 0) {
      const std::uint64_t q = std::stoull(sym.substr(2));
      sx = x.classifier.symbol_for(q);
      sy = y.classifier.symbol_for(q);
    } else {
      const std::uint64_t r = std::stoull(sym.substr(1));
      sx = x.classifier.classes().at(r % x.classifier.modulus());
      sy = y.classifier.classes().at(r % y.classifier.modulus());
    }
    symbols.push_back({sym, {sx, sy}});
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> pairs{{x.dfao.initial, y.dfao.initial}};
  index[pairs[0]] = 0;
  Dfao d;
  d.ring = ring;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    std::map<std::string, std::size_t> row;
    for (const auto& [sym, parts] : symbols) {
      const std::pair<std::size_t, std::size_t> next{x.dfao.delta[pairs[k].first].at(parts.first),
                                                     y.dfao.delta[pairs[k].second].at(parts.second)};
      auto [it, inserted] = index.emplace(next, pairs.size());
      if (inserted) pairs.push_back(next);
      row[sym] = it->second;
    }
    d.delta.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    d.states.push_back("s" + std::to_string(k));
    d.output.push_back(op(x.dfao.output[pairs[k].first], y.dfao.output[pairs[k].second]).in_ring(ring));
  }
  return WittVector::automaton(ring, std::move(d), c);
}

inline WittVector as_automaton(const WittVector& xi) {
  if (xi.is_automaton()) return xi;
  if (xi.is_periodic()) return periodic_to_automaton(xi.ring(), xi.as_periodic());
  if (is_unity_geometric(xi)) return periodic_to_automaton(xi.ring(), unity_geometric_to_periodic(xi));
  throw std::invalid_argument("no common exact representation for " + xi.kind_name() + " and automaton");
}

template <class Op>
WittVector combine(const WittVector& x, const WittVector& y, Op op, bool multiplicative) {
  const QuadRing ring = common_ring(x.ring(), y.ring());
  if (x.is_table() || y.is_table()) {
    std::uint64_t b = std::min(x.bound().value_or(~0ULL), y.bound().value_or(~0ULL));
    std::vector<QuadInt> values;
    values.reserve(b);
    for (std::uint64_t n = 1; n <= b; ++n) values.push_back(op(coefficient(x, n), coefficient(y, n)));
    return WittVector::table(ring, std::move(values));
  }
  if (x.is_geometric() && y.is_geometric()) {
    std::vector<GeometricTerm> terms;
    if (multiplicative) {
      for (const auto& s : x.as_geometric().terms)
        for (const auto& t : y.as_geometric().terms) terms.push_back({s.c * t.c, s.base * t.base});
    } else {
      terms = x.as_geometric().terms;
      for (const auto& t : y.as_geometric().terms) terms.push_back(t);
    }
    return WittVector::geometric(ring, std::move(terms));
  }
  if (x.is_automaton() || y.is_automaton()) {
    return product_machine(ring, as_automaton(x).as_automaton(), as_automaton(y).as_automaton(), op);
  }
  auto to_periodic = [](const WittVector& v) -> PeriodicRep {
    if (v.is_periodic()) return v.as_periodic();
    if (is_unity_geometric(v)) return unity_geometric_to_periodic(v);
    throw std::invalid_argument("no common exact representation for periodic and non-torsion geometric vectors");
  };
  const PeriodicRep px = to_periodic(x), py = to_periodic(y);
  const std::uint64_t f = std::lcm(px.modulus, py.modulus);
  std::vector<QuadInt> values;
  for (std::uint64_t r = 0; r < f; ++r) values.push_back(op(px.values[r % px.modulus], py.values[r % py.modulus]));
  return WittVector::periodic(ring, f, std::move(values));
}

}  // namespace detail

inline WittVector witt_add(const WittVector& x, const WittVector& y) {
  return detail::combine(x, y, [](const QuadInt& a, const QuadInt& b) { return a + b; }, false);
}

inline WittVector witt_mul(const WittVector& x, const WittVector& y) {
  return detail::combine(x, y, [](const QuadInt& a, const QuadInt& b) { return a * b; }, true);
}

inline WittVector witt_neg(const WittVector& x) {
  return witt_mul(x, WittVector::constant(x.ring(), QuadInt(x.ring(), -1)));
}

inline WittVector witt_sub(const WittVector& x, const WittVector& y) { return witt_add(x, witt_neg(y)); }

/// psi_p: n |-> xi_{pn}.
inline WittVector frobenius_shift(const WittVector& xi, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  return std::visit(
      [&](const auto& rep) -> WittVector {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, PeriodicRep>) {
          std::vector<QuadInt> values;
          for (std::uint64_t r = 0; r < rep.modulus; ++r) values.push_back(rep.values[mulmod(p, r, rep.modulus)]);
          return WittVector::periodic(xi.ring(), rep.modulus, std::move(values));
        } else if constexpr (std::is_same_v<T, GeometricRep>) {
          std::vector<GeometricTerm> terms;
          for (const auto& t : rep.terms) terms.push_back({t.c, t.base.pow(p)});
          return WittVector::geometric(xi.ring(), std::move(terms));
        } else if constexpr (std::is_same_v<T, TableRep>) {
          std::vector<QuadInt> values;
          for (std::uint64_t n = 1; n * p <= rep.bound; ++n) values.push_back(rep.values[n * p - 1]);
          return WittVector::table(xi.ring(), std::move(values));
        } else {
          Dfao d = rep.dfao;
          d.initial = step(d, rep.classifier, d.initial, p);
          return WittVector::automaton(xi.ring(), std::move(d), rep.classifier);
        }
      },
      xi.rep());
}

/// Ring containing a primitive N-th root of unity, N in {1, 2, 3, 4, 6}.
inline QuadRing cyclotomic_ring(unsigned order) {
  switch (order) {
    case 1:
    case 2: return QuadRing::integers();
    case 4: return QuadRing::make(-1);
    case 3:
    case 6: return QuadRing::make(-3);
    default: throw CapabilityError("unsupported root-of-unity order " + std::to_string(order));
  }
}

inline QuadInt primitive_root_of_unity(unsigned order) {
  const QuadRing ring = cyclotomic_ring(order);
  switch (order) {
    case 1: return QuadInt(ring, 1);
    case 2: return QuadInt(ring, -1);
    case 4: return QuadInt::omega(ring);                      // i
    case 6: return QuadInt::omega(ring);                      // (1 + sqrt(-3))/2
    default: return QuadInt::omega(ring) - QuadInt(ring, 1);  // (-1 + sqrt(-3))/2
  }
}

/// The Teichmuller-type vector (zeta_N^(k n))_n.
inline WittVector canonical_witt(unsigned order, std::uint64_t power) {
  const QuadInt zeta = primitive_root_of_unity(order);
  return WittVector::geometric(zeta.ring(), {{QuadInt(zeta.ring(), 1), zeta.pow(power % order)}});
}

}  // namespace wittc
