#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wittc/arith.hpp"
#include "wittc/ideal.hpp"
#include "wittc/quadratic.hpp"

namespace wittc {

/// Finite presentation of the prime alphabet: finitely many exceptional
/// primes, every other prime classified by its residue mod `modulus`.
/// Classes are indexed by the residues coprime to the modulus; every prime
/// dividing the modulus must be exceptional, so each class holds infinitely
/// many primes.
class PrimeClassifier {
 public:
  PrimeClassifier() : modulus_(1), classes_{{0, "c0"}} {}

  PrimeClassifier(std::set<std::uint64_t> exceptional, std::uint64_t modulus, std::map<std::uint64_t, std::string> classes)
      : exceptional_(std::move(exceptional)), modulus_(modulus), classes_(std::move(classes)) {
    if (modulus_ == 0) throw std::invalid_argument("classifier modulus must be positive");
    for (std::uint64_t q : exceptional_) {
      if (!is_prime(q)) throw std::invalid_argument("exceptional symbol " + std::to_string(q) + " is not prime");
    }
    for (std::uint64_t q : prime_divisors(modulus_)) {
      if (!exceptional_.count(q)) {
        throw std::invalid_argument("prime " + std::to_string(q) + " divides the classifier modulus but is not exceptional");
      }
    }
    std::set<std::string> labels;
    for (std::uint64_t r = 0; r < modulus_; ++r) {
      const bool coprime = std::gcd(r, modulus_) == 1;
      auto it = classes_.find(r);
      if (coprime && it == classes_.end()) {
        throw std::invalid_argument("residue " + std::to_string(r) + " mod " + std::to_string(modulus_) + " has no class");
      }
      if (!coprime && it != classes_.end()) {
        throw std::invalid_argument("class given for non-coprime residue " + std::to_string(r));
      }
    }
    for (const auto& [r, label] : classes_) {
      if (r >= modulus_) throw std::invalid_argument("class residue out of range");
      if (label.empty() || label.rfind("p=", 0) == 0) throw std::invalid_argument("bad class label '" + label + "'");
      if (!labels.insert(label).second) throw std::invalid_argument("duplicate class label '" + label + "'");
    }
  }

  /// Classes labelled "c<residue>".
  static PrimeClassifier with_default_labels(std::set<std::uint64_t> exceptional, std::uint64_t modulus) {
    std::map<std::uint64_t, std::string> classes;
    for (std::uint64_t r = 0; r < modulus; ++r) {
      if (std::gcd(r, modulus) == 1) classes[r] = "c" + std::to_string(r);
    }
    for (std::uint64_t q : prime_divisors(modulus)) exceptional.insert(q);
    return PrimeClassifier(std::move(exceptional), modulus, std::move(classes));
  }

  const std::set<std::uint64_t>& exceptional() const { return exceptional_; }
  std::uint64_t modulus() const { return modulus_; }
  const std::map<std::uint64_t, std::string>& classes() const { return classes_; }

  static std::string prime_symbol(std::uint64_t q) { return "p=" + std::to_string(q); }

  std::string symbol_for(std::uint64_t p) const {
    if (exceptional_.count(p)) return prime_symbol(p);
    return classes_.at(p % modulus_);
  }

  /// Exceptional primes ascending, then classes by residue.
  std::vector<std::string> symbols() const {
    std::vector<std::string> out;
    for (std::uint64_t q : exceptional_) out.push_back(prime_symbol(q));
    for (const auto& [r, label] : classes_) out.push_back(label);
    return out;
  }

  /// Least prime carrying the symbol.
  std::uint64_t representative(const std::string& symbol) const {
    if (symbol.rfind("p=", 0) == 0) {
      const std::uint64_t q = std::stoull(symbol.substr(2));
      if (!exceptional_.count(q)) throw std::invalid_argument("unknown symbol " + symbol);
      return q;
    }
    for (const auto& [r, label] : classes_) {
      if (label != symbol) continue;
      std::uint64_t c = least_prime_in_class(r, modulus_);
      while (exceptional_.count(c)) {
        c += modulus_;
        while (!is_prime(c)) c += modulus_;
      }
      return c;
    }
    throw std::invalid_argument("unknown symbol " + symbol);
  }

  /// Human label: "p=2" or "≡1 mod 4".
  std::string describe(const std::string& symbol) const {
    if (symbol.rfind("p=", 0) == 0) return symbol;
    for (const auto& [r, label] : classes_) {
      if (label == symbol) return "≡" + std::to_string(r) + " mod " + std::to_string(modulus_);
    }
    throw std::invalid_argument("unknown symbol " + symbol);
  }

  friend bool operator==(const PrimeClassifier& x, const PrimeClassifier& y) {
    return x.exceptional_ == y.exceptional_ && x.modulus_ == y.modulus_ && x.classes_ == y.classes_;
  }

 private:
  std::set<std::uint64_t> exceptional_;
  std::uint64_t modulus_;
  std::map<std::uint64_t, std::string> classes_;
};

/// Deterministic finite automaton with output over a classified prime alphabet.
struct Dfao {
  QuadRing ring = QuadRing::integers();
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::vector<QuadInt> output;
  std::vector<std::map<std::string, std::size_t>> delta;

  std::size_t size() const { return states.size(); }

  friend bool operator==(const Dfao& x, const Dfao& y) {
    return x.ring == y.ring && x.states == y.states && x.initial == y.initial && x.output == y.output &&
           x.delta == y.delta;
  }
};

/// Throws std::invalid_argument unless the machine is well formed and total on
/// the classifier's symbols.
inline void validate(const Dfao& d, const PrimeClassifier& c) {
  const std::size_t n = d.states.size();
  if (n == 0) throw std::invalid_argument("automaton has no states");
  if (d.output.size() != n || d.delta.size() != n) throw std::invalid_argument("automaton tables have inconsistent sizes");
  if (d.initial >= n) throw std::invalid_argument("initial state out of range");
  const auto symbols = c.symbols();
  for (std::size_t s = 0; s < n; ++s) {
    for (const auto& sym : symbols) {
      auto it = d.delta[s].find(sym);
      if (it == d.delta[s].end()) {
        throw std::invalid_argument("state " + d.states[s] + " has no transition on " + sym);
      }
      if (it->second >= n) throw std::invalid_argument("transition target out of range");
    }
    if (d.delta[s].size() != symbols.size()) {
      throw std::invalid_argument("state " + d.states[s] + " has transitions on unknown symbols");
    }
  }
}

inline std::size_t step(const Dfao& d, const PrimeClassifier& c, std::size_t state, std::uint64_t p) {
  const std::string sym = c.symbol_for(p);
  auto it = d.delta.at(state).find(sym);
  if (it == d.delta.at(state).end()) throw std::invalid_argument("no transition on " + sym + " from " + d.states[state]);
  return it->second;
}

inline std::size_t run_to_state(const Dfao& d, const PrimeClassifier& c, const std::vector<std::uint64_t>& word,
                                std::size_t from) {
  std::size_t s = from;
  for (std::uint64_t p : word) {
    if (!is_prime(p)) throw std::invalid_argument("word letter " + std::to_string(p) + " is not prime");
    s = step(d, c, s, p);
  }
  return s;
}

/// tau(delta(s0, word)).
inline QuadInt run(const Dfao& d, const PrimeClassifier& c, const std::vector<std::uint64_t>& word) {
  return d.output.at(run_to_state(d, c, word, d.initial));
}

struct CommutativityViolation {
  std::size_t state;
  std::string x;
  std::string y;
};

inline std::optional<CommutativityViolation> check_commutativity(const Dfao& d, const PrimeClassifier& c) {
  const auto symbols = c.symbols();
  for (std::size_t s = 0; s < d.size(); ++s) {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      for (std::size_t j = i + 1; j < symbols.size(); ++j) {
        const std::size_t xy = d.delta[d.delta[s].at(symbols[i])].at(symbols[j]);
        const std::size_t yx = d.delta[d.delta[s].at(symbols[j])].at(symbols[i]);
        if (xy != yx) return CommutativityViolation{s, symbols[i], symbols[j]};
      }
    }
  }
  return std::nullopt;
}

/// States reachable from `from`, in breadth-first order over c.symbols().
inline std::vector<std::size_t> reachable_states(const Dfao& d, const PrimeClassifier& c, std::size_t from) {
  const auto symbols = c.symbols();
  std::vector<std::size_t> order{from};
  std::vector<bool> seen(d.size(), false);
  seen[from] = true;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (const auto& sym : symbols) {
      const std::size_t t = d.delta[order[k]].at(sym);
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return order;
}

/// Moore partition refinement on the reachable part. States of the result are
/// renamed s0, s1, ... in breadth-first order from the initial state.
inline Dfao minimize(const Dfao& d, const PrimeClassifier& c) {
  validate(d, c);
  const auto symbols = c.symbols();
  const auto reach = reachable_states(d, c, d.initial);

  std::map<std::size_t, std::size_t> block;
  {
    std::vector<QuadInt> outs;
    for (std::size_t s : reach) {
      auto it = std::find(outs.begin(), outs.end(), d.output[s]);
      block[s] = static_cast<std::size_t>(it - outs.begin());
      if (it == outs.end()) outs.push_back(d.output[s]);
    }
  }
  std::size_t block_count = 0;
  for (const auto& [s, b] : block) block_count = std::max(block_count, b + 1);
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> signatures;
    std::map<std::size_t, std::size_t> next;
    for (std::size_t s : reach) {
      std::vector<std::size_t> sig{block[s]};
      for (const auto& sym : symbols) sig.push_back(block[d.delta[s].at(sym)]);
      auto [it, inserted] = signatures.emplace(sig, signatures.size());
      next[s] = it->second;
    }
    const std::size_t count = signatures.size();
    block = std::move(next);
    if (count == block_count) break;
    block_count = count;
  }

  // Renumber blocks breadth-first from the initial state.
  std::map<std::size_t, std::size_t> new_index;
  std::vector<std::size_t> rep;
  for (std::size_t s : reach) {
    if (!new_index.count(block[s])) {
      new_index[block[s]] = rep.size();
      rep.push_back(s);
    }
  }
  Dfao m;
  m.ring = d.ring;
  m.initial = 0;
  for (std::size_t k = 0; k < rep.size(); ++k) {
    m.states.push_back("s" + std::to_string(k));
    m.output.push_back(d.output[rep[k]]);
    std::map<std::string, std::size_t> row;
    for (const auto& sym : symbols) row[sym] = new_index.at(block.at(d.delta[rep[k]].at(sym)));
    m.delta.push_back(std::move(row));
  }
  // Breadth-first discovery from the representative gives the canonical order.
  const auto order = reachable_states(m, c, 0);
  std::vector<std::size_t> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  Dfao canon;
  canon.ring = m.ring;
  canon.initial = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    canon.states.push_back("s" + std::to_string(k));
    canon.output.push_back(m.output[order[k]]);
    std::map<std::string, std::size_t> row;
    for (const auto& [sym, t] : m.delta[order[k]]) row[sym] = pos[t];
    canon.delta.push_back(std::move(row));
  }
  return canon;
}

/// Graphviz rendering: vertices "name / output", edges labelled by symbol.
inline std::string to_dot(const Dfao& d, const PrimeClassifier& c) {
  std::ostringstream os;
  os << "digraph dfao {\n";
  os << "  rankdir=LR;\n";
  os << "  __start [shape=point];\n";
  os << "  __start -> \"" << d.states.at(d.initial) << "\";\n";
  for (std::size_t s = 0; s < d.size(); ++s) {
    os << "  \"" << d.states[s] << "\" [label=\"" << d.states[s] << " / " << d.output[s].to_string() << "\"];\n";
  }
  for (std::size_t s = 0; s < d.size(); ++s) {
    for (const auto& sym : c.symbols()) {
      os << "  \"" << d.states[s] << "\" -> \"" << d.states[d.delta[s].at(sym)] << "\" [label=\"" << c.describe(sym)
         << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace wittc
