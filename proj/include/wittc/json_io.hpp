#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "wittc/christol.hpp"
#include "wittc/dfao.hpp"
#include "wittc/orbit.hpp"
#include "wittc/quadratic.hpp"
#include "wittc/witt_vector.hpp"

namespace wittc {

using Json = nlohmann::json;

/// Malformed or inconsistent serialized input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::uint64_t as_u64(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw FormatError(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

inline std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline std::uint64_t parse_u64_key(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw FormatError(std::string(what) + " key '" + s + "' is not a decimal integer");
  }
  return std::stoull(s);
}

}  // namespace detail

// ---- coefficient rings and elements ----

inline Json ring_to_json(const QuadRing& r) {
  if (r.is_integers()) return Json{{"kind", "Z"}};
  return Json{{"kind", "quadratic"}, {"d", r.d()}, {"omega_kind", r.omega_kind() == OmegaKind::half ? "half" : "sqrt"}};
}

inline QuadRing ring_from_json(const Json& j) {
  const std::string kind = detail::as_string(detail::field(j, "kind"), "coeff_ring.kind");
  if (kind == "Z") return QuadRing::integers();
  if (kind != "quadratic") throw FormatError("unknown coefficient ring kind '" + kind + "'");
  const Json& d = detail::field(j, "d");
  if (!d.is_number_integer()) throw FormatError("coeff_ring.d must be an integer");
  QuadRing r = QuadRing::integers();
  try {
    r = QuadRing::make(d.get<std::int64_t>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  if (!r.class_number_one()) throw CapabilityError("coefficient ring must have class number one; d = " + std::to_string(r.d()));
  if (j.contains("omega_kind")) {
    const std::string ok = detail::as_string(j.at("omega_kind"), "omega_kind");
    if (ok != (r.omega_kind() == OmegaKind::half ? "half" : "sqrt")) throw FormatError("omega_kind does not match d");
  }
  return r;
}

inline QuadInt coeff_from_json(const Json& j, const QuadRing& ring) {
  try {
    if (j.is_number_integer()) return QuadInt(ring, BigInt(j.get<std::int64_t>()));
    if (j.is_string()) return QuadInt::parse(ring, j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad coefficient: ") + e.what());
  }
  throw FormatError("coefficient must be a string or integer");
}

// ---- prime classifier and automata ----

inline Json classifier_to_json(const PrimeClassifier& c) {
  Json classes = Json::object();
  for (const auto& [r, label] : c.classes()) classes[std::to_string(r)] = label;
  return Json{{"exceptional", Json(std::vector<std::uint64_t>(c.exceptional().begin(), c.exceptional().end()))},
              {"modulus", c.modulus()},
              {"classes", classes}};
}

inline PrimeClassifier classifier_from_json(const Json& j) {
  std::set<std::uint64_t> exc;
  const Json& e = detail::field(j, "exceptional");
  if (!e.is_array()) throw FormatError("classifier.exceptional must be an array");
  for (const auto& q : e) exc.insert(detail::as_u64(q, "exceptional prime"));
  const std::uint64_t m = detail::as_u64(detail::field(j, "modulus"), "classifier.modulus");
  std::map<std::uint64_t, std::string> classes;
  const Json& cl = detail::field(j, "classes");
  if (!cl.is_object()) throw FormatError("classifier.classes must be an object");
  for (const auto& [k, v] : cl.items()) classes[detail::parse_u64_key(k, "class")] = detail::as_string(v, "class label");
  try {
    return PrimeClassifier(exc, m, classes);
  } catch (const std::invalid_argument& ex) {
    throw FormatError(std::string("invalid classifier: ") + ex.what());
  }
}

inline Json dfao_to_json(const Dfao& d, const PrimeClassifier& c) {
  Json output = Json::object(), transitions = Json::object();
  for (std::size_t s = 0; s < d.size(); ++s) {
    output[d.states[s]] = d.output[s].to_string();
    Json row = Json::object();
    for (const auto& [sym, t] : d.delta[s]) row[sym] = d.states[t];
    transitions[d.states[s]] = row;
  }
  return Json{{"states", d.states},
              {"initial", d.states.at(d.initial)},
              {"output", output},
              {"transitions", transitions},
              {"classifier", classifier_to_json(c)}};
}

inline std::pair<Dfao, PrimeClassifier> dfao_from_json(const Json& j, const QuadRing& ring) {
  Dfao d;
  d.ring = ring;
  const Json& states = detail::field(j, "states");
  if (!states.is_array() || states.empty()) throw FormatError("dfao.states must be a nonempty array");
  std::map<std::string, std::size_t> index;
  for (const auto& s : states) {
    const std::string name = detail::as_string(s, "state name");
    if (!index.emplace(name, d.states.size()).second) throw FormatError("duplicate state '" + name + "'");
    d.states.push_back(name);
  }
  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw FormatError("unknown state '" + name + "'");
    return it->second;
  };
  d.initial = lookup(detail::as_string(detail::field(j, "initial"), "dfao.initial"));
  const Json& out = detail::field(j, "output");
  const Json& tr = detail::field(j, "transitions");
  for (const auto& name : d.states) {
    d.output.push_back(coeff_from_json(detail::field(out, name.c_str()), ring));
    std::map<std::string, std::size_t> row;
    for (const auto& [sym, target] : detail::field(tr, name.c_str()).items()) row[sym] = lookup(detail::as_string(target, "transition target"));
    d.delta.push_back(std::move(row));
  }
  PrimeClassifier c = classifier_from_json(detail::field(j, "classifier"));
  try {
    validate(d, c);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid automaton: ") + e.what());
  }
  return {std::move(d), std::move(c)};
}

// ---- Witt vectors ----

inline Json witt_to_json(const WittVector& xi) {
  Json rep = std::visit(
      [](const auto& r) -> Json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PeriodicRep>) {
          Json values = Json::object();
          for (std::uint64_t k = 0; k < r.modulus; ++k) values[std::to_string(k)] = r.values[k].to_string();
          return Json{{"kind", "periodic"}, {"modulus", r.modulus}, {"values", values}};
        } else if constexpr (std::is_same_v<T, GeometricRep>) {
          Json terms = Json::array();
          for (const auto& t : r.terms) terms.push_back(Json{{"c", t.c.to_string()}, {"base", t.base.to_string()}});
          return Json{{"kind", "geometric"}, {"terms", terms}};
        } else if constexpr (std::is_same_v<T, TableRep>) {
          Json values = Json::array();
          for (const auto& v : r.values) values.push_back(v.to_string());
          return Json{{"kind", "table"}, {"bound", r.bound}, {"values", values}};
        } else {
          return Json{{"kind", "automaton"}, {"dfao", dfao_to_json(r.dfao, r.classifier)}};
        }
      },
      xi.rep());
  return Json{{"coeff_ring", ring_to_json(xi.ring())}, {"rep", rep}};
}

inline WittVector witt_from_json(const Json& j) {
  const QuadRing ring = ring_from_json(detail::field(j, "coeff_ring"));
  const Json& rep = detail::field(j, "rep");
  const std::string kind = detail::as_string(detail::field(rep, "kind"), "rep.kind");
  try {
    if (kind == "periodic") {
      const std::uint64_t f = detail::as_u64(detail::field(rep, "modulus"), "modulus");
      if (f == 0) throw FormatError("modulus must be positive");
      const Json& values = detail::field(rep, "values");
      if (!values.is_object() || values.size() != f) throw FormatError("periodic values need exactly modulus entries");
      std::vector<QuadInt> table(f);
      std::vector<bool> seen(f, false);
      for (const auto& [k, v] : values.items()) {
        const std::uint64_t r = detail::parse_u64_key(k, "residue");
        if (r >= f || seen[r]) throw FormatError("bad residue key '" + k + "'");
        seen[r] = true;
        table[r] = coeff_from_json(v, ring);
      }
      return WittVector::periodic(ring, f, std::move(table));
    }
    if (kind == "geometric") {
      const Json& terms = detail::field(rep, "terms");
      if (!terms.is_array()) throw FormatError("geometric terms must be an array");
      std::vector<GeometricTerm> out;
      std::set<QuadInt> bases;
      for (const auto& t : terms) {
        GeometricTerm term{coeff_from_json(detail::field(t, "c"), ring), coeff_from_json(detail::field(t, "base"), ring)};
        if (!bases.insert(term.base).second) throw FormatError("geometric bases must be pairwise distinct");
        out.push_back(std::move(term));
      }
      return WittVector::geometric(ring, std::move(out));
    }
    if (kind == "table") {
      const std::uint64_t bound = detail::as_u64(detail::field(rep, "bound"), "bound");
      const Json& values = detail::field(rep, "values");
      if (!values.is_array() || values.size() != bound) throw FormatError("table needs exactly bound values");
      std::vector<QuadInt> out;
      for (const auto& v : values) out.push_back(coeff_from_json(v, ring));
      return WittVector::table(ring, std::move(out));
    }
    if (kind == "automaton") {
      auto [d, c] = dfao_from_json(detail::field(rep, "dfao"), ring);
      return WittVector::automaton(ring, std::move(d), std::move(c));
    }
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  throw FormatError("unknown representation kind '" + kind + "'");
}

// ---- orbit ----

inline Json orbit_to_json(const OrbitResult& o) {
  Json states = Json::array();
  for (std::size_t k = 0; k < o.states.size(); ++k) {
    Json s{{"name", "s" + std::to_string(k)}, {"vector", witt_to_json(o.states[k])}};
    if (o.states[k].evaluable(1)) s["output"] = coefficient(o.states[k], 1).to_string();
    states.push_back(s);
  }
  Json transitions = Json::object();
  for (std::size_t k = 0; k < o.transition.size(); ++k) {
    Json row = Json::object();
    for (const auto& [sym, t] : o.transition[k]) row[sym] = "s" + std::to_string(t);
    transitions["s" + std::to_string(k)] = row;
  }
  Json j{{"complete", o.complete},
         {"initial", "s" + std::to_string(o.initial)},
         {"states", states},
         {"transitions", transitions},
         {"classifier", classifier_to_json(o.classifier)}};
  if (!o.note.empty()) j["note"] = o.note;
  if (o.certificate) {
    j["certificate"] = Json{{"d", o.certificate->d.to_string()},
                            {"sigma", o.certificate->sigma},
                            {"coefficient_count", o.certificate->coefficient_count},
                            {"orbit_bound", o.certificate->orbit_bound.str()}};
  }
  return j;
}

// ---- classical side ----

inline Json fq_field_to_json(const FqField& f) { return Json{{"p", f.characteristic()}, {"e", f.degree()}}; }

inline FqFieldPtr fq_field_from_json(const Json& j) {
  const std::uint64_t p = detail::as_u64(detail::field(j, "p"), "field.p");
  const std::uint64_t e = j.contains("e") ? detail::as_u64(j.at("e"), "field.e") : 1;
  if (!is_prime(p) || p > 65521) throw FormatError("field characteristic must be a prime below 2^16");
  if (e == 0 || e > kMaxFqDegree) throw FormatError("extension degree out of range");
  return FqField::make(static_cast<std::uint32_t>(p), static_cast<unsigned>(e));
}

inline Json fq_to_json(const FqElem& x) {
  if (x.field()->degree() == 1) return Json(x.coords()[0]);
  return Json(x.to_string());
}

inline FqElem fq_from_json(const Json& j, const FqFieldPtr& f) {
  try {
    if (j.is_number_integer()) return FqElem::from_int(f, j.get<std::int64_t>());
    if (j.is_string()) return FqElem::parse(f, j.get<std::string>());
    if (j.is_array()) return FqElem::from_coords(f, j.get<std::vector<std::int64_t>>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad field element: ") + e.what());
  }
  throw FormatError("field element must be an integer, string or coordinate list");
}

inline Json poly_to_json(const BivariatePoly& P) {
  Json rows = Json::array();
  for (const auto& row : P.coeffs) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(fq_to_json(c));
    rows.push_back(r);
  }
  return Json{{"field", fq_field_to_json(*P.field)}, {"coeffs", rows}};
}

inline BivariatePoly poly_from_json(const Json& j) {
  BivariatePoly P{fq_field_from_json(detail::field(j, "field")), {}};
  const Json& rows = detail::field(j, "coeffs");
  if (!rows.is_array()) throw FormatError("polynomial coeffs must be a list of lists");
  for (const auto& row : rows) {
    if (!row.is_array()) throw FormatError("polynomial coeffs must be a list of lists");
    std::vector<FqElem> r;
    for (const auto& c : row) r.push_back(fq_from_json(c, P.field));
    P.coeffs.push_back(std::move(r));
  }
  if (P.coeffs.empty() || P.is_zero()) throw FormatError("polynomial must be nonzero");
  return P;
}

inline Json digit_dfao_to_json(const DigitDfao& d) {
  Json output = Json::object(), transitions = Json::object();
  for (std::size_t s = 0; s < d.size(); ++s) {
    output[d.states[s]] = fq_to_json(d.output[s]);
    Json row = Json::object();
    for (std::size_t digit = 0; digit < d.delta[s].size(); ++digit) row[std::to_string(digit)] = d.states[d.delta[s][digit]];
    transitions[d.states[s]] = row;
  }
  return Json{{"field", fq_field_to_json(*d.field)},
              {"states", d.states},
              {"initial", d.states.at(d.initial)},
              {"output", output},
              {"transitions", transitions}};
}

inline DigitDfao digit_dfao_from_json(const Json& j) {
  DigitDfao d;
  d.field = fq_field_from_json(detail::field(j, "field"));
  std::map<std::string, std::size_t> index;
  const Json& states = detail::field(j, "states");
  if (!states.is_array() || states.empty()) throw FormatError("states must be a nonempty array");
  for (const auto& s : states) {
    const std::string name = detail::as_string(s, "state name");
    if (!index.emplace(name, d.states.size()).second) throw FormatError("duplicate state '" + name + "'");
    d.states.push_back(name);
  }
  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw FormatError("unknown state '" + name + "'");
    return it->second;
  };
  d.initial = lookup(detail::as_string(detail::field(j, "initial"), "initial"));
  const std::uint64_t p = d.field->characteristic();
  for (const auto& name : d.states) {
    d.output.push_back(fq_from_json(detail::field(detail::field(j, "output"), name.c_str()), d.field));
    const Json& row = detail::field(detail::field(j, "transitions"), name.c_str());
    std::vector<std::size_t> r(p);
    if (!row.is_object() || row.size() != p) throw FormatError("state '" + name + "' needs one transition per digit");
    for (const auto& [digit, target] : row.items()) {
      const std::uint64_t k = detail::parse_u64_key(digit, "digit");
      if (k >= p) throw FormatError("digit " + digit + " out of range");
      r[k] = lookup(detail::as_string(target, "transition target"));
    }
    d.delta.push_back(std::move(r));
  }
  try {
    validate(d);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return d;
}

// ---- files ----

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace wittc
