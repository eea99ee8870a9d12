// wittc: command-line front end for the wittc library.
//
// Exit codes: 0 pass, 1 refuted (witness printed), 2 usage or format error,
// 3 inconclusive within the configured limits. Every nonzero exit also writes
// one JSON line to stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wittc/wittc.hpp"

namespace {

using namespace wittc;

enum Exit : int { kPass = 0, kRefuted = 1, kUsage = 2, kInconclusive = 3 };

struct RunConfig {
  std::uint64_t prime_bound = 100;
  std::uint64_t index_bound = 2000;
  unsigned depth = 2;
  std::uint64_t deriv_prime_bound = 20;
  std::uint64_t deriv_index_bound = 500;
  std::uint64_t lemma_prime_bound = 13;
  std::uint64_t lemma_index_bound = 200;
  std::size_t max_states = 512;
  std::size_t precision = 4096;
  unsigned retry_limit = 2;
  unsigned workers = 1;
  std::uint64_t seed = 0;
};

/// Thrown to leave a command with a specific exit code and reason.
struct Outcome {
  int code;
  std::string reason;
  Json extra = Json::object();
};

int finish(int code, const std::string& reason, Json extra = Json::object()) {
  if (code != kPass) {
    Json line{{"exit", code}, {"reason", reason}};
    for (auto& [k, v] : extra.items()) line[k] = v;
    std::cerr << line.dump() << std::endl;
  }
  return code;
}

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  const std::string s(v);
  if (s.find_first_not_of("0123456789") != std::string::npos) {
    throw Outcome{kUsage, std::string(name) + " must be a nonnegative integer"};
  }
  return std::stoull(s);
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Outcome{kUsage, "cannot write " + path};
  out << text;
}

std::string witness(std::uint64_t p, std::uint64_t a) {
  return "(p=" + std::to_string(p) + ",a=" + std::to_string(a) + ")";
}

std::string path_text(const std::vector<std::uint64_t>& path) {
  std::string s = "(";
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "," : "") + std::to_string(path[i]);
  return s + ")";
}

// ---- check ----

int cmd_check(const std::string& input, const RunConfig& cfg) {
  const WittVector xi = witt_from_json(read_json_file(input));
  bool refuted = false, inconclusive = false;
  Json witnesses = Json::array();
  auto tally = [&](CheckStatus s) {
    refuted = refuted || s == CheckStatus::counterexample;
    inconclusive = inconclusive || s == CheckStatus::inconclusive;
  };

  if (xi.ring().is_integers()) {
    const auto r = check_membership_Z(xi, cfg.prime_bound, cfg.index_bound, cfg.workers);
    tally(r.status);
    std::cout << "membership_Z: " << to_string(r.status);
    if (r.status == CheckStatus::counterexample) {
      std::cout << " " << witness(r.p, r.a);
      witnesses.push_back(witness(r.p, r.a));
    } else if (r.status == CheckStatus::ok) {
      std::cout << (r.proven ? " (proven)" : " (bounded)");
    }
    std::cout << " [p<=" << cfg.prime_bound << ", a<=" << cfg.index_bound << "]\n";
  } else {
    std::cout << "membership_Z: skipped (coefficients outside Z)\n";
  }

  const auto primes = primes_up_to(cfg.deriv_prime_bound);
  const auto d = check_membership_derivative(xi, primes, cfg.depth, cfg.deriv_index_bound, cfg.workers);
  tally(d.status);
  std::cout << "derivative: " << to_string(d.status);
  if (d.status == CheckStatus::counterexample) {
    std::cout << " path=" << path_text(d.path) << " a=" << d.a;
    witnesses.push_back("path=" + path_text(d.path) + ",a=" + std::to_string(d.a));
  }
  std::cout << " [depth " << cfg.depth << ", p<=" << cfg.deriv_prime_bound << ", a<=" << cfg.deriv_index_bound << "]\n";

  if (!xi.ring().is_integers()) {
    for (std::uint64_t p : primes_up_to(cfg.lemma_prime_bound)) {
      for (const auto& P : split_prime(p, xi.ring())) {
        const auto r = check_lemma_bound(xi, p, P, cfg.lemma_index_bound);
        tally(r.status);
        std::cout << "lemma_bound p=" << p << " P=(" << P.label() << ") " << to_string(P.kind) << " f=" << P.inertia_degree
                  << ": " << to_string(r.status);
        if (r.status == CheckStatus::counterexample) {
          std::cout << " a=" << r.a;
          witnesses.push_back("P=(" + P.label() + "),a=" + std::to_string(r.a));
        }
        std::cout << "\n";
      }
    }
  }
  if (refuted) return finish(kRefuted, "refuted", Json{{"witnesses", witnesses}});
  if (inconclusive) return finish(kInconclusive, "inconclusive: evaluation range exhausted");
  return kPass;
}

// ---- report ----

int cmd_report(const std::string& input, const RunConfig& cfg) {
  const WittVector xi = witt_from_json(read_json_file(input));
  ReportLimits lim;
  lim.prime_bound = cfg.prime_bound;
  lim.index_bound = cfg.index_bound;
  lim.depth = cfg.depth;
  lim.max_states = cfg.max_states;
  lim.workers = cfg.workers;
  const IntegralityReport r = integrality_report(xi, lim);
  auto line = [](const char* name, const Condition& c) {
    std::cout << name << ": " << to_string(c.verdict) << " - " << c.detail << "\n";
  };
  line("condition 1 (monic polynomial)", r.monic);
  line("condition 2 (finite coefficient set)", r.finite_coefficients);
  line("condition 3 (finite orbit)", r.finite_orbit);
  line("condition 4 (automatic)", r.automatic);
  std::cout << "minimal polynomial: " << r.minimal_polynomial.value_or("none") << "\n";
  std::cout << "orbit size: " << (r.orbit_size ? std::to_string(*r.orbit_size) : "unknown") << "\n";
  std::cout << "minimal modulus: ";
  switch (r.minimal_modulus.status) {
    case ModulusStatus::found: std::cout << r.minimal_modulus.modulus; break;
    case ModulusStatus::none: std::cout << "none"; break;
    case ModulusStatus::inconclusive: std::cout << "unknown"; break;
  }
  std::cout << "\n";
  std::cout << "algebra dimension: " << (r.algebra_dimension ? std::to_string(*r.algebra_dimension) : "unknown") << "\n";
  line("membership", r.membership);
  switch (r.overall()) {
    case Verdict::proven: std::cout << "verdict: integral\n"; return kPass;
    case Verdict::refuted:
      std::cout << "verdict: not integral\n";
      return finish(kRefuted, "not integral", Json{{"witness", r.finite_coefficients.detail}});
    case Verdict::inconclusive: std::cout << "verdict: inconclusive\n"; break;
  }
  return finish(kInconclusive, "integrality undecided within limits");
}

// ---- orbit ----

int cmd_orbit(const std::string& input, const RunConfig& cfg, const std::string& dot_path, const std::string& json_path) {
  const WittVector xi = witt_from_json(read_json_file(input));
  const OrbitResult o = orbit(xi, cfg.max_states);
  Json j = orbit_to_json(o);
  std::string dot;
  if (o.complete) {
    const auto [d, c] = orbit_to_dfao(o);
    j["dfao"] = dfao_to_json(d, c);
    dot = to_dot(d, c);
  }
  std::cout << "states: " << o.states.size() << "\n";
  std::cout << "complete: " << (o.complete ? "true" : "false") << "\n";
  if (o.certificate) {
    std::cout << "certificate: d=" << o.certificate->d.to_string() << " sigma=" << o.certificate->sigma
              << " |C|=" << o.certificate->coefficient_count << " bound=" << o.certificate->orbit_bound.str() << "\n";
  }
  if (!json_path.empty()) write_text(json_path, j.dump(2) + "\n");
  if (!o.complete) return finish(kInconclusive, "orbit incomplete", Json{{"note", o.note}});
  if (!dot_path.empty()) write_text(dot_path, dot);
  return kPass;
}

// ---- eval ----

int cmd_eval(const std::string& input, const std::string& at) {
  const WittVector xi = witt_from_json(read_json_file(input));
  BigInt n;
  try {
    n = parse_bigint(at);
  } catch (const std::invalid_argument&) {
    throw Outcome{kUsage, "--at must be a positive integer"};
  }
  if (n < 1) throw Outcome{kUsage, "--at must be a positive integer"};
  if (!fits_u64(n) || !xi.evaluable(to_u64(n))) {
    return finish(kInconclusive, "index outside the evaluable range", Json{{"index", n.str()}});
  }
  std::cout << coefficient(xi, factor(n)).to_string() << "\n";
  return kPass;
}

// ---- norm-pullback ----

/// "(1+i)*(2+i)^2*3" -> ideal of O_L. Each factor is a prime generator;
/// generators containing '+', '-' or '*' must be parenthesized.
IdealL parse_ideal(const std::string& spec, const QuadRing& ring) {
  std::map<PrimeOfL, unsigned> exps;
  std::vector<std::string> factors;
  std::string cur;
  int depth = 0;
  for (char ch : spec) {
    if (ch == ' ') continue;
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw Outcome{kUsage, "unbalanced parentheses in ideal '" + spec + "'"};
    if (ch == '*' && depth == 0) {
      factors.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw Outcome{kUsage, "unbalanced parentheses in ideal '" + spec + "'"};
  factors.push_back(cur);
  for (std::string token : factors) {
    unsigned e = 1;
    const auto caret = token.rfind('^');
    if (caret != std::string::npos && (token.find(')') == std::string::npos || token.rfind(')') < caret)) {
      const std::string ex = token.substr(caret + 1);
      if (ex.empty() || ex.find_first_not_of("0123456789") != std::string::npos) {
        throw Outcome{kUsage, "bad exponent in ideal factor '" + token + "'"};
      }
      e = static_cast<unsigned>(std::stoul(ex));
      token.resize(caret);
    }
    if (token.size() >= 2 && token.front() == '(' && token.back() == ')') token = token.substr(1, token.size() - 2);
    if (token.empty()) throw Outcome{kUsage, "empty factor in ideal '" + spec + "'"};
    if (token == "1") continue;
    exps[prime_of_generator(QuadInt::parse(ring, token))] += e;
  }
  return IdealL(ring, exps);
}

int cmd_norm_pullback(const std::string& input, std::int64_t d, const std::string& ideal, bool check, unsigned max_exp) {
  const WittVector xi = witt_from_json(read_json_file(input));
  const QuadRing ring = QuadRing::make(d);
  const NormPullback zeta = norm_pullback(xi, ring);
  const IdealL A = parse_ideal(ideal, ring);
  std::cout << "N(A) = " << norm_ideal(A).to_string() << "\n";
  std::cout << "value: " << zeta(A).to_string() << "\n";
  if (!check) return kPass;
  std::vector<PrimeOfL> primes;
  for (const auto& [P, e] : A.exponents()) primes.push_back(P);
  const auto r = check_pullback_congruence(zeta, primes, max_exp);
  std::cout << "congruence: " << to_string(r.status) << " (" << r.checked << " pairs, exponents <= " << max_exp << ")\n";
  if (r.status == CheckStatus::counterexample) {
    return finish(kRefuted, "pullback congruence fails", Json{{"prime", r.prime}, {"ideal", r.ideal}});
  }
  return kPass;
}

// ---- dr ----

int cmd_dr(std::uint64_t f, bool table) {
  const DrQuotient q = dr_quotient(f);
  std::cout << "modulus: " << f << "\n";
  std::cout << "classes: " << q.modulus << "\n";
  if (table) std::cout << q.to_csv();
  return kPass;
}

// ---- christol ----

int cmd_christol_synth(const std::string& input, const RunConfig& cfg, const std::string& out_path) {
  const Json j = read_json_file(input);
  SynthesisOptions opt;
  opt.precision = cfg.precision;
  opt.max_states = cfg.max_states;
  opt.retries = cfg.retry_limit;
  SynthesisResult r;
  if (j.contains("polynomial")) {
    const BivariatePoly P = poly_from_json(j.at("polynomial"));
    std::vector<FqElem> prefix;
    for (const auto& c : detail::field(j, "prefix")) prefix.push_back(fq_from_json(c, P.field));
    r = series_orbit_dfao([&](std::size_t prec) { return series_from_polynomial(P, prefix, prec); }, opt);
  } else {
    const FqFieldPtr F = fq_field_from_json(detail::field(j, "field"));
    std::vector<FqElem> coeffs;
    for (const auto& c : detail::field(j, "series")) coeffs.push_back(fq_from_json(c, F));
    if (coeffs.empty()) throw FormatError("series must be nonempty");
    r = series_orbit_dfao(TruncSeries(F, coeffs), cfg.max_states);
  }
  if (r.status != SynthesisStatus::ok) return finish(kInconclusive, "synthesis failed", Json{{"note", r.note}});
  write_text(out_path, digit_dfao_to_json(*r.machine).dump(2) + "\n");
  if (out_path != "-") std::cout << "states: " << r.machine->size() << "\n";
  return kPass;
}

int cmd_christol_verify(const std::string& machine, const std::string& poly, std::size_t precision) {
  const DigitDfao d = digit_dfao_from_json(read_json_file(machine));
  const BivariatePoly P = poly_from_json(read_json_file(poly));
  const AlgebraicCheck r = verify_algebraic(d, P, precision);
  if (r.ok) {
    std::cout << "algebraic: true [T=" << precision << "]\n";
    return kPass;
  }
  std::cout << "algebraic: false, first mismatch at index " << *r.first_mismatch << "\n";
  return finish(kRefuted, "polynomial not satisfied", Json{{"first_mismatch", *r.first_mismatch}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Witt vectors over Z: membership, orbits, automata and periodicity"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.fallthrough();
  app.add_option("--workers", cfg.workers, "sweep worker threads (default WITTC_WORKERS or 1)")->check(CLI::PositiveNumber);

  auto add_bounds = [&](CLI::App* sub) {
    sub->add_option("--prime-bound", cfg.prime_bound, "largest prime in congruence sweeps")->check(CLI::PositiveNumber);
    sub->add_option("--index-bound", cfg.index_bound, "largest index in congruence sweeps")->check(CLI::PositiveNumber);
    sub->add_option("--depth", cfg.depth, "derivative tower depth")->check(CLI::PositiveNumber);
    sub->add_option("--max-states", cfg.max_states, "orbit state limit")->check(CLI::PositiveNumber);
  };

  std::string input, dot_path, json_path, at, ideal, out_path = "-", machine_path, poly_path;
  std::int64_t d = -1;
  std::uint64_t modulus = 1;
  bool table = false, pullback_check = false;
  unsigned max_exp = 3;

  auto* check = app.add_subcommand("check", "verify Witt congruences and derivative integrality");
  check->add_option("input", input, "WittVector JSON")->required();
  add_bounds(check);
  check->add_option("--deriv-prime-bound", cfg.deriv_prime_bound, "largest prime in derivative paths");
  check->add_option("--deriv-index-bound", cfg.deriv_index_bound, "largest index in derivative checks");
  check->add_option("--lemma-prime-bound", cfg.lemma_prime_bound, "largest prime for the coefficient-bound lemma");
  check->add_option("--lemma-index-bound", cfg.lemma_index_bound, "largest index for the coefficient-bound lemma");

  auto* report = app.add_subcommand("report", "four-condition integrality report");
  report->add_option("input", input, "WittVector JSON")->required();
  add_bounds(report);

  auto* orb = app.add_subcommand("orbit", "Frobenius orbit and synthesized automaton");
  orb->add_option("input", input, "WittVector JSON")->required();
  orb->add_option("--dot", dot_path, "write the automaton as DOT ('-' for stdout)");
  orb->add_option("--json", json_path, "write orbit and automaton JSON ('-' for stdout)");
  add_bounds(orb);

  auto* eval = app.add_subcommand("eval", "coefficient at an index");
  eval->add_option("input", input, "WittVector JSON")->required();
  eval->add_option("--at", at, "positive integer index")->required();

  auto* np = app.add_subcommand("norm-pullback", "evaluate the norm pullback at an ideal of O_L");
  np->add_option("input", input, "WittVector JSON")->required();
  np->add_option("--d", d, "squarefree d of L = Q(sqrt d)")->required();
  np->add_option("--ideal", ideal, "product of prime generators, e.g. '(1+i)*(2+i)^2*3'")->required();
  np->add_flag("--check", pullback_check, "check the base-O_L congruences on the ideal's primes");
  np->add_option("--max-exp", max_exp, "exponent bound for --check");

  auto* dr = app.add_subcommand("dr", "residue monoid of the congruence modulo f");
  dr->add_option("--modulus", modulus, "modulus f")->required()->check(CLI::PositiveNumber);
  dr->add_flag("--table", table, "print the multiplication table as CSV");

  auto* christol = app.add_subcommand("christol", "classical automata over F_q");
  christol->require_subcommand(1);
  christol->fallthrough();
  auto* synth = christol->add_subcommand("synth", "synthesize a digit automaton from a series");
  synth->add_option("input", input, "JSON with {polynomial, prefix} or {field, series}")->required();
  synth->add_option("--precision", cfg.precision, "series precision")->check(CLI::PositiveNumber);
  synth->add_option("--max-states", cfg.max_states, "state limit")->check(CLI::PositiveNumber);
  synth->add_option("--retries", cfg.retry_limit, "precision doublings on failure");
  synth->add_option("--out", out_path, "output path ('-' for stdout)");
  auto* verify = christol->add_subcommand("verify", "check an automaton against a polynomial");
  verify->add_option("--machine", machine_path, "digit automaton JSON")->required();
  verify->add_option("--poly", poly_path, "polynomial JSON")->required();
  verify->add_option("--precision", cfg.precision, "truncation order T")->check(CLI::PositiveNumber);

  try {
    cfg.workers = static_cast<unsigned>(std::max<std::uint64_t>(1, env_u64("WITTC_WORKERS", 1)));
    cfg.seed = env_u64("WITTC_SEED", 0);
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return finish(kUsage, "usage", Json{{"detail", e.what()}});
  } catch (const Outcome& o) {
    return finish(o.code, o.reason, o.extra);
  }

  try {
    if (*check) return cmd_check(input, cfg);
    if (*report) return cmd_report(input, cfg);
    if (*orb) return cmd_orbit(input, cfg, dot_path, json_path);
    if (*eval) return cmd_eval(input, at);
    if (*np) return cmd_norm_pullback(input, d, ideal, pullback_check, max_exp);
    if (*dr) return cmd_dr(modulus, table);
    if (*synth) return cmd_christol_synth(input, cfg, out_path);
    if (*verify) return cmd_christol_verify(machine_path, poly_path, cfg.precision);
  } catch (const Outcome& o) {
    return finish(o.code, o.reason, o.extra);
  } catch (const FormatError& e) {
    return finish(kUsage, "format error", Json{{"detail", e.what()}});
  } catch (const CapabilityError& e) {
    return finish(kUsage, "unsupported", Json{{"detail", e.what()}});
  } catch (const std::invalid_argument& e) {
    return finish(kUsage, "invalid argument", Json{{"detail", e.what()}});
  } catch (const std::out_of_range& e) {
    return finish(kInconclusive, "out of range", Json{{"detail", e.what()}});
  } catch (const std::length_error& e) {
    return finish(kInconclusive, "resource limit", Json{{"detail", e.what()}});
  } catch (const std::domain_error& e) {
    return finish(kUsage, "domain error", Json{{"detail", e.what()}});
  }
  return finish(kUsage, "no command");
}
