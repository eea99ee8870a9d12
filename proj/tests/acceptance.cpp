// Acceptance gate: one PASS/FAIL line per criterion. argv[1] is the wittc binary.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace wittc;
using namespace wittc::testing;

namespace {

struct Gate {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail.str("");
      detail << what;
    }
  }
};

std::string g_cli;

const std::vector<std::string> kWittFixtures{
    "gaussian.json", "gaussian_periodic.json", "trace.json",   "trace_periodic.json", "pow_2.json",
    "pow_3.json",    "pow_5.json",             "pow_10.json",  "two_plus_three.json", "two_pow_plus_i.json",
    "const_7.json",  "const_0.json",           "n_table.json", "short_table.json"};

const std::vector<std::string> kIntegralFixtures{"gaussian.json", "gaussian_periodic.json", "trace.json",
                                                 "trace_periodic.json", "const_7.json", "const_0.json"};

PrimeOfL prime_at(std::int64_t a, std::int64_t b) { return prime_of_generator(gi(a, b)); }

void membership(Gate& v) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const char* name : {"pow_2.json", "pow_3.json", "pow_5.json", "pow_10.json"}) {
    const auto r = check_membership_Z(load(name), 100, 2000, 1);
    v.require(r.status == CheckStatus::ok, std::string(name) + " has a counterexample");
  }
  const auto n = check_membership_Z(load("n_table.json"), 100, 2000, 1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  v.require(n.status == CheckStatus::counterexample && n.p == 2 && n.a == 1, "xi_n = n witness is not (2,1)");
  v.require(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  if (v.pass) v.detail << "a in {2,3,5,10} clean; n refuted at (2,1); " << secs << " s single-threaded";
}

void derivative(Gate& v) {
  const WittVector xi = load("two_plus_three.json");
  const auto r = check_membership_derivative(xi, primes_up_to(20), 2, 500, 1);
  v.require(r.status == CheckStatus::ok, "derivative check: " + to_string(r.status));
  const QuadInt spot = iterated_derivative(xi, {2}, 1);
  v.require(spot == zi(-6), "delta_2 xi at 1 = " + spot.to_string());
  if (v.pass) v.detail << "depth 2, p <= 20, n <= 500; delta_2 xi|_1 = -6";
}

void gaussian(Gate& v) {
  const WittVector xi = load("gaussian.json");
  const OrbitResult o = orbit(xi);
  v.require(o.complete && o.states.size() == 4, "orbit size " + std::to_string(o.states.size()));
  const auto [d, c] = orbit_to_dfao(o);
  const QuadInt powers[] = {gi(1, 0), gi(0, 1), gi(-1, 0), gi(0, -1)};
  for (std::uint64_t n = 1; n <= 10000 && v.pass; ++n)
    v.require(run(d, c, detail::factor_word(n)) == powers[n % 4], "DFAO disagrees at n = " + std::to_string(n));
  v.require(!check_commutativity(d, c).has_value(), "commutativity violated");
  v.require(minimal_polynomial(xi).to_string() == "X^4 - 1", "minimal polynomial " + minimal_polynomial(xi).to_string());
  const MinimalModulus m = minimal_modulus(xi);
  v.require(m.status == ModulusStatus::found && m.modulus == 4, "minimal modulus " + std::to_string(m.modulus));
  v.require(algebra_dimension(o) == 4, "algebra dimension " + std::to_string(algebra_dimension(o)));
  if (v.pass) v.detail << "orbit 4, DFAO exact to 10^4, commutative, X^4 - 1, modulus 4, dimension 4";
}

void trace(Gate& v) {
  const WittVector xi = load("trace.json");
  const DivisorBound b = divisor_bound(xi);
  v.require(b.d.value() == 4 && b.sigma == 3 && b.orbit_bound == 27, "certificate d=" + b.d.value().str());
  const OrbitResult o = orbit(xi);
  v.require(o.complete && o.states.size() == 3 && BigInt(o.states.size()) <= b.orbit_bound, "orbit size");
  v.require(minimal_polynomial(xi).to_string() == "X^3 - 4X", "minimal polynomial " + minimal_polynomial(xi).to_string());
  v.require(algebra_dimension(o) == 3, "algebra dimension " + std::to_string(algebra_dimension(o)));
  for (std::uint64_t p : primes_up_to(100))
    if (p != 2) v.require(frobenius_shift(xi, p) == xi, "psi_" + std::to_string(p) + " xi != xi");
  if (v.pass) v.detail << "d = 4, sigma = 3, 3 <= 27, X^3 - 4X, dimension 3, stationary for odd p <= 100";
}

void non_integral(Gate& v) {
  const IntegralityReport r = integrality_report(load("pow_2.json"));
  v.require(r.overall() == wittc::Verdict::refuted, "report does not refute");
  v.require(r.finite_coefficients.verdict == wittc::Verdict::refuted && !r.finite_coefficients.detail.empty(),
            "no infinite-coefficient witness");
  const auto m = check_membership_Z(load("pow_2.json"), 100, 2000, 1);
  v.require(r.membership.verdict == wittc::Verdict::proven && m.status == CheckStatus::ok && m.proven,
            "membership does not pass");
  if (v.pass) v.detail << "refuted by coefficient growth; membership proven";
}

void lemma_bound(Gate& v) {
  const WittVector xi = load("two_pow_plus_i.json");
  std::set<std::pair<SplitKind, unsigned>> seen;
  for (std::uint64_t p : {2, 3, 5, 7, 13})
    for (const PrimeOfL& P : split_prime(p, Gauss())) {
      seen.insert({P.kind, P.inertia_degree});
      const auto r = check_lemma_bound(xi, p, P, 200);
      v.require(r.status == CheckStatus::ok, "lemma bound at (" + P.label() + "): " + r.note);
    }
  v.require(seen.size() == 3, "splitting types not all covered");
  const QuadInt d2 = coefficient(xi, 2) - coefficient(xi, 1);
  const QuadInt d9 = coefficient(xi, 9) - coefficient(xi, 1);
  const QuadInt d5 = coefficient(xi, 5) - coefficient(xi, 1);
  v.require(d2 == gi(1, -1) && in_prime_power(d2, prime_at(1, 1), 1), "1-i spot check");
  v.require(d9 == gi(510, 0) && in_prime_power(d9, prime_at(3, 0), 1), "510 spot check");
  v.require(d5 == gi(30, 0) && in_prime_power(d5, prime_at(2, 1), 1), "30 spot check");
  if (v.pass) v.detail << "p in {2,3,5,7,13}, a <= 200; 1-i in (1+i), 510 in (3), 30 in (2+i)";
}

void pullback(Gate& v) {
  const NormPullback z = norm_pullback(load("gaussian.json"), Gauss());
  const std::vector<PrimeOfL> primes{prime_at(1, 1), prime_at(3, 0), prime_at(2, 1)};
  const QuadInt want[] = {gi(-1, 0), gi(0, 1), gi(0, 1)};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const QuadInt got = z(IdealL::prime(primes[i]));
    v.require(got == want[i], "value at (" + primes[i].label() + ") = " + got.to_string());
  }
  const auto r = check_pullback_congruence(z, primes, 3);
  v.require(r.status == CheckStatus::ok, "congruence fails at (" + r.prime + ")");
  if (v.pass) v.detail << "-1, i, i; " << r.checked << " congruences with exponents <= 3";
}

void christol(Gate& v) {
  const Json in = read_json_file(fixture("pow2_synth.json"));
  const BivariatePoly P = poly_from_json(in.at("polynomial"));
  std::vector<FqElem> prefix;
  for (const auto& c : in.at("prefix")) prefix.push_back(fq_from_json(c, P.field));
  const auto s = series_orbit_dfao([&](std::size_t T) { return series_from_polynomial(P, prefix, T); });
  v.require(s.status == SynthesisStatus::ok && s.machine->size() == 3, "synthesis did not give 3 states");
  if (v.pass) v.require(verify_algebraic(*s.machine, P, 4096).ok, "y^2+y+t not verified");
  const DigitDfao tm = digit_dfao_from_json(read_json_file(fixture("thue_morse_machine.json")));
  v.require(tm.size() == 2, "Thue-Morse machine is not 2-state");
  v.require(verify_algebraic(tm, poly_from_json(read_json_file(fixture("thue_morse_poly.json"))), 4096).ok,
            "Thue-Morse polynomial not verified");
  const AlgebraicCheck bad = verify_algebraic(tm, poly_from_json(read_json_file(fixture("pow2_poly.json"))), 4096);
  v.require(!bad.ok && bad.first_mismatch && *bad.first_mismatch < 8, "wrong polynomial control");
  if (v.pass) v.detail << "3 states verified at T=4096; Thue-Morse verified; control mismatch at " << *bad.first_mismatch;
}

void deligne_ribet(Gate& v) {
  std::size_t pairs = 0;
  for (std::int64_t f = 1; f <= 24; ++f)
    for (std::int64_t a = 1; a <= 200; ++a)
      for (std::int64_t b = 1; b <= 200; ++b, ++pairs)
        if (dr_congruent(BigInt(a), BigInt(b), BigInt(f)) != t_search(a, b, f)) {
          v.require(false, "disagreement at a=" + std::to_string(a) + " b=" + std::to_string(b) + " f=" + std::to_string(f));
          return;
        }
  const DrQuotient q = dr_quotient(6);
  std::vector<std::vector<std::set<std::uint64_t>>> seen(6, std::vector<std::set<std::uint64_t>>(6));
  for (std::uint64_t a = 1; a <= 10000; a += 7)
    for (std::uint64_t b = 1; b <= 10000; b += 13) seen[a % 6][b % 6].insert((a * b) % 6);
  for (std::uint64_t r = 0; r < 6; ++r)
    for (std::uint64_t s = 0; s < 6; ++s)
      v.require(seen[r][s].size() == 1 && *seen[r][s].begin() == q.table[r][s], "table entry " + std::to_string(r) + "*" + std::to_string(s));
  if (v.pass) v.detail << pairs << " triples match the t-search; dr_quotient(6) matches representative products";
}

bool same_coefficients(const WittVector& x, const WittVector& y, std::uint64_t bound, std::uint64_t& checked) {
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (!x.evaluable(n)) break;
    if (coefficient(x, n) != coefficient(y, n)) return false;
    ++checked;
  }
  return true;
}

void roundtrip(Gate& v) {
  std::uint64_t checked = 0;
  for (const auto& name : kWittFixtures) {
    const WittVector xi = load(name);
    v.require(same_coefficients(xi, witt_from_json(witt_to_json(xi)), 10000, checked), name + " JSON round trip");
  }
  for (const auto& name : kIntegralFixtures) {
    const WittVector xi = load(name);
    const OrbitResult o = orbit(xi);
    v.require(o.complete, name + " orbit incomplete");
    if (!o.complete) continue;
    const auto [d, c] = orbit_to_dfao(o);
    v.require(same_coefficients(xi, dfao_to_witt(d, c, xi.ring()), 10000, checked), name + " DFAO round trip");
    const auto [d2, c2] = dfao_from_json(dfao_to_json(d, c), xi.ring());
    v.require(same_coefficients(xi, dfao_to_witt(d2, c2, xi.ring()), 10000, checked), name + " DFAO JSON round trip");
  }

  const auto fx = [](const std::string& n) { return "'" + fixture(n) + "' "; };
  const std::vector<std::string> commands{
      "check " + fx("n_table.json"),
      "check " + fx("two_plus_three.json"),
      "check " + fx("two_pow_plus_i.json"),
      "check " + fx("short_table.json"),
      "check " + fx("malformed.json"),
      "report " + fx("gaussian.json"),
      "report " + fx("trace.json"),
      "report " + fx("pow_2.json"),
      "orbit " + fx("gaussian.json") + "--json -",
      "orbit " + fx("trace_periodic.json") + "--dot -",
      "orbit " + fx("pow_2.json") + "--max-states 8 --json -",
      "eval " + fx("two_pow_plus_i.json") + "--at 360",
      "norm-pullback " + fx("gaussian.json") + "--d -1 --ideal '(1+i)*(2+i)^2*3' --check",
      "dr --modulus 6 --table",
      "christol synth " + fx("pow2_synth.json"),
      "christol synth " + fx("thue_morse_series.json"),
      "christol verify --machine " + fx("thue_morse_machine.json") + "--poly " + fx("pow2_poly.json"),
  };
  std::size_t runs = 0;
  for (const auto& c : commands) {
    const Run base = shell("WITTC_WORKERS=1 " + g_cli + " " + c + " 2>&1");
    const std::vector<std::string> variants{"WITTC_WORKERS=1 " + g_cli + " " + c, "WITTC_WORKERS=4 " + g_cli + " " + c,
                                            g_cli + " --workers 2 " + c, g_cli + " --workers 8 " + c};
    for (const auto& w : variants) {
      const Run r = shell(w + " 2>&1");
      ++runs;
      v.require(r.out == base.out && r.code == base.code, "output differs: " + w);
    }
  }
  if (v.pass)
    v.detail << checked << " coefficients round-tripped; " << commands.size() << " commands byte-identical over " << runs
             << " reruns";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance PATH_TO_WITTC\n";
    return 2;
  }
  g_cli = std::string("'") + argv[1] + "'";

  const std::vector<std::pair<std::string, std::function<void(Gate&)>>> criteria{
      {"membership suite", membership},  {"derivative tower", derivative},   {"gaussian fixture", gaussian},
      {"trace fixture", trace},          {"non-integral fixture", non_integral}, {"lemma bound", lemma_bound},
      {"norm pullback", pullback},       {"classical christol", christol}, {"deligne-ribet", deligne_ribet},
      {"round trips and determinism", roundtrip}};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Gate v;
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail.str("");
      v.detail << "exception: " << e.what();
    }
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << v.detail.str()
              << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
