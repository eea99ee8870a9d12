#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wittc/fq.hpp"
#include "wittc/quadratic.hpp"
#include "wittc/series.hpp"

namespace wittc {

/// Least-significant digit first; 0 maps to the empty word.
inline std::vector<unsigned> base_p_digits(std::uint64_t n, std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("digit base must be at least 2");
  std::vector<unsigned> digits;
  for (; n > 0; n /= p) digits.push_back(static_cast<unsigned>(n % p));
  return digits;
}

/// Automaton reading base-p digits and emitting elements of F_q.
struct DigitDfao {
  FqFieldPtr field;
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::vector<std::vector<std::size_t>> delta;  // delta[state][digit]
  std::vector<FqElem> output;

  std::uint64_t base() const { return field->characteristic(); }
  std::size_t size() const { return states.size(); }
};

inline void validate(const DigitDfao& d) {
  if (!d.field) throw std::invalid_argument("digit automaton has no field");
  const std::size_t n = d.states.size();
  if (n == 0) throw std::invalid_argument("digit automaton has no states");
  if (d.delta.size() != n || d.output.size() != n) throw std::invalid_argument("digit automaton tables have inconsistent sizes");
  if (d.initial >= n) throw std::invalid_argument("initial state out of range");
  for (const auto& row : d.delta) {
    if (row.size() != d.base()) throw std::invalid_argument("digit automaton must have one transition per digit");
    for (std::size_t t : row)
      if (t >= n) throw std::invalid_argument("transition target out of range");
  }
  for (const auto& o : d.output)
    if (!o.field()->same_as(*d.field)) throw std::invalid_argument("output from another field");
}

inline FqElem run_digit_dfao(const DigitDfao& d, std::uint64_t n) {
  std::size_t s = d.initial;
  for (unsigned digit : base_p_digits(n, d.base())) s = d.delta[s][digit];
  return d.output[s];
}

/// Coefficients n |-> s_{pn+i}.
inline TruncSeries section(unsigned i, const TruncSeries& s) {
  const std::uint64_t p = s.field()->characteristic();
  if (i >= p) throw std::invalid_argument("digit out of range");
  if (s.precision() <= i) throw std::out_of_range("precision underflow: section needs more than " + std::to_string(i) + " coefficients");
  const std::size_t out_prec = (s.precision() - i - 1) / p + 1;
  std::vector<FqElem> c;
  c.reserve(out_prec);
  for (std::size_t n = 0; n < out_prec; ++n) c.push_back(s[p * n + i]);
  return TruncSeries(s.field(), std::move(c));
}

/// Coefficients n |-> s_{pn+i}^{1/p}.
inline TruncSeries rho(unsigned i, const TruncSeries& s) {
  const TruncSeries sec = section(i, s);
  std::vector<FqElem> c;
  c.reserve(sec.precision());
  for (const auto& x : sec.coeffs()) c.push_back(fq_inverse_frobenius(x));
  return TruncSeries(s.field(), std::move(c));
}

/// Polynomial in t and y over F_q: coeffs[j][i] multiplies t^i y^j.
struct BivariatePoly {
  FqFieldPtr field;
  std::vector<std::vector<FqElem>> coeffs;

  bool is_zero() const {
    for (const auto& row : coeffs)
      for (const auto& c : row)
        if (!c.is_zero()) return false;
    return true;
  }

  std::size_t y_degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  TruncSeries row_series(std::size_t j, std::size_t precision) const {
    return TruncSeries::from_prefix(field, j < coeffs.size() ? coeffs[j] : std::vector<FqElem>{}, precision);
  }

  /// dP/dy.
  BivariatePoly derivative_y() const {
    BivariatePoly d{field, {}};
    for (std::size_t j = 1; j < coeffs.size(); ++j) {
      std::vector<FqElem> row;
      const FqElem k = FqElem::from_int(field, static_cast<std::int64_t>(j % field->characteristic()));
      for (const auto& c : coeffs[j]) row.push_back(c * k);
      d.coeffs.push_back(std::move(row));
    }
    if (d.coeffs.empty()) d.coeffs.push_back({});
    return d;
  }

  /// P(t, y) truncated to y's precision.
  TruncSeries evaluate(const TruncSeries& y) const {
    const std::size_t n = y.precision();
    TruncSeries acc = row_series(y_degree(), n);
    for (std::size_t j = y_degree(); j-- > 0;) acc = acc * y + row_series(j, n);
    return acc;
  }
};

struct AlgebraicCheck {
  bool ok = false;
  std::optional<std::size_t> first_mismatch;
};

/// Regenerates xi_0 .. xi_{T-1} from the machine and tests P(t, xi) = 0 mod t^T.
inline AlgebraicCheck verify_algebraic(const DigitDfao& d, const BivariatePoly& P, std::size_t precision) {
  if (P.is_zero()) throw std::invalid_argument("polynomial must be nonzero");
  if (!P.field->same_as(*d.field)) throw std::invalid_argument("polynomial and automaton use different fields");
  std::vector<FqElem> xs;
  xs.reserve(precision);
  for (std::size_t n = 0; n < precision; ++n) xs.push_back(run_digit_dfao(d, n));
  const TruncSeries residual = P.evaluate(TruncSeries(d.field, std::move(xs)));
  AlgebraicCheck out;
  for (std::size_t n = 0; n < residual.precision(); ++n) {
    if (!residual[n].is_zero()) {
      out.first_mismatch = n;
      return out;
    }
  }
  out.ok = true;
  return out;
}

/// The unique power-series root of P extending `prefix`, by Newton iteration.
/// The root must be simple at t = 0.
inline TruncSeries series_from_polynomial(const BivariatePoly& P, const std::vector<FqElem>& prefix, std::size_t precision) {
  if (prefix.empty()) throw std::invalid_argument("root prefix must contain at least the constant term");
  if (precision == 0) throw std::invalid_argument("precision must be positive");
  const FqFieldPtr& F = P.field;
  const BivariatePoly dP = P.derivative_y();
  TruncSeries y = TruncSeries::from_prefix(F, {prefix[0]}, 1);
  if (!P.evaluate(y)[0].is_zero()) throw std::invalid_argument("prefix constant term is not a root at t = 0");
  if (dP.evaluate(y)[0].is_zero()) throw CapabilityError("root is not simple at t = 0; Newton lifting unsupported");
  const std::size_t target = std::max(precision, prefix.size());
  std::size_t k = 1;
  while (k < target) {
    k = std::min(2 * k, target);
    const TruncSeries yk = TruncSeries::from_prefix(F, y.coeffs(), k);
    y = yk - P.evaluate(yk) * dP.evaluate(yk).inverse();
  }
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (!(y[i] == prefix[i])) throw std::invalid_argument("no root extends the given prefix");
  }
  if (!P.evaluate(y).is_zero()) throw std::logic_error("Newton lift failed substitution check");
  return y.truncated(precision);
}

enum class SynthesisStatus { ok, inconclusive };

struct SynthesisResult {
  SynthesisStatus status = SynthesisStatus::inconclusive;
  std::optional<DigitDfao> machine;
  std::size_t precision = 0;
  std::string note;
};

struct SynthesisOptions {
  std::size_t precision = 4096;
  std::size_t max_states = 512;
  std::size_t verify_bound = 0;  // 0: every known coefficient of the seed
  unsigned retries = 2;
};

namespace detail {

inline SynthesisResult synthesize_once(const TruncSeries& seed, std::size_t max_states, std::size_t verify_bound) {
  SynthesisResult out;
  out.precision = seed.precision();
  const std::uint64_t p = seed.field()->characteristic();
  if (verify_bound == 0 || verify_bound >= seed.precision()) verify_bound = seed.precision() - 1;
  const std::size_t keep =
      static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(verify_bound) + 1) / std::log(static_cast<double>(p)))) + 1;
  std::vector<TruncSeries> states{seed};
  std::vector<std::vector<std::size_t>> delta;
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::vector<std::size_t> row;
    for (unsigned i = 0; i < p; ++i) {
      if (states[k].precision() <= i) {
        out.note = "precision exhausted while exploring sections";
        return out;
      }
      TruncSeries next = section(i, states[k]);
      std::optional<std::size_t> match;
      for (std::size_t j = 0; j < states.size() && !match; ++j) {
        const std::size_t common = std::min(next.precision(), states[j].precision());
        if (common < keep) {
          out.note = "precision too low to identify states";
          return out;
        }
        if (next.agrees_to(states[j], common)) match = j;
      }
      if (!match) {
        if (states.size() >= max_states) {
          out.note = "state limit " + std::to_string(max_states) + " reached";
          return out;
        }
        states.push_back(std::move(next));
        match = states.size() - 1;
      }
      row.push_back(*match);
    }
    delta.push_back(std::move(row));
  }
  DigitDfao d;
  d.field = seed.field();
  d.initial = 0;
  d.delta = std::move(delta);
  for (std::size_t k = 0; k < states.size(); ++k) {
    d.states.push_back("s" + std::to_string(k));
    d.output.push_back(states[k][0]);
  }
  for (std::size_t n = 0; n <= verify_bound; ++n) {
    if (!(run_digit_dfao(d, n) == seed[n])) {
      out.note = "verification failed at index " + std::to_string(n);
      return out;
    }
  }
  out.status = SynthesisStatus::ok;
  out.machine = std::move(d);
  out.note = "verified for n <= " + std::to_string(verify_bound);
  return out;
}

}  // namespace detail

/// Section-orbit synthesis from a fixed seed. Never returns an unverified machine.
inline SynthesisResult series_orbit_dfao(const TruncSeries& seed, std::size_t max_states = 512,
                                         std::size_t verify_bound = 0) {
  return detail::synthesize_once(seed, max_states, verify_bound);
}

/// Synthesis from a series generator; on failure the precision is doubled up
/// to `options.retries` times.
inline SynthesisResult series_orbit_dfao(const std::function<TruncSeries(std::size_t)>& generate,
                                         const SynthesisOptions& options = {}) {
  std::size_t precision = options.precision;
  SynthesisResult r;
  for (unsigned attempt = 0; attempt <= options.retries; ++attempt, precision *= 2) {
    r = detail::synthesize_once(generate(precision), options.max_states, options.verify_bound);
    if (r.status == SynthesisStatus::ok) return r;
  }
  return r;
}

}  // namespace wittc
