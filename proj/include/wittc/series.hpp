#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wittc/fq.hpp"

namespace wittc {

/// Power series over F_q known modulo t^precision.
class TruncSeries {
 public:
  TruncSeries(FqFieldPtr field, std::vector<FqElem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("series precision must be at least 1");
    for (const auto& c : coeffs_) {
      if (!c.field()->same_as(*field_)) throw std::invalid_argument("series coefficient from another field");
    }
  }

  static TruncSeries zero(const FqFieldPtr& field, std::size_t precision) {
    return TruncSeries(field, std::vector<FqElem>(std::max<std::size_t>(precision, 1), FqElem::zero(field)));
  }

  /// Series with the given leading coefficients, zero-padded to precision.
  static TruncSeries from_prefix(const FqFieldPtr& field, const std::vector<FqElem>& prefix, std::size_t precision) {
    TruncSeries s = zero(field, precision);
    for (std::size_t i = 0; i < std::min(prefix.size(), precision); ++i) s.coeffs_[i] = prefix[i];
    return s;
  }

  const FqFieldPtr& field() const { return field_; }
  std::size_t precision() const { return coeffs_.size(); }
  const std::vector<FqElem>& coeffs() const { return coeffs_; }
  const FqElem& operator[](std::size_t n) const {
    if (n >= coeffs_.size()) throw std::out_of_range("coefficient index beyond series precision");
    return coeffs_[n];
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const FqElem& c) { return c.is_zero(); });
  }

  /// Precision-aware equality: same precision and same coefficients.
  bool operator==(const TruncSeries& o) const {
    return field_->same_as(*o.field_) && coeffs_ == o.coeffs_;
  }

  /// True when the first k coefficients coincide; both operands must know them.
  bool agrees_to(const TruncSeries& o, std::size_t k) const {
    if (k > precision() || k > o.precision()) throw std::out_of_range("agrees_to beyond known precision");
    for (std::size_t i = 0; i < k; ++i)
      if (!(coeffs_[i] == o.coeffs_[i])) return false;
    return true;
  }

  TruncSeries truncated(std::size_t precision) const {
    if (precision == 0 || precision > coeffs_.size()) throw std::out_of_range("cannot truncate to that precision");
    return TruncSeries(field_, std::vector<FqElem>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(precision)));
  }

  TruncSeries operator+(const TruncSeries& o) const {
    check_field(o);
    const std::size_t n = std::min(precision(), o.precision());
    std::vector<FqElem> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(coeffs_[i] + o.coeffs_[i]);
    return TruncSeries(field_, std::move(out));
  }

  TruncSeries operator-(const TruncSeries& o) const {
    check_field(o);
    const std::size_t n = std::min(precision(), o.precision());
    std::vector<FqElem> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(coeffs_[i] - o.coeffs_[i]);
    return TruncSeries(field_, std::move(out));
  }

  TruncSeries scaled(const FqElem& c) const {
    std::vector<FqElem> out;
    out.reserve(coeffs_.size());
    for (const auto& x : coeffs_) out.push_back(x * c);
    return TruncSeries(field_, std::move(out));
  }

  /// Product known to min(precision, o.precision).
  TruncSeries operator*(const TruncSeries& o) const {
    check_field(o);
    const std::size_t n = std::min(precision(), o.precision());
    const FqField& f = *field_;
    if (f.degree() == 1) {
      const std::uint64_t p = f.characteristic();
      std::vector<std::uint64_t> a(n), b(n), acc(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = coeffs_[i].coords()[0];
        b[i] = o.coeffs_[i].coords()[0];
      }
      // Accumulate in 64 bits and reduce periodically.
      const std::uint64_t limit = (p - 1) * (p - 1);
      const std::size_t batch = limit == 0 ? n + 1 : std::max<std::size_t>(1, static_cast<std::size_t>(((~0ULL) >> 1) / limit));
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) acc[i + j] += a[i] * b[j];
        if ((i + 1) % batch == 0)
          for (auto& v : acc) v %= p;
      }
      std::vector<FqElem> out;
      out.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        FqCoords c{};
        c[0] = static_cast<std::uint32_t>(acc[i] % p);
        out.emplace_back(field_, c);
      }
      return TruncSeries(field_, std::move(out));
    }
    std::vector<FqCoords> acc(n, FqCoords{});
    for (std::size_t i = 0; i < n; ++i) {
      if (coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < n; ++j) {
        acc[i + j] = f.add(acc[i + j], f.mul(coeffs_[i].coords(), o.coeffs_[j].coords()));
      }
    }
    std::vector<FqElem> out;
    out.reserve(n);
    for (const auto& c : acc) out.emplace_back(field_, c);
    return TruncSeries(field_, std::move(out));
  }

  /// Multiplicative inverse; the constant term must be nonzero.
  TruncSeries inverse() const {
    if (coeffs_[0].is_zero()) throw std::domain_error("series with zero constant term is not invertible");
    const std::size_t n = precision();
    const FqElem c0_inv = coeffs_[0].inverse();
    std::vector<FqElem> inv(n, FqElem::zero(field_));
    inv[0] = c0_inv;
    for (std::size_t k = 1; k < n; ++k) {
      FqElem acc = FqElem::zero(field_);
      for (std::size_t i = 1; i <= k; ++i) {
        if (!coeffs_[i].is_zero()) acc += coeffs_[i] * inv[k - i];
      }
      inv[k] = -(acc * c0_inv);
    }
    return TruncSeries(field_, std::move(inv));
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) s += ',';
      s += coeffs_[i].to_string();
    }
    return s + "]";
  }

 private:
  void check_field(const TruncSeries& o) const {
    if (!field_->same_as(*o.field_)) throw std::invalid_argument("series over different fields");
  }

  FqFieldPtr field_;
  std::vector<FqElem> coeffs_;
};

inline TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) { return a * b; }

}  // namespace wittc
