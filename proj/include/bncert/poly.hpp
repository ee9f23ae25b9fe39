#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace bncert {

using Integer = mpz_class;

/// Integer polynomial in the ambient dimension r. Coefficient i multiplies r^i.
/// Trailing zeros are stripped, so the zero polynomial has no coefficients.
class PolyR {
public:
  PolyR() = default;
  PolyR(long constant);  // NOLINT: implicit on purpose, constants read naturally
  PolyR(std::initializer_list<long> coeffs);
  explicit PolyR(std::vector<Integer> coeffs);

  /// The monomial r.
  static PolyR r();

  const std::vector<Integer> &coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Integer leading() const { return coeffs_.empty() ? Integer(0) : coeffs_.back(); }
  Integer coefficient(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : Integer(0);
  }

  Integer eval(const Integer &r) const;
  Integer eval(long r) const { return eval(Integer(r)); }

  PolyR &operator+=(const PolyR &o);
  PolyR &operator-=(const PolyR &o);
  PolyR &operator*=(const PolyR &o);
  friend PolyR operator+(PolyR a, const PolyR &b) { return a += b; }
  friend PolyR operator-(PolyR a, const PolyR &b) { return a -= b; }
  friend PolyR operator*(PolyR a, const PolyR &b) { return a *= b; }
  PolyR operator-() const;

  friend bool operator==(const PolyR &a, const PolyR &b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const PolyR &a, const PolyR &b) { return !(a == b); }

  /// Human-readable form, highest power first, e.g. "3r^2 - 5r + 2".
  std::string str() const;

private:
  void normalize();
  std::vector<Integer> coeffs_;
};

/// Default upper end of the r-range on which nonnegativity is decided.
inline constexpr long kDefaultRMax = 100;
inline constexpr long kRMin = 3;

/// Decides p(r) >= 0 for every integer r >= r_min. Evaluates on [r_min, r_max]
/// and, beyond r_max, requires a positive leading coefficient; when the Cauchy
/// root bound exceeds r_max the evaluation range is extended up to that bound.
bool nonnegative_for_r(const PolyR &p, long r_max = kDefaultRMax, long r_min = kRMin);

}  // namespace bncert
