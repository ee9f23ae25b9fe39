#pragma once

#include "bncert/poly.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bncert {

class SpaceMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class UnknownLabel : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// The two variable spaces. SPLIT carries (d, g, d', g', n) for the hyperplane
/// splittings; GLUE carries (d1, g1, d2, g2, n) for two space curves glued at n points.
enum class Space { Split, Glue };

inline constexpr std::size_t kNumVars = 5;
using VarIndex = std::size_t;

namespace split {
inline constexpr VarIndex d = 0, g = 1, dp = 2, gp = 3, n = 4;
}
namespace glue {
inline constexpr VarIndex d1 = 0, g1 = 1, d2 = 2, g2 = 3, n = 4;
}

std::string_view space_name(Space s);
const std::array<std::string_view, kNumVars> &variable_names(Space s);
/// Index of a variable by name; nullopt if the space has no such variable.
std::optional<VarIndex> variable_index(Space s, std::string_view name);

/// sum_v coeff(v) * v + constant, all coefficients polynomials in r.
class AffineForm {
public:
  explicit AffineForm(Space space = Space::Split) : space_(space) {}

  static AffineForm var(Space space, VarIndex v, PolyR coeff = PolyR(1));
  static AffineForm constant(Space space, PolyR c);

  Space space() const { return space_; }
  const PolyR &coeff(VarIndex v) const { return coeffs_.at(v); }
  const PolyR &constant_term() const { return constant_; }
  void set_coeff(VarIndex v, PolyR c) { coeffs_.at(v) = std::move(c); }
  void set_constant(PolyR c) { constant_ = std::move(c); }

  bool is_constant() const;

  AffineForm &operator+=(const AffineForm &o);
  AffineForm &operator-=(const AffineForm &o);
  AffineForm &operator*=(const PolyR &k);
  friend AffineForm operator+(AffineForm a, const AffineForm &b) { return a += b; }
  friend AffineForm operator-(AffineForm a, const AffineForm &b) { return a -= b; }
  friend AffineForm operator*(const PolyR &k, AffineForm a) { return a *= k; }
  friend AffineForm operator+(AffineForm a, const PolyR &c) { return a += constant(a.space(), c); }
  friend AffineForm operator-(AffineForm a, const PolyR &c) { return a -= constant(a.space(), c); }
  AffineForm operator-() const;

  friend bool operator==(const AffineForm &a, const AffineForm &b) {
    return a.space_ == b.space_ && a.coeffs_ == b.coeffs_ && a.constant_ == b.constant_;
  }
  friend bool operator!=(const AffineForm &a, const AffineForm &b) { return !(a == b); }

  /// e.g. "(r + 1)*d - r*g + (-r^2 - r)".
  std::string str() const;

private:
  void check_space(const AffineForm &o) const;

  Space space_;
  std::array<PolyR, kNumVars> coeffs_{};
  PolyR constant_{};
};

/// Integer assignment to the five variables of a space plus a concrete r.
struct ParamTuple {
  Space space = Space::Split;
  std::array<std::int64_t, kNumVars> values{};
  std::int64_t r = 3;

  ParamTuple() = default;
  ParamTuple(Space s, std::array<std::int64_t, kNumVars> v, std::int64_t r_value);

  static ParamTuple split(std::int64_t d, std::int64_t g, std::int64_t dp, std::int64_t gp,
                          std::int64_t n, std::int64_t r);
  static ParamTuple glue(std::int64_t d1, std::int64_t g1, std::int64_t d2, std::int64_t g2,
                         std::int64_t n);

  std::int64_t operator[](VarIndex v) const { return values.at(v); }
  std::int64_t n() const { return values[4]; }
  ParamTuple with(VarIndex v, std::int64_t value) const {
    ParamTuple t = *this;
    t.values.at(v) = value;
    return t;
  }

  friend bool operator==(const ParamTuple &, const ParamTuple &) = default;
  friend auto operator<=>(const ParamTuple &a, const ParamTuple &b) {
    if (auto c = a.r <=> b.r; c != 0) return c;
    return a.values <=> b.values;
  }

  std::string str() const;
};

/// Exact value of p at r.
Integer eval_poly(const PolyR &p, std::int64_t r);
/// Exact value of f at t. Throws SpaceMismatch if the spaces differ.
Integer eval_form(const AffineForm &f, const ParamTuple &t);

/// Image of every variable as an affine form over the same space.
class Substitution {
public:
  static Substitution identity(Space space);

  Space space() const { return space_; }
  const AffineForm &image(VarIndex v) const { return images_.at(v); }
  Substitution &set(VarIndex v, AffineForm image);
  /// v -> v + delta, with delta a polynomial in r.
  Substitution &shift(VarIndex v, const PolyR &delta);

  /// The tuple whose values are the images evaluated at t; r is kept.
  ParamTuple apply(const ParamTuple &t) const;

private:
  explicit Substitution(Space space);
  Space space_;
  std::array<AffineForm, kNumVars> images_;
};

AffineForm substitute(const AffineForm &f, const Substitution &s);
/// outer after inner: compose(outer, inner).apply(t) == outer.apply(inner.apply(t)).
Substitution compose(const Substitution &outer, const Substitution &inner);

/// "form >= 0" with a label naming where the inequality comes from.
struct Inequality {
  std::string label;
  AffineForm form;
  std::string note;  // short role description; empty for the plain system labels
};

/// Claimed derivation target = sum multiplier_i * hypothesis_i + slack.
struct ComboCertificate {
  std::string name;
  std::string target;
  std::vector<std::pair<std::string, PolyR>> terms;
  PolyR slack;
};

struct CheckResult {
  bool pass = false;
  /// target - sum multiplier_i * hypothesis_i; on a pass this is the constant slack.
  AffineForm residual;
  std::vector<std::string> problems;
};

/// Symbolic check of a combination certificate against the inequalities it names.
/// Throws UnknownLabel if the target or a term label is missing.
CheckResult combo_check(std::span<const Inequality> catalog, const ComboCertificate &cert,
                        long r_max = kDefaultRMax);

/// A form specialised to one r with machine-word coefficients, for the scanning hot paths.
/// Arithmetic is overflow-checked; std::overflow_error is thrown instead of wrapping.
class BoundForm {
public:
  BoundForm() = default;
  BoundForm(const AffineForm &f, std::int64_t r);

  std::int64_t eval(const std::array<std::int64_t, kNumVars> &values) const;
  std::int64_t eval(const ParamTuple &t) const { return eval(t.values); }
  std::int64_t coeff(VarIndex v) const { return coeffs_[v]; }
  std::int64_t constant_term() const { return constant_; }

private:
  std::array<std::int64_t, kNumVars> coeffs_{};
  std::int64_t constant_ = 0;
};

/// Narrowing of an exact integer; throws std::overflow_error if it does not fit.
std::int64_t to_int64(const Integer &x);

}  // namespace bncert
