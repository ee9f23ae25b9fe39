#pragma once

#include "bncert/forms.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace bncert {

class InvalidInstance : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Brill-Noether number (r + 1)d - rg - r(r + 1).
std::int64_t rho(std::int64_t d, std::int64_t g, std::int64_t r);

struct SplitComplement {
  std::int64_t dpp;
  std::int64_t gpp;
  friend bool operator==(const SplitComplement &, const SplitComplement &) = default;
};

/// Degree and genus of the component inside the hyperplane: (d - d', g + 1 - g' - n).
SplitComplement split_complement(std::int64_t d, std::int64_t g, std::int64_t dp, std::int64_t gp,
                                 std::int64_t n);

/// Two space curves of degree d_i and genus g_i glued at n general points (r = 3).
struct GlueInstance {
  std::int64_t d1 = 0, g1 = 0, d2 = 0, g2 = 0, n = 1;

  ParamTuple tuple() const { return ParamTuple::glue(d1, g1, d2, g2, n); }
  static GlueInstance from(const ParamTuple &t);
  GlueInstance swapped() const { return {d2, g2, d1, g1, n}; }
  std::int64_t rho1() const { return rho(d1, g1, 3); }
  std::int64_t rho2() const { return rho(d2, g2, 3); }

  friend bool operator==(const GlueInstance &, const GlueInstance &) = default;
  friend auto operator<=>(const GlueInstance &, const GlueInstance &) = default;
};

struct GluedCurve {
  std::int64_t d;
  std::int64_t g;
  friend bool operator==(const GluedCurve &, const GluedCurve &) = default;
};

/// (d1 + d2, g1 + g2 + n - 1). Throws InvalidInstance if n < 1.
GluedCurve glued_invariants(const GlueInstance &inst);

/// Degree/genus pairs whose n-point bound in P^3 is 9 instead of 2d.
inline constexpr std::array<std::pair<std::int64_t, std::int64_t>, 2> kP3Exceptions{{{5, 2}, {6, 4}}};

/// Largest n for which a general curve of this degree and genus in P^3 meets n general points
/// (ignores the sign of rho).
std::int64_t p3_point_bound(std::int64_t d, std::int64_t g);
/// Whether a nondegenerate (d, g) curve of general moduli in P^3 passes through n general points.
bool p3_through_points(std::int64_t d, std::int64_t g, std::int64_t n);
/// min(4d - 3g - 12, bound - n): nonnegative exactly when p3_through_points holds.
std::int64_t p3_point_slack(std::int64_t d, std::int64_t g, std::int64_t n);

/// Non-affine GLUE checks (max, point-passing predicates) are evaluated by function.
using ComputedCheck = std::function<std::int64_t(const ParamTuple &)>;

class InequalityCatalog {
public:
  /// The full labelled library (see catalog.cpp for the entries).
  static std::shared_ptr<const InequalityCatalog> standard();
  static InequalityCatalog build();

  const std::vector<Inequality> &entries() const { return entries_; }
  bool contains(const std::string &label) const;
  const Inequality &lookup(const std::string &label) const;
  /// Affine form or computed check, evaluated exactly at t.
  Integer evaluate(const std::string &label, const ParamTuple &t) const;
  bool is_computed(const std::string &label) const { return computed_.contains(label); }
  const std::map<std::string, ComputedCheck> &computed() const { return computed_; }

  const std::map<std::string, Substitution> &substitutions() const { return substitutions_; }
  const Substitution &substitution(const std::string &name) const;
  const std::vector<ComboCertificate> &combos() const { return combos_; }

  /// Smallest r at which a label is meaningful (1 unless stated).
  std::int64_t min_r(const std::string &label) const;

  // Mutation hooks, used by the audit self-tests.
  void replace(const std::string &label, AffineForm form);
  void remove(const std::string &label);

private:
  void add(std::string label, AffineForm form, std::string note = {});
  void add_computed(std::string label, ComputedCheck fn);

  std::vector<Inequality> entries_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, ComputedCheck> computed_;
  std::map<std::string, Substitution> substitutions_;
  std::vector<ComboCertificate> combos_;
  std::map<std::string, std::int64_t> min_r_;
};

/// Labels of the two theorem systems, in display order.
const std::vector<std::string> &main_labels();
const std::vector<std::string> &mainp_labels();

/// rho(D, G, R) as an affine form when D, G are forms and R a polynomial in r.
AffineForm rho_form(const AffineForm &degree, const AffineForm &genus, const PolyR &dim);

}  // namespace bncert
