#pragma once

#include "bncert/catalog.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bncert {

/// Which of the two splitting systems: the unprimed labels (b)-(k) or the primed ones.
enum class Variant { Main, MainP };

std::string_view variant_name(Variant v);  // "MAIN" / "MAIN_P"
const std::vector<std::string> &variant_labels(Variant v);

/// Every form and computed check of a catalog, specialised to one r.
/// Evaluation is int64 with overflow detection, so values are exact or an exception is thrown.
class BoundCatalog {
public:
  BoundCatalog(std::shared_ptr<const InequalityCatalog> catalog, std::int64_t r);

  std::int64_t r() const { return r_; }
  const InequalityCatalog &catalog() const { return *catalog_; }
  const std::shared_ptr<const InequalityCatalog> &catalog_ptr() const { return catalog_; }

  /// Index of a label; throws UnknownLabel.
  std::size_t id(const std::string &label) const;
  const BoundForm &form(std::size_t id) const { return forms_.at(id); }
  std::int64_t eval(std::size_t id, const ParamTuple &t) const { return forms_.at(id).eval(t); }
  std::int64_t evaluate(const std::string &label, const ParamTuple &t) const;

private:
  std::shared_ptr<const InequalityCatalog> catalog_;
  std::int64_t r_;
  std::vector<BoundForm> forms_;
  std::map<std::string, std::size_t> ids_;
};

struct LabelValue {
  std::string label;
  std::int64_t value = 0;
  bool ok = false;
};

struct CheckReport {
  Variant variant = Variant::Main;
  ParamTuple tuple;
  std::vector<LabelValue> labels;
  bool all_satisfied = false;

  const LabelValue &at(const std::string &label) const;
};

/// One variant's system at a fixed r, split into n-independent and n-dependent labels.
class SystemEvaluator {
public:
  SystemEvaluator(const BoundCatalog &bound, Variant variant);

  Variant variant() const { return variant_; }
  std::int64_t r() const { return bound_->r(); }

  CheckReport check(const ParamTuple &t) const;
  bool satisfied(const ParamTuple &t) const;
  bool fixed_part_holds(const ParamTuple &t) const;
  bool n_part_holds(const ParamTuple &t) const;
  /// Labels (from the variant) that fail at t.
  std::vector<std::string> failing(const ParamTuple &t) const;
  std::optional<std::int64_t> minimal_n(std::int64_t d, std::int64_t g, std::int64_t dp,
                                        std::int64_t gp) const;

  const std::vector<std::string> &labels() const { return variant_labels(variant_); }
  bool is_n_dependent(const std::string &label) const;

private:
  const BoundCatalog *bound_;
  Variant variant_;
  std::vector<std::size_t> ids_;        // parallel to labels()
  std::vector<std::size_t> fixed_;      // positions of n-independent labels
  std::vector<std::size_t> n_dependent_;
};

/// Values of every label of the variant at t (t in SPLIT space).
CheckReport check_tuple(Variant variant, const ParamTuple &t,
                        std::shared_ptr<const InequalityCatalog> catalog = InequalityCatalog::standard());

/// Least n in [1, dp] satisfying the variant's n-dependent labels; nullopt when the
/// n-independent labels fail or no n in range works.
std::optional<std::int64_t> minimal_n(Variant variant, std::int64_t d, std::int64_t g, std::int64_t dp,
                                      std::int64_t gp, std::int64_t r,
                                      std::shared_ptr<const InequalityCatalog> catalog = InequalityCatalog::standard());

enum class BaseClass { BaseRbn19, BaseClassical, Recursive };
std::string_view base_class_name(BaseClass c);

/// Base case by n <= r + 2, then r <= 2; otherwise the inductive step applies.
BaseClass classify_base(Variant variant, const ParamTuple &t);

}  // namespace bncert
