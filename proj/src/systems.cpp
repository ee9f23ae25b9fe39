#include "bncert/systems.hpp"

namespace bncert {

std::string_view variant_name(Variant v) { return v == Variant::Main ? "MAIN" : "MAIN_P"; }

const std::vector<std::string> &variant_labels(Variant v) {
  return v == Variant::Main ? main_labels() : mainp_labels();
}

std::string_view base_class_name(BaseClass c) {
  switch (c) {
    case BaseClass::BaseRbn19: return "BASE_RBN_19";
    case BaseClass::BaseClassical: return "BASE_CLASSICAL";
    case BaseClass::Recursive: return "RECURSIVE";
  }
  return "?";
}

// ---- BoundCatalog ---------------------------------------------------------

BoundCatalog::BoundCatalog(std::shared_ptr<const InequalityCatalog> catalog, std::int64_t r)
    : catalog_(std::move(catalog)), r_(r) {
  for (const auto &q : catalog_->entries()) {
    ids_.emplace(q.label, forms_.size());
    // GLUE forms only make sense at r = 3; they are bound at 3 whatever r is.
    forms_.emplace_back(q.form, q.form.space() == Space::Glue ? 3 : r_);
  }
}

std::size_t BoundCatalog::id(const std::string &label) const {
  auto it = ids_.find(label);
  if (it == ids_.end()) throw UnknownLabel("no catalog inequality labelled '" + label + "'");
  return it->second;
}

std::int64_t BoundCatalog::evaluate(const std::string &label, const ParamTuple &t) const {
  if (auto it = catalog_->computed().find(label); it != catalog_->computed().end()) return it->second(t);
  return forms_[id(label)].eval(t);
}

// ---- reports ------------------------------------------------------------------

const LabelValue &CheckReport::at(const std::string &label) const {
  for (const auto &lv : labels)
    if (lv.label == label) return lv;
  throw UnknownLabel("label '" + label + "' not in report");
}

// ---- SystemEvaluator --------------------------------------------------------

SystemEvaluator::SystemEvaluator(const BoundCatalog &bound, Variant variant)
    : bound_(&bound), variant_(variant) {
  const auto &names = labels();
  for (std::size_t i = 0; i < names.size(); ++i) {
    ids_.push_back(bound.id(names[i]));
    if (is_n_dependent(names[i]))
      n_dependent_.push_back(i);
    else
      fixed_.push_back(i);
  }
}

bool SystemEvaluator::is_n_dependent(const std::string &label) const {
  return !bound_->catalog().lookup(label).form.coeff(split::n).is_zero();
}

CheckReport SystemEvaluator::check(const ParamTuple &t) const {
  if (t.space != Space::Split) throw SpaceMismatch("system check needs a SPLIT tuple");
  CheckReport rep;
  rep.variant = variant_;
  rep.tuple = t;
  rep.all_satisfied = true;
  const auto &names = labels();
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::int64_t v = bound_->eval(ids_[i], t);
    rep.labels.push_back({names[i], v, v >= 0});
    rep.all_satisfied = rep.all_satisfied && v >= 0;
  }
  return rep;
}

bool SystemEvaluator::fixed_part_holds(const ParamTuple &t) const {
  for (std::size_t i : fixed_)
    if (bound_->eval(ids_[i], t) < 0) return false;
  return true;
}

bool SystemEvaluator::n_part_holds(const ParamTuple &t) const {
  for (std::size_t i : n_dependent_)
    if (bound_->eval(ids_[i], t) < 0) return false;
  return true;
}

bool SystemEvaluator::satisfied(const ParamTuple &t) const { return fixed_part_holds(t) && n_part_holds(t); }

std::vector<std::string> SystemEvaluator::failing(const ParamTuple &t) const {
  std::vector<std::string> out;
  const auto &names = labels();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (bound_->eval(ids_[i], t) < 0) out.push_back(names[i]);
  return out;
}

std::optional<std::int64_t> SystemEvaluator::minimal_n(std::int64_t d, std::int64_t g, std::int64_t dp,
                                                       std::int64_t gp) const {
  ParamTuple t = ParamTuple::split(d, g, dp, gp, 1, r());
  if (!fixed_part_holds(t)) return std::nullopt;
  for (std::int64_t n = 1; n <= dp; ++n) {
    t.values[split::n] = n;
    if (n_part_holds(t)) return n;
  }
  return std::nullopt;
}

// ---- free functions -----------------------------------------------------------

CheckReport check_tuple(Variant variant, const ParamTuple &t, std::shared_ptr<const InequalityCatalog> catalog) {
  BoundCatalog bound(std::move(catalog), t.r);
  return SystemEvaluator(bound, variant).check(t);
}

std::optional<std::int64_t> minimal_n(Variant variant, std::int64_t d, std::int64_t g, std::int64_t dp,
                                      std::int64_t gp, std::int64_t r,
                                      std::shared_ptr<const InequalityCatalog> catalog) {
  if (r < 1) throw std::invalid_argument("minimal_n requires r >= 1");
  BoundCatalog bound(std::move(catalog), r);
  return SystemEvaluator(bound, variant).minimal_n(d, g, dp, gp);
}

BaseClass classify_base(Variant, const ParamTuple &t) {
  if (t.n() <= t.r + 2) return BaseClass::BaseRbn19;
  if (t.r <= 2) return BaseClass::BaseClassical;
  return BaseClass::Recursive;
}

}  // namespace bncert
