#include "bncert/catalog.hpp"

#include <algorithm>

namespace bncert {

namespace {

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("int64 overflow in rho");
  return out;
}

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("int64 overflow in rho");
  return out;
}

}  // namespace

std::int64_t rho(std::int64_t d, std::int64_t g, std::int64_t r) {
  return add(add(mul(r + 1, d), -mul(r, g)), -mul(r, r + 1));
}

SplitComplement split_complement(std::int64_t d, std::int64_t g, std::int64_t dp, std::int64_t gp,
                                 std::int64_t n) {
  return {d - dp, g + 1 - gp - n};
}

GlueInstance GlueInstance::from(const ParamTuple &t) {
  if (t.space != Space::Glue) throw SpaceMismatch("glue instance from a non-GLUE tuple");
  return {t[glue::d1], t[glue::g1], t[glue::d2], t[glue::g2], t[glue::n]};
}

GluedCurve glued_invariants(const GlueInstance &inst) {
  if (inst.n < 1) throw InvalidInstance("glued curve needs n >= 1 gluing points");
  return {inst.d1 + inst.d2, inst.g1 + inst.g2 + inst.n - 1};
}

std::int64_t p3_point_bound(std::int64_t d, std::int64_t g) {
  for (const auto &[ed, eg] : kP3Exceptions)
    if (d == ed && g == eg) return 9;
  return 2 * d;
}

bool p3_through_points(std::int64_t d, std::int64_t g, std::int64_t n) {
  return rho(d, g, 3) >= 0 && n <= p3_point_bound(d, g);
}

std::int64_t p3_point_slack(std::int64_t d, std::int64_t g, std::int64_t n) {
  return std::min(rho(d, g, 3), p3_point_bound(d, g) - n);
}

AffineForm rho_form(const AffineForm &degree, const AffineForm &genus, const PolyR &dim) {
  return (dim + PolyR(1)) * degree - dim * genus - AffineForm::constant(degree.space(), dim * (dim + PolyR(1)));
}

const std::vector<std::string> &main_labels() {
  static const std::vector<std::string> labels{"b", "c", "d", "e", "f", "g", "h", "i", "j", "k"};
  return labels;
}

const std::vector<std::string> &mainp_labels() {
  static const std::vector<std::string> labels{"b'", "c'", "d'", "e'", "f'", "g'", "h'", "i'", "j'", "k'"};
  return labels;
}

// ---- catalog ----------------------------------------------------------------

void InequalityCatalog::add(std::string label, AffineForm form, std::string note) {
  if (index_.contains(label) || computed_.contains(label))
    throw std::logic_error("duplicate catalog label " + label);
  index_.emplace(label, entries_.size());
  entries_.push_back({std::move(label), std::move(form), std::move(note)});
}

void InequalityCatalog::add_computed(std::string label, ComputedCheck fn) {
  if (index_.contains(label) || computed_.contains(label))
    throw std::logic_error("duplicate catalog label " + label);
  computed_.emplace(std::move(label), std::move(fn));
}

bool InequalityCatalog::contains(const std::string &label) const {
  return index_.contains(label) || computed_.contains(label);
}

const Inequality &InequalityCatalog::lookup(const std::string &label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw UnknownLabel("no catalog inequality labelled '" + label + "'");
  return entries_[it->second];
}

Integer InequalityCatalog::evaluate(const std::string &label, const ParamTuple &t) const {
  if (auto it = computed_.find(label); it != computed_.end())
    return Integer(static_cast<long>(it->second(t)));
  return eval_form(lookup(label).form, t);
}

const Substitution &InequalityCatalog::substitution(const std::string &name) const {
  auto it = substitutions_.find(name);
  if (it == substitutions_.end()) throw UnknownLabel("no catalog substitution named '" + name + "'");
  return it->second;
}

std::int64_t InequalityCatalog::min_r(const std::string &label) const {
  auto it = min_r_.find(label);
  return it == min_r_.end() ? 1 : it->second;
}

void InequalityCatalog::replace(const std::string &label, AffineForm form) {
  auto it = index_.find(label);
  if (it == index_.end()) throw UnknownLabel("no catalog inequality labelled '" + label + "'");
  entries_[it->second].form = std::move(form);
}

void InequalityCatalog::remove(const std::string &label) {
  auto it = index_.find(label);
  if (it == index_.end()) throw UnknownLabel("no catalog inequality labelled '" + label + "'");
  entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(it->second));
  index_.clear();
  for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].label, i);
}

std::shared_ptr<const InequalityCatalog> InequalityCatalog::standard() {
  static const auto cat = std::make_shared<const InequalityCatalog>(build());
  return cat;
}

InequalityCatalog InequalityCatalog::build() {
  InequalityCatalog cat;
  const PolyR r = PolyR::r();
  const PolyR one(1);

  // SPLIT space: d, g, d', g', n.
  const Space S = Space::Split;
  const AffineForm d = AffineForm::var(S, split::d);
  const AffineForm g = AffineForm::var(S, split::g);
  const AffineForm dp = AffineForm::var(S, split::dp);
  const AffineForm gp = AffineForm::var(S, split::gp);
  const AffineForm n = AffineForm::var(S, split::n);
  auto k_ = [&](const PolyR &c) { return AffineForm::constant(S, c); };

  // Degree and genus of the hyperplane component.
  const AffineForm dpp = d - dp;
  const AffineForm gpp = g + one - gp - n;
  const PolyR r_minus_2_sq = (r - PolyR(2)) * (r - PolyR(2));
  const PolyR ibe_const = PolyR{-9, 3, -2};  // -2r^2 + 3r - 9

  // Theorem system for the splitting (d, g, d', g') at n points.
  cat.add("b", gp);
  cat.add("c", (r + one) * d - r * g - k_(r * r + r));
  cat.add("d", (r + one) * dp - r * gp - k_(r * r + r));
  cat.add("e", (PolyR(2) * r - PolyR(3)) * dp - r_minus_2_sq * (gp - dp + n) + ibe_const);
  cat.add("f", g - gp - n + one);
  cat.add("g", r * (d - dp) - (r - one) * (g - gp) + (r - one) * n - k_(r * r) + one);
  cat.add("h", n - one);
  cat.add("i", dp - n);
  cat.add("j", r * (d - dp) - (PolyR(r) - PolyR(4)) * (g - gp) - PolyR(2) * n - k_(PolyR(2) * r) + PolyR(2));
  cat.add("k", PolyR(2) * n + d + gp - dp - g - k_(r) - PolyR(2));

  // The primed variant.
  cat.add("b'", gp);
  cat.add("c'", (r + one) * d - r * g - k_(r * r + r));
  cat.add("d'", (r + one) * dp - r * gp - k_(r * r + r));
  cat.add("e'", (PolyR(2) * r - PolyR(3)) * (dp + one) - r_minus_2_sq * (gp - dp + n) + ibe_const);
  cat.add("f'", g - gp - n);
  cat.add("g'", r * (d - dp) - (r - one) * (g - gp) + (r - one) * n - k_(r * r));
  cat.add("h'", n - one);
  cat.add("i'", dp - n);
  cat.add("j'", r * (d - dp) - (r - PolyR(4)) * (g - gp) - PolyR(2) * n - k_(PolyR(2) * r) - PolyR(2));
  cat.add("k'", PolyR(2) * n + d + gp - dp - g - k_(r) - PolyR(2));

  // Interpolation and smoothing criteria.
  cat.add("cC", (PolyR(2) * r - PolyR(3)) * (dp + one) - r_minus_2_sq * (gp - dp + n) + ibe_const,
          "hyperplane section of the transverse component meets n general points");
  cat.add("nC", PolyR(2) * n + d + gp - dp - g - k_(r) - one, "smoothing criterion n + d'' - g'' - r >= 0");
  cat.add("rem", (PolyR(2) * r - PolyR(3)) * (dp + one) - r_minus_2_sq * gp + ibe_const,
          "general hyperplane section; informational, r >= 4");
  cat.min_r_["rem"] = 4;

  // Standing assumptions of the inductive step.
  cat.add("r3", k_(r - PolyR(3)), "r >= 3");
  cat.add("nr3", n - k_(r + PolyR(3)), "n >= r + 3");

  // Derived facts used by the reductions.
  cat.add("for62", (dpp - one) - (gpp - one) + (n - PolyR(2)) - k_(r - one),
          "(d''-1) - (g''-1) + (n-2) >= r - 1");
  cat.add("btf", gpp - r * (n - PolyR(3)), "g'' >= r(n - 3)");
  cat.add("btff", gpp - k_(r), "g'' >= r");
  cat.add("btj", r * (d - dp) - (r - PolyR(4)) * (g - gp) - PolyR(2) * n - k_(PolyR(4) * r),
          "interpolation for the degree d''-r+1 component through n-1 points");
  cat.add("for62ii", (dpp - k_(r) + one) - (gpp - k_(r)) + (n - one) - k_(r + one),
          "(d''-r+1) - (g''-r) + (n-1) >= r + 1");
  cat.add("otd", rho_form(dp - one, gp, r), "rho(d' - 1, g', r) >= 0");

  // Side-check labels emitted by the reduction engine.
  Substitution prev = Substitution::identity(S);
  prev.shift(split::n, PolyR(-1));
  const AffineForm k_prev = substitute(cat.lookup("k").form, prev);
  const AffineForm g_prev = substitute(cat.lookup("g").form, prev);

  cat.add("case1-neg", -k_prev - one, "(k) fails at n - 1");
  cat.add("case1-rho", rho_form(dpp - k_(r) + one, gpp - k_(r), r - one), "rho(d''-r+1, g''-r, r-1) >= 0");
  cat.add("case1-pts", (n - one) - k_(r + one), "r + 1 <= n - 1");
  cat.add("case2-neg", -g_prev - one, "(g) fails at n - 1");
  cat.add("case2-k", k_prev, "(k) holds at n - 1");
  {
    Substitution s = Substitution::identity(S);
    s.shift(split::dp, PolyR(-1)).shift(split::n, PolyR(-1));
    cat.add("case2-interp", substitute(cat.lookup("cC").form, s),
            "hyperplane section of the degree d'-1 component meets n - 1 general points");
  }
  cat.add("case2-pts", (n - PolyR(2)) - one, "n - 2 >= 1");
  cat.add("shift-gpp", gpp - one, "g'' - 1 >= 0");
  cat.add("shift-rho", rho_form(dpp - one, gpp - one, r - one), "rho(d''-1, g''-1, r-1) >= 0");
  cat.add("shift-interp",
          r * (dpp - one) - (r - PolyR(4)) * (gpp - PolyR(2)) - k_(PolyR(2) * r) + PolyR(2) - (r - PolyR(2)) * n,
          "degree d''-1 genus g''-1 component meets n general points");
  cat.add("base-rbn19", k_(r + PolyR(2)) - n, "n <= r + 2");
  cat.add("base-classical", k_(PolyR(2) - r), "r <= 2");

  // GLUE space: two space curves, r fixed to 3.
  const Space G = Space::Glue;
  const AffineForm d1 = AffineForm::var(G, glue::d1);
  const AffineForm g1 = AffineForm::var(G, glue::g1);
  const AffineForm d2 = AffineForm::var(G, glue::d2);
  const AffineForm g2 = AffineForm::var(G, glue::g2);
  const AffineForm gn = AffineForm::var(G, glue::n);
  const PolyR three(3);
  auto c_ = [&](long c) { return AffineForm::constant(G, PolyR(c)); };
  const AffineForm rho1 = rho_form(d1, g1, three);
  const AffineForm rho2 = rho_form(d2, g2, three);

  cat.add("rho1", rho1, "rho(d1, g1, 3) >= 0");
  cat.add("rho2", rho2, "rho(d2, g2, 3) >= 0");
  cat.add("glue-n", gn - PolyR(1), "n >= 1");
  cat.add("n-upper", rho1 + rho2 + PolyR(15) - PolyR(3) * gn, "n <= (rho1 + rho2 + 15)/3");
  cat.add("r3a-rho1", rho_form(d1 - PolyR(1), g1, three), "rho(d1 - 1, g1, 3) >= 0");
  cat.add("r3b-rho2-lower", rho2 - (PolyR(3) * gn - c_(15) - rho1), "rho2 >= 3n - 15 - rho1");
  cat.add("r3b-rho2-4", rho2 - PolyR(4), "rho2 >= 4");
  cat.add("r3b-n-d2", PolyR(2) * d2 - PolyR(1) - gn, "n <= 2 d2 - 1");
  cat.add("r3c-d1", d1 - PolyR(4), "d1 >= 4");
  cat.add("r3c-g1", g1 - PolyR(1), "g1 >= 1");
  cat.add("r3c-rho", rho_form(d1 - PolyR(1), g1 - PolyR(1), three), "rho(d1 - 1, g1 - 1, 3) >= 0");
  cat.add("r3c-rho-order", rho2 - rho1, "rho1 <= rho2 after ordering");
  cat.add("r3c-rho2-3", c_(3) - rho2, "rho2 <= 3");
  cat.add("rho0", -rho1, "rho1 = 0 (with rho1 >= 0)");

  using P = const ParamTuple &;
  cat.add_computed("pts1", [](P t) { return p3_point_slack(t[glue::d1], t[glue::g1], t[glue::n]); });
  cat.add_computed("pts2", [](P t) { return p3_point_slack(t[glue::d2], t[glue::g2], t[glue::n]); });
  cat.add_computed("not-excluded", [](P t) {
    return (t[glue::n] == 2 * t[glue::d1] && t[glue::n] == 2 * t[glue::d2]) ? -1 : 0;
  });
  cat.add_computed("r3a-rho2-max", [](P t) {
    const auto r1 = rho(t[glue::d1], t[glue::g1], 3);
    return std::max(r1, 4 * t[glue::d1] - 16) - rho(t[glue::d2], t[glue::g2], 3);
  });
  cat.add_computed("r3a-pts-prev", [](P t) { return p3_point_slack(t[glue::d1] - 1, t[glue::g1], t[glue::n] - 1); });
  cat.add_computed("r3c-n7", [](P t) {
    const bool rho_is_3 = rho(t[glue::d1], t[glue::g1], 3) == 3;
    return (rho_is_3 ? 7 : 6) - t[glue::n];
  });
  cat.add_computed("r3c-pts", [](P t) { return p3_point_slack(t[glue::d1] - 1, t[glue::g1] - 1, t[glue::n]); });

  // Parameter changes of the reductions.
  {
    Substitution s = Substitution::identity(S);
    s.shift(split::dp, one).shift(split::gp, one);
    cat.substitutions_.emplace("sub-shift", s);
  }
  {
    Substitution s = Substitution::identity(S);
    s.shift(split::d, -r + one).shift(split::g, -r - one).shift(split::n, PolyR(-1));
    cat.substitutions_.emplace("sub-case1", s);
  }
  {
    Substitution s = Substitution::identity(S);
    s.shift(split::dp, PolyR(-1)).shift(split::n, PolyR(-1));
    cat.substitutions_.emplace("sub-case2", s);
  }
  cat.substitutions_.emplace("n-1", prev);
  {
    Substitution s = Substitution::identity(G);
    s.shift(glue::d1, PolyR(-1)).shift(glue::d2, PolyR(1)).shift(glue::g2, PolyR(1)).shift(glue::n, PolyR(-1));
    cat.substitutions_.emplace("sub-r3a", s);
  }
  {
    Substitution s = Substitution::identity(G);
    s.shift(glue::d1, PolyR(-1)).shift(glue::g1, PolyR(-1)).shift(glue::d2, PolyR(1)).shift(glue::g2, PolyR(1));
    cat.substitutions_.emplace("sub-r3c", s);
  }
  {
    Substitution s = Substitution::identity(G);
    s.set(glue::d1, d2).set(glue::g1, g2).set(glue::d2, d1).set(glue::g2, g1);
    cat.substitutions_.emplace("swap", s);
  }

  // Combination certificates, as the derivations are stated.
  const PolyR zero;
  cat.combos_ = {
      {"btf", "btf", {{"g", one}, {"case1-neg", r}}, zero},
      {"btff", "btff", {{"btf", one}, {"nr3", r}}, r * r - r},
      {"btj", "btj", {{"g", one}, {"btf", PolyR(3)}, {"nr3", PolyR(2) * r + PolyR(2)}}, PolyR{2, -5, 3}},
      {"otd", "otd", {{"c", r}, {"f", one}, {"case2-neg", r + one}}, r + PolyR(2)},
      {"for62", "for62", {{"k'", one}}, zero},
      {"for62ii", "for62ii", {{"k", one}}, zero},
      {"case1-rho", "case1-rho", {{"g", one}}, zero},
      {"case1-pts", "case1-pts", {{"nr3", one}}, one},
      {"case2-interp", "case2-interp", {{"e", one}}, zero},
      {"case2-pts", "case2-pts", {{"nr3", one}}, r},
      {"shift-gpp", "shift-gpp", {{"f'", one}}, zero},
      {"shift-rho", "shift-rho", {{"g'", one}}, zero},
      {"shift-interp", "shift-interp", {{"j'", one}}, zero},
      {"r3b-rho2-lower", "r3b-rho2-lower", {{"n-upper", one}}, zero},
  };
  return cat;
}

}  // namespace bncert
