#include "bncert/engine.hpp"

#include <algorithm>
#include <sstream>

namespace bncert {

std::string_view theorem_name(Theorem t) {
  switch (t) {
    case Theorem::Main: return "MAIN";
    case Theorem::MainP: return "MAIN_P";
    case Theorem::R3: return "R3";
  }
  return "?";
}

std::string_view case_name(CaseTag c) {
  switch (c) {
    case CaseTag::Shift: return "SEC2";
    case CaseTag::Case1: return "CASE1";
    case CaseTag::Case2: return "CASE2";
    case CaseTag::R3A: return "R3_A";
    case CaseTag::R3B: return "R3_B";
    case CaseTag::R3C: return "R3_C";
    case CaseTag::LeafRbn16: return "LEAF_RBN16";
    case CaseTag::LeafRbn19: return "LEAF_RBN19";
    case CaseTag::LeafClassical: return "LEAF_CLASSICAL";
    case CaseTag::LeafR3Rho0: return "LEAF_R3_RHO0";
  }
  return "?";
}

bool is_leaf_tag(CaseTag c) {
  return c == CaseTag::LeafRbn16 || c == CaseTag::LeafRbn19 || c == CaseTag::LeafClassical ||
         c == CaseTag::LeafR3Rho0;
}

std::string_view error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotFeasible: return "NotFeasible";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ProofGap: return "ProofGap";
    case ErrorKind::DichotomyViolation: return "DichotomyViolation";
    case ErrorKind::ExcludedCase: return "ExcludedCase";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
  }
  return "?";
}

EngineError::EngineError(ErrorKind kind, ParamTuple tuple, const std::string &what)
    : std::runtime_error(std::string(error_kind_name(kind)) + " at " + tuple.str() + ": " + what),
      kind_(kind),
      tuple_(tuple) {}

std::size_t CertNode::depth() const {
  std::size_t deepest = 0;
  for (const auto &c : children) deepest = std::max(deepest, c.depth());
  return deepest + 1;
}

std::size_t CertNode::size() const {
  std::size_t total = 1;
  for (const auto &c : children) total += c.size();
  return total;
}

std::size_t CertNode::flag_count() const {
  std::size_t total = flags.size();
  for (const auto &c : children) total += c.flag_count();
  return total;
}

Measure measure(const CertNode &node) {
  if (node.case_tag == CaseTag::LeafRbn16) return {true, 0, 0, 0};
  switch (node.theorem) {
    case Theorem::Main: return {false, node.n(), 0, 0};
    case Theorem::MainP: return {false, node.n(), 1, 0};
    case Theorem::R3: {
      const auto inst = GlueInstance::from(node.tuple);
      return {false, node.n(), std::min(inst.rho1(), inst.rho2()), node.case_tag == CaseTag::R3B ? 1 : 0};
    }
  }
  return {};
}

// ---- SPLIT reductions ---------------------------------------------------------

EngineContext::EngineContext(std::int64_t r, std::shared_ptr<const InequalityCatalog> catalog)
    : bound_(std::move(catalog), r), main_(bound_, Variant::Main), mainp_(bound_, Variant::MainP) {}

namespace {

Variant variant_of(Theorem t) {
  if (t == Theorem::R3) throw std::invalid_argument("R3 instances are certified by certify_r3");
  return t == Theorem::Main ? Variant::Main : Variant::MainP;
}

std::vector<SideCheck> evaluate_checks(const BoundCatalog &bound, const ParamTuple &t,
                                       std::initializer_list<const char *> labels) {
  std::vector<SideCheck> out;
  out.reserve(labels.size());
  for (const char *label : labels) {
    const std::int64_t v = bound.evaluate(label, t);
    out.push_back({label, v, v >= 0});
  }
  return out;
}

void require_inductive_step(const ParamTuple &t, const EngineContext &ctx, Variant v) {
  if (t.r < 3) throw EngineError(ErrorKind::PreconditionViolated, t, "inductive step needs r >= 3");
  if (t.n() < t.r + 3) throw EngineError(ErrorKind::PreconditionViolated, t, "inductive step needs n >= r + 3");
  const auto &sys = ctx.system(v);
  if (!sys.satisfied(t))
    throw EngineError(ErrorKind::PreconditionViolated, t, std::string("tuple does not satisfy ") +
                                                              std::string(variant_name(v)));
  const auto least = sys.minimal_n(t[split::d], t[split::g], t[split::dp], t[split::gp]);
  if (least != t.n()) throw EngineError(ErrorKind::PreconditionViolated, t, "n is not minimal");
}

void require_side_checks(const ParamTuple &t, const std::vector<SideCheck> &checks) {
  for (const auto &c : checks)
    if (!c.ok)
      throw EngineError(ErrorKind::ProofGap, t, "side check " + c.label + " = " + std::to_string(c.value));
}

// The child must satisfy its system with exactly the claimed minimal n.
void require_child(const ParamTuple &parent, const ParamTuple &child, Variant v, const EngineContext &ctx) {
  const auto &sys = ctx.system(v);
  if (!sys.satisfied(child)) {
    std::string failed;
    for (const auto &l : sys.failing(child)) failed += " " + l;
    throw EngineError(ErrorKind::ProofGap, parent,
                      "child " + child.str() + " fails " + std::string(variant_name(v)) + ":" + failed);
  }
  const auto least = sys.minimal_n(child[split::d], child[split::g], child[split::dp], child[split::gp]);
  if (least != child.n())
    throw EngineError(ErrorKind::ProofGap, parent, "child " + child.str() + " has smaller minimal n " +
                                                       std::to_string(least.value_or(-1)));
}

}  // namespace

Reduction reduce_mainp(const ParamTuple &t, const EngineContext &ctx) {
  require_inductive_step(t, ctx, Variant::MainP);
  Reduction red{CaseTag::Shift,
                evaluate_checks(ctx.bound(), t, {"r3", "nr3", "shift-gpp", "shift-rho", "shift-interp", "for62"}),
                ctx.catalog().substitution("sub-shift").apply(t), Theorem::Main};
  require_side_checks(t, red.side_checks);
  require_child(t, red.child, Variant::Main, ctx);
  return red;
}

Reduction reduce_main(const ParamTuple &t, const EngineContext &ctx) {
  require_inductive_step(t, ctx, Variant::Main);
  const ParamTuple prev = t.with(split::n, t.n() - 1);
  const auto failing = ctx.system(Variant::Main).failing(prev);
  if (failing.empty())
    throw EngineError(ErrorKind::DichotomyViolation, t, "no label fails at n - 1 although n is minimal");
  for (const auto &l : failing)
    if (l != "g" && l != "k")
      throw EngineError(ErrorKind::DichotomyViolation, t, "label " + l + " fails at n - 1");

  Reduction red{};
  if (std::find(failing.begin(), failing.end(), "k") != failing.end()) {
    red.case_tag = CaseTag::Case1;
    red.side_checks = evaluate_checks(
        ctx.bound(), t, {"r3", "nr3", "case1-neg", "btf", "btff", "case1-rho", "btj", "case1-pts", "for62ii"});
    red.child = ctx.catalog().substitution("sub-case1").apply(t);
    red.child_theorem = Theorem::Main;
  } else {
    red.case_tag = CaseTag::Case2;
    red.side_checks = evaluate_checks(ctx.bound(), t,
                                      {"r3", "nr3", "case2-neg", "case2-k", "otd", "case2-interp", "case2-pts"});
    red.child = ctx.catalog().substitution("sub-case2").apply(t);
    red.child_theorem = Theorem::MainP;
  }
  require_side_checks(t, red.side_checks);
  require_child(t, red.child, variant_of(red.child_theorem), ctx);
  return red;
}

namespace {

CertNode split_node(Theorem theorem, const ParamTuple &t, const EngineContext &ctx, std::size_t depth,
                    std::size_t limit) {
  if (depth > limit) throw EngineError(ErrorKind::DepthExceeded, t, "recursion depth guard exceeded");
  const Variant v = variant_of(theorem);
  CertNode node;
  node.theorem = theorem;
  node.tuple = t;
  for (const auto &lv : ctx.system(v).check(t).labels) node.side_checks.push_back({lv.label, lv.value, lv.ok});

  switch (classify_base(v, t)) {
    case BaseClass::BaseRbn19:
      node.case_tag = CaseTag::LeafRbn19;
      for (auto &c : evaluate_checks(ctx.bound(), t, {"base-rbn19"})) node.side_checks.push_back(c);
      return node;
    case BaseClass::BaseClassical:
      node.case_tag = CaseTag::LeafClassical;
      for (auto &c : evaluate_checks(ctx.bound(), t, {"base-classical"})) node.side_checks.push_back(c);
      return node;
    case BaseClass::Recursive: break;
  }

  Reduction red = theorem == Theorem::Main ? reduce_main(t, ctx) : reduce_mainp(t, ctx);
  node.case_tag = red.case_tag;
  for (auto &c : red.side_checks) node.side_checks.push_back(std::move(c));
  node.children.push_back(split_node(red.child_theorem, red.child, ctx, depth + 1, limit));
  return node;
}

}  // namespace

CertNode certify(Theorem theorem, std::int64_t d, std::int64_t g, std::int64_t dp, std::int64_t gp,
                 const EngineContext &ctx) {
  const Variant v = variant_of(theorem);
  const auto n = ctx.system(v).minimal_n(d, g, dp, gp);
  if (!n)
    throw EngineError(ErrorKind::NotFeasible, ParamTuple::split(d, g, dp, gp, 0, ctx.r()),
                      std::string("no n satisfies ") + std::string(variant_name(v)));
  const ParamTuple root = ParamTuple::split(d, g, dp, gp, *n, ctx.r());
  // Each unit of n costs at most two levels (MAIN_P -> MAIN at equal n).
  const auto limit = static_cast<std::size_t>(2 * *n + 16);
  return split_node(theorem, root, ctx, 1, limit);
}

CertNode certify(Theorem theorem, std::int64_t d, std::int64_t g, std::int64_t dp, std::int64_t gp,
                 std::int64_t r) {
  if (r < 1) throw std::invalid_argument("certify requires r >= 1");
  EngineContext ctx(r);
  return certify(theorem, d, g, dp, gp, ctx);
}

// ---- the gluing theorem in P^3 --------------------------------------------------

std::vector<std::string> glue_hypothesis_failures(const GlueInstance &inst) {
  std::vector<std::string> out;
  if (inst.n < 1) out.emplace_back("glue-n");
  if (inst.d1 < 1 || inst.rho1() < 0) out.emplace_back("rho1");
  if (inst.d2 < 1 || inst.rho2() < 0) out.emplace_back("rho2");
  if (!p3_through_points(inst.d1, inst.g1, inst.n)) out.emplace_back("pts1");
  if (!p3_through_points(inst.d2, inst.g2, inst.n)) out.emplace_back("pts2");
  if (inst.n >= 1) {
    const auto glued = glued_invariants(inst);
    if (rho(glued.d, glued.g, 3) < 0) out.emplace_back("n-upper");
  }
  if (inst.n == 2 * inst.d1 && inst.n == 2 * inst.d2) out.emplace_back("not-excluded");
  return out;
}

namespace {

bool prefer_first(const GlueInstance &x) {
  return x.d1 > x.d2 || (x.d1 == x.d2 && x.g1 <= x.g2);
}

}  // namespace

R3Dispatch dispatch_r3(const GlueInstance &inst) {
  if (inst.n == 2 * inst.d1 && inst.n == 2 * inst.d2)
    throw EngineError(ErrorKind::ExcludedCase, inst.tuple(), "excluded case n = 2d1 = 2d2");
  if (auto failed = glue_hypothesis_failures(inst); !failed.empty()) {
    std::string msg = "hypotheses fail:";
    for (const auto &f : failed) msg += " " + f;
    throw EngineError(ErrorKind::HypothesisViolated, inst.tuple(), msg);
  }

  const auto r1 = inst.rho1(), r2 = inst.rho2();
  const bool a1 = r1 >= 4 && inst.n <= 2 * inst.d1 - 1;
  const bool a2 = r2 >= 4 && inst.n <= 2 * inst.d2 - 1;
  auto oriented = [&](CaseTag tag, bool swap) {
    return R3Dispatch{tag, swap ? inst.swapped() : inst, swap};
  };

  if (a1 && a2) return oriented(CaseTag::R3A, !prefer_first(inst));
  if (a1 || a2) return oriented(CaseTag::R3A, a2);
  if (r1 >= 4 || r2 >= 4) return oriented(CaseTag::R3B, r1 < 4);
  // Both rho <= 3: smaller rho first, then the degree/genus preference.
  if (r1 != r2) return oriented(CaseTag::R3C, r1 > r2);
  return oriented(CaseTag::R3C, !prefer_first(inst));
}

namespace {

std::string describe(const GlueInstance &g) {
  std::ostringstream os;
  os << "(" << g.d1 << ", " << g.g1 << ", " << g.d2 << ", " << g.g2 << ", n=" << g.n << ")";
  return os.str();
}

const BoundCatalog &glue_bound(const std::shared_ptr<const InequalityCatalog> &catalog,
                               std::optional<BoundCatalog> &storage) {
  static const BoundCatalog standard(InequalityCatalog::standard(), 3);
  if (catalog == InequalityCatalog::standard()) return standard;
  if (!storage) storage.emplace(catalog, 3);
  return *storage;
}

R3Reduction reduce_r3_bound(const GlueInstance &inst, const BoundCatalog &bound) {
  R3Reduction red;
  red.dispatch = dispatch_r3(inst);
  const GlueInstance &x = red.dispatch.instance;
  const ParamTuple t = x.tuple();

  red.side_checks =
      evaluate_checks(bound, t, {"glue-n", "rho1", "rho2", "pts1", "pts2", "n-upper", "not-excluded"});
  auto add = [&](std::initializer_list<const char *> labels) {
    for (auto &c : evaluate_checks(bound, t, labels)) red.side_checks.push_back(std::move(c));
  };
  const GlueInstance line_and_c2{1, 0, x.d2, x.g2, 2};

  switch (red.dispatch.case_tag) {
    case CaseTag::R3A:
      add({"r3a-rho1", "r3a-rho2-max", "r3a-pts-prev"});
      red.children.push_back(GlueInstance::from(bound.catalog().substitution("sub-r3a").apply(t)));
      red.axiom_leaf = line_and_c2;
      break;
    case CaseTag::R3B:
      add({"r3b-rho2-lower", "r3b-rho2-4", "r3b-n-d2"});
      red.children.push_back(x.swapped());
      break;
    case CaseTag::R3C:
      add({"r3c-rho-order", "r3c-rho2-3"});
      if (x.rho1() == 0) {
        red.dispatch.case_tag = CaseTag::LeafR3Rho0;
        add({"rho0"});
        break;
      }
      add({"r3c-d1", "r3c-g1", "r3c-n7", "r3c-rho", "r3c-pts"});
      red.children.push_back(GlueInstance::from(bound.catalog().substitution("sub-r3c").apply(t)));
      red.axiom_leaf = line_and_c2;
      break;
    default: break;
  }
  for (const auto &c : red.side_checks)
    if (!c.ok) red.flags.push_back("side check " + c.label + " fails with value " + std::to_string(c.value));
  return red;
}

CertNode axiom_leaf_node(const GlueInstance &leaf, const BoundCatalog &bound) {
  CertNode node;
  node.theorem = Theorem::R3;
  node.tuple = leaf.tuple();
  node.case_tag = CaseTag::LeafRbn16;
  node.side_checks = evaluate_checks(bound, node.tuple, {"n-upper", "pts2"});
  for (const auto &c : node.side_checks)
    if (!c.ok) node.flags.push_back("axiom hypothesis " + c.label + " fails with value " + std::to_string(c.value));
  return node;
}

CertNode r3_node(const GlueInstance &inst, const BoundCatalog &bound, std::size_t depth, std::size_t limit) {
  if (depth > limit) throw EngineError(ErrorKind::DepthExceeded, inst.tuple(), "recursion depth guard exceeded");
  R3Reduction red = reduce_r3_bound(inst, bound);

  CertNode node;
  node.theorem = Theorem::R3;
  node.tuple = red.dispatch.instance.tuple();
  node.case_tag = red.dispatch.case_tag;
  node.swapped = red.dispatch.swapped;
  node.side_checks = std::move(red.side_checks);
  node.flags = std::move(red.flags);

  for (const auto &child : red.children) {
    auto failed = glue_hypothesis_failures(child);
    if (!failed.empty()) {
      std::string msg = "child " + describe(child) + " violates its hypotheses:";
      for (const auto &f : failed) msg += " " + f;
      node.flags.push_back(msg);
      continue;
    }
    CertNode sub = r3_node(child, bound, depth + 1, limit);
    if (node.case_tag == CaseTag::R3B && sub.case_tag != CaseTag::R3A)
      node.flags.push_back("exchanged instance dispatched to " + std::string(case_name(sub.case_tag)) +
                           " instead of R3_A");
    node.children.push_back(std::move(sub));
  }
  if (red.axiom_leaf) node.children.push_back(axiom_leaf_node(*red.axiom_leaf, bound));
  return node;
}

}  // namespace

R3Reduction reduce_r3(const GlueInstance &inst, std::shared_ptr<const InequalityCatalog> catalog) {
  std::optional<BoundCatalog> storage;
  return reduce_r3_bound(inst, glue_bound(catalog, storage));
}

CertNode certify_r3(const GlueInstance &inst, std::shared_ptr<const InequalityCatalog> catalog) {
  std::optional<BoundCatalog> storage;
  const BoundCatalog &bound = glue_bound(catalog, storage);
  return r3_node(inst, bound, 1, static_cast<std::size_t>(std::max<std::int64_t>(inst.n, 0) + 16));
}

// ---- replay -------------------------------------------------------------------

namespace {

void verify_node(const CertNode &node, const InequalityCatalog &catalog, bool allow_failed,
                 std::vector<std::string> &problems) {
  const std::string where = std::string(case_name(node.case_tag)) + " " + node.tuple.str();
  const bool split_theorem = node.theorem != Theorem::R3;
  if (split_theorem != (node.tuple.space == Space::Split))
    problems.push_back(where + ": tuple space does not match theorem");

  for (const auto &c : node.side_checks) {
    Integer exact;
    try {
      exact = catalog.evaluate(c.label, node.tuple);
    } catch (const std::exception &e) {
      problems.push_back(where + ": side check " + c.label + " not reproducible: " + e.what());
      continue;
    }
    if (exact != Integer(static_cast<long>(c.value)))
      problems.push_back(where + ": side check " + c.label + " stored " + std::to_string(c.value) +
                         " but evaluates to " + exact.get_str());
    if (c.ok != (c.value >= 0)) problems.push_back(where + ": side check " + c.label + " has inconsistent ok flag");
    if (!c.ok && !allow_failed) problems.push_back(where + ": side check " + c.label + " fails");
  }

  if (is_leaf_tag(node.case_tag) != node.children.empty())
    problems.push_back(where + ": leaf tag and child count disagree");

  const Measure m = measure(node);
  for (const auto &child : node.children) {
    if (!(measure(child) < m))
      problems.push_back(where + ": measure does not decrease into " + std::string(case_name(child.case_tag)) + " " +
                         child.tuple.str());
    if (child.tuple.r != node.tuple.r) problems.push_back(where + ": child changes r");
    verify_node(child, catalog, allow_failed, problems);
  }
}

}  // namespace

std::vector<std::string> verify_certificate(const CertNode &root, const InequalityCatalog &catalog,
                                            bool allow_failed_checks) {
  std::vector<std::string> problems;
  verify_node(root, catalog, allow_failed_checks, problems);
  return problems;
}

}  // namespace bncert
