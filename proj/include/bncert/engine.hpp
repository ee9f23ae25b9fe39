#pragma once

#include "bncert/systems.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bncert {

enum class Theorem { Main, MainP, R3 };

enum class CaseTag {
  Shift,
  Case1,
  Case2,
  R3A,
  R3B,
  R3C,
  LeafRbn16,
  LeafRbn19,
  LeafClassical,
  LeafR3Rho0,
};

std::string_view theorem_name(Theorem t);
std::string_view case_name(CaseTag c);
bool is_leaf_tag(CaseTag c);

struct SideCheck {
  std::string label;
  std::int64_t value = 0;
  bool ok = false;
};

/// One node of a degeneration certificate. Side checks are catalog labels evaluated
/// at this node's tuple; children are the instances the reduction hands off to.
struct CertNode {
  Theorem theorem = Theorem::Main;
  ParamTuple tuple;
  CaseTag case_tag = CaseTag::LeafRbn19;
  bool swapped = false;  // R3 only: indices exchanged by the normalisation
  std::vector<SideCheck> side_checks;
  std::vector<CertNode> children;
  std::vector<std::string> flags;

  std::int64_t n() const { return tuple.n(); }
  bool is_leaf() const { return children.empty(); }
  /// Nodes on the longest root-to-leaf path (a single leaf has depth 1).
  std::size_t depth() const;
  std::size_t size() const;
  /// Flags anywhere in the tree; a certificate with flags is non-conclusive.
  std::size_t flag_count() const;
  bool conclusive() const { return flag_count() == 0; }
};

/// Lexicographic induction measure.
/// MAIN/MAIN_P: (n, rank) with rank 0 for MAIN and 1 for MAIN_P.
/// R3: (n, min(rho1, rho2), rank) with rank 1 for an R3_B node and 0 otherwise.
/// Axiom side-leaves (LEAF_RBN16) are not induction instances and sit below every measure.
struct Measure {
  bool bottom = false;
  std::int64_t n = 0, secondary = 0, rank = 0;

  friend bool operator<(const Measure &a, const Measure &b) {
    if (a.bottom != b.bottom) return a.bottom;
    if (a.n != b.n) return a.n < b.n;
    if (a.secondary != b.secondary) return a.secondary < b.secondary;
    return a.rank < b.rank;
  }
};

Measure measure(const CertNode &node);

enum class ErrorKind {
  NotFeasible,
  PreconditionViolated,
  ProofGap,
  DichotomyViolation,
  ExcludedCase,
  HypothesisViolated,
  DepthExceeded,
};

std::string_view error_kind_name(ErrorKind k);

class EngineError : public std::runtime_error {
public:
  EngineError(ErrorKind kind, ParamTuple tuple, const std::string &what);
  ErrorKind kind() const { return kind_; }
  const ParamTuple &tuple() const { return tuple_; }

private:
  ErrorKind kind_;
  ParamTuple tuple_;
};

/// Bound evaluators for one r, shared by a certification run.
class EngineContext {
public:
  explicit EngineContext(std::int64_t r,
                         std::shared_ptr<const InequalityCatalog> catalog = InequalityCatalog::standard());
  EngineContext(const EngineContext &) = delete;
  EngineContext &operator=(const EngineContext &) = delete;

  std::int64_t r() const { return bound_.r(); }
  const BoundCatalog &bound() const { return bound_; }
  const SystemEvaluator &system(Variant v) const { return v == Variant::Main ? main_ : mainp_; }
  const InequalityCatalog &catalog() const { return bound_.catalog(); }

private:
  BoundCatalog bound_;
  SystemEvaluator main_;
  SystemEvaluator mainp_;
};

struct Reduction {
  CaseTag case_tag;
  std::vector<SideCheck> side_checks;
  ParamTuple child;
  Theorem child_theorem;
};

/// The MAIN_P to MAIN step at the same n.
Reduction reduce_mainp(const ParamTuple &t, const EngineContext &ctx);
/// The MAIN step to n - 1: Case 1 to MAIN, Case 2 to MAIN_P.
Reduction reduce_main(const ParamTuple &t, const EngineContext &ctx);

/// Certificate for a splitting at its minimal n.
CertNode certify(Theorem theorem, std::int64_t d, std::int64_t g, std::int64_t dp, std::int64_t gp,
                 const EngineContext &ctx);
CertNode certify(Theorem theorem, std::int64_t d, std::int64_t g, std::int64_t dp, std::int64_t gp,
                 std::int64_t r);

/// Instance after the index normalisation together with the case it falls in.
struct R3Dispatch {
  CaseTag case_tag;
  GlueInstance instance;
  bool swapped = false;
};

/// Hypotheses of the gluing theorem that fail for inst (empty when all hold).
std::vector<std::string> glue_hypothesis_failures(const GlueInstance &inst);
/// Case selection with the ordering rule made explicit. Throws ExcludedCase / HypothesisViolated.
R3Dispatch dispatch_r3(const GlueInstance &inst);

struct R3Reduction {
  R3Dispatch dispatch;
  std::vector<SideCheck> side_checks;
  /// Induction children (GLUE instances) and axiom side-leaves.
  std::vector<GlueInstance> children;
  std::optional<GlueInstance> axiom_leaf;
  std::vector<std::string> flags;
};

R3Reduction reduce_r3(const GlueInstance &inst,
                      std::shared_ptr<const InequalityCatalog> catalog = InequalityCatalog::standard());
CertNode certify_r3(const GlueInstance &inst,
                    std::shared_ptr<const InequalityCatalog> catalog = InequalityCatalog::standard());

/// Replays a certificate: side checks ok and reproducible from the catalog (exact arithmetic),
/// leaves carry leaf tags and internal nodes do not, measure strictly decreases on every edge.
/// Returns the list of problems found (empty when valid). With allow_failed_checks a failing
/// side check is not itself a problem (flagged R3 certificates keep them as findings).
std::vector<std::string> verify_certificate(const CertNode &root, const InequalityCatalog &catalog,
                                            bool allow_failed_checks = false);

}  // namespace bncert
