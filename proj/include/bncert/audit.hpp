#pragma once

#include "bncert/box.hpp"
#include "bncert/engine.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bncert {

enum class AuditMode { Symbolic, Exhaustive };
std::string_view mode_name(AuditMode m);  // "SYMBOLIC" / "EXHAUSTIVE"

inline constexpr std::size_t kMaxCounterexamples = 100;

struct AuditReport {
  std::string claim;
  AuditMode mode = AuditMode::Exhaustive;
  std::uint64_t tuples_checked = 0;
  std::uint64_t counterexample_count = 0;
  /// First kMaxCounterexamples offending tuples in box order, with a reason for each.
  std::vector<ParamTuple> counterexamples;
  std::vector<std::string> details;
  /// Symbolic difference left over: the constant slack on a symbolic pass, otherwise the
  /// non-constant or negative remainder that sent the claim to the exhaustive check.
  std::optional<AffineForm> residual;
  std::map<std::string, std::int64_t> stats;

  bool pass() const { return counterexample_count == 0; }
  void add_counterexample(const ParamTuple &t, std::string why = {});
  /// Appends a later chunk's results. Stats are summed, except keys starting with "max_".
  void merge(const AuditReport &later);
};

struct AuditOptions {
  Box box;
  unsigned workers = 1;
  long r_max = kDefaultRMax;
  std::shared_ptr<const InequalityCatalog> catalog = InequalityCatalog::standard();
};

/// Each affine catalog entry against an independent integer transcription, over the box.
std::vector<AuditReport> audit_spellings(const AuditOptions &opts);
/// The directional implication tables of the three reductions, label by label.
std::vector<AuditReport> audit_implication_tables(const AuditOptions &opts);
/// Derived inequalities under their stated hypotheses; combination certificates first.
std::vector<AuditReport> audit_derived_inequalities(const AuditOptions &opts);
/// For MAIN at minimal n >= r + 3, only (g) and (k) may fail at n - 1, and at least one does.
AuditReport audit_dichotomy(const AuditOptions &opts);
/// Certificates for every feasible SPLIT input and every valid GLUE instance in the box.
std::vector<AuditReport> audit_termination(const AuditOptions &opts);

class UnknownClaim : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// spellings, tables, derived, dichotomy, termination.
const std::vector<std::string> &claim_groups();

struct AuditRun {
  Box box;
  std::vector<AuditReport> reports;

  bool pass() const;
  std::uint64_t tuples_checked() const;
  std::size_t failed() const;
};

/// Runs the audits selected by filter: each entry is a group name or a claim-id prefix
/// such as "tables/case1-forward". An empty filter runs everything. Throws UnknownClaim.
AuditRun run_audits(const AuditOptions &opts, const std::vector<std::string> &filter = {});

/// One line per claim and a closing total.
std::string summary_text(const AuditRun &run);

struct EnumRow {
  std::int64_t r, d, g, dp, gp;
  std::optional<std::int64_t> minimal_n;
  std::optional<BaseClass> base_class;
  std::optional<std::size_t> depth;
  std::string error;  // set when certification raised
};

/// One row per (r, d, g, dp, gp) in the box whose n-independent labels hold, ordered
/// lexicographically.
std::vector<EnumRow> enumerate_region(const Box &box, Variant variant, unsigned workers = 1,
                                      std::shared_ptr<const InequalityCatalog> catalog = InequalityCatalog::standard());

}  // namespace bncert
