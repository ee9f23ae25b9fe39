#include "bncert/cli.hpp"

#include "bncert/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace bncert {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Variant parse_variant(const std::string &s) {
  if (s == "main" || s == "MAIN") return Variant::Main;
  if (s == "main-p" || s == "mainp" || s == "main_p" || s == "MAIN_P") return Variant::MainP;
  throw UsageError("unknown variant '" + s + "' (expected main or main-p)");
}

long r_max_from_env() {
  const char *env = std::getenv("BNCERT_RMAX");
  if (!env || !*env) return kDefaultRMax;
  char *end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < kRMin) throw UsageError("BNCERT_RMAX must be an integer >= 3");
  return v;
}

// Writes to the file when a path is given, otherwise to out.
void emit(const std::string &path, std::ostream &out, const std::string &text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
}

struct SplitArgs {
  std::string variant = "main";
  std::int64_t r = 0, d = 0, g = 0, dp = 0, gp = 0, n = 0;
};

void add_split_options(CLI::App *cmd, SplitArgs &a, bool with_n) {
  cmd->add_option("--variant,--theorem", a.variant, "main or main-p")->capture_default_str();
  cmd->add_option("-r", a.r, "ambient dimension")->required();
  cmd->add_option("-d", a.d, "degree")->required();
  cmd->add_option("-g", a.g, "genus")->required();
  cmd->add_option("--dp", a.dp, "degree of the transverse component")->required();
  cmd->add_option("--gp", a.gp, "genus of the transverse component")->required();
  if (with_n) cmd->add_option("-n", a.n, "number of gluing points")->required();
}

int cmd_check(const SplitArgs &a, const std::string &format, std::ostream &out) {
  if (a.r < 1) throw UsageError("-r must be at least 1");
  const auto report = check_tuple(parse_variant(a.variant), ParamTuple::split(a.d, a.g, a.dp, a.gp, a.n, a.r));
  if (format == "json") {
    out << to_json(report).dump(2) << "\n";
  } else {
    out << variant_name(report.variant) << " " << report.tuple.str() << "\n";
    for (const auto &lv : report.labels)
      out << "  " << lv.label << " = " << lv.value << (lv.ok ? "  ok" : "  FAILS") << "\n";
    out << (report.all_satisfied ? "all satisfied" : "not satisfied") << "\n";
  }
  return report.all_satisfied ? kExitOk : kExitFail;
}

int cmd_minimal_n(const SplitArgs &a, std::ostream &out) {
  if (a.r < 1) throw UsageError("-r must be at least 1");
  const auto n = minimal_n(parse_variant(a.variant), a.d, a.g, a.dp, a.gp, a.r);
  if (!n) {
    out << "infeasible\n";
    return kExitFail;
  }
  out << *n << "\n";
  return kExitOk;
}

int finish_certificate(const CertNode &cert, const std::string &path, std::ostream &out) {
  emit(path, out, to_json(cert).dump(2) + "\n");
  return cert.conclusive() ? kExitOk : kExitFlagged;
}

int cmd_certify(const SplitArgs &a, const std::string &path, std::ostream &out) {
  if (a.r < 1) throw UsageError("-r must be at least 1");
  const Theorem th = parse_variant(a.variant) == Variant::Main ? Theorem::Main : Theorem::MainP;
  return finish_certificate(certify(th, a.d, a.g, a.dp, a.gp, a.r), path, out);
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Certificate engine for the numerical side of reducible Brill-Noether curves", "bncert"};
  app.require_subcommand(1);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());

  SplitArgs check_args, minn_args, cert_args;
  std::string check_format = "text";
  auto *check = app.add_subcommand("check", "Evaluate every label of a system at one tuple");
  add_split_options(check, check_args, true);
  check->add_option("--format", check_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto *minn = app.add_subcommand("minimal-n", "Least n satisfying a system, or infeasible");
  add_split_options(minn, minn_args, false);

  std::string cert_out;
  auto *cert = app.add_subcommand("certify", "Certificate tree for a splitting at its minimal n");
  add_split_options(cert, cert_args, false);
  cert->add_option("-o,--out", cert_out, "write the certificate JSON here");

  GlueInstance glue;
  std::string r3_out;
  auto *r3 = app.add_subcommand("certify-r3", "Certificate tree for two space curves glued at n points");
  r3->add_option("--d1", glue.d1, "degree of the first curve")->required();
  r3->add_option("--g1", glue.g1, "genus of the first curve")->required();
  r3->add_option("--d2", glue.d2, "degree of the second curve")->required();
  r3->add_option("--g2", glue.g2, "genus of the second curve")->required();
  r3->add_option("-n", glue.n, "number of gluing points")->required();
  r3->add_option("-o,--out", r3_out, "write the certificate JSON here");

  std::string enum_box, enum_variant = "main", enum_out;
  unsigned enum_workers = hw;
  auto *enumerate = app.add_subcommand("enumerate", "CSV of the feasible region over a box");
  enumerate->add_option("--box", enum_box, "box clauses, e.g. r=3,d=1..12,g<=6");
  enumerate->add_option("--variant", enum_variant, "main or main-p")->capture_default_str();
  enumerate->add_option("--workers", enum_workers, "worker threads")->check(CLI::PositiveNumber);
  enumerate->add_option("-o,--out", enum_out, "write the CSV here");

  std::string audit_box, audit_out, audit_format = "text";
  std::vector<std::string> audit_claims;
  bool default_box = false;
  unsigned audit_workers = hw;
  auto *audit = app.add_subcommand("audit", "Run the arithmetic audits over a box");
  auto *box_opt = audit->add_option("--box", audit_box, "box clauses, e.g. r=3..4,d<=15");
  audit->add_flag("--default-box", default_box, "use the default box")->excludes(box_opt);
  audit->add_option("--claims", audit_claims, "claim groups or claim-id prefixes")->delimiter(',');
  audit->add_option("--workers", audit_workers, "worker threads")->check(CLI::PositiveNumber);
  audit->add_option("-o,--out", audit_out, "write the JSON report here");
  audit->add_option("--format", audit_format, "stdout format: text or json")->check(CLI::IsMember({"text", "json"}));

  std::string cat_out;
  auto *exportc = app.add_subcommand("export-catalog", "JSON dump of the inequality catalog");
  exportc->add_option("-o,--out", cat_out, "write the catalog JSON here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitUsage;
  }

  try {
    if (*check) return cmd_check(check_args, check_format, out);
    if (*minn) return cmd_minimal_n(minn_args, out);
    if (*cert) return cmd_certify(cert_args, cert_out, out);
    if (*r3) return finish_certificate(certify_r3(glue), r3_out, out);
    if (*enumerate) {
      const Box box = parse_box(enum_box);
      std::ostringstream csv;
      write_enum_csv(csv, enumerate_region(box, parse_variant(enum_variant), enum_workers));
      emit(enum_out, out, csv.str());
      return kExitOk;
    }
    if (*audit) {
      AuditOptions opts;
      opts.box = parse_box(default_box ? std::string() : audit_box);
      opts.workers = audit_workers;
      opts.r_max = r_max_from_env();
      const AuditRun run = run_audits(opts, audit_claims);
      const std::string json = to_json(run).dump(2) + "\n";
      if (!audit_out.empty()) emit(audit_out, out, json);
      out << (audit_format == "json" ? json : summary_text(run));
      return run.pass() ? kExitOk : kExitFail;
    }
    if (*exportc) {
      emit(cat_out, out, catalog_json(*InequalityCatalog::standard()).dump(2) + "\n");
      return kExitOk;
    }
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BoxParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownClaim &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EngineError &e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace bncert
