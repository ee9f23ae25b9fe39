#include "bncert/audit.hpp"
#include "bncert/serialize.hpp"

#include <doctest.h>

#include <sstream>

using namespace bncert;

namespace {

AuditOptions small(const std::string &box = "r=3..4,d<=12,g<=10") {
  AuditOptions o;
  o.box = parse_box(box);
  return o;
}

std::shared_ptr<InequalityCatalog> mutated(const std::string &label, long delta) {
  auto c = std::make_shared<InequalityCatalog>(*InequalityCatalog::standard());
  c->replace(label, c->lookup(label).form + PolyR(delta));
  return c;
}

const AuditReport &find(const AuditRun &run, const std::string &claim) {
  for (const auto &r : run.reports)
    if (r.claim == claim) return r;
  throw std::out_of_range(claim);
}

}  // namespace

TEST_CASE("box parsing") {
  const Box b = parse_box("r=3..4,d<=15,g>=2,n=5");
  CHECK(b.r == Range{3, 4});
  CHECK(b.d == Range{1, 15});
  CHECK(b.g == Range{2, 25});
  CHECK(b.n == Range{5, 5});
  CHECK(b.glue_n == Range{5, 5});
  CHECK(parse_box("") == Box{});
  CHECK(parse_box(b.str()) == b);
  CHECK_THROWS_AS(parse_box("q=3"), BoxParseError);
  CHECK_THROWS_AS(parse_box("d=5..4"), BoxParseError);
  CHECK_THROWS_AS(parse_box("d=x"), BoxParseError);
  CHECK_THROWS_AS(parse_box("r=0..3"), BoxParseError);
}

TEST_CASE("all claims pass on a small box") {
  const auto run = run_audits(small("r=3..5,d<=14,g<=12,d1<=8,g1<=6,d2<=8,g2<=6"));
  for (const auto &r : run.reports) CHECK_MESSAGE(r.pass(), r.claim);
  CHECK(run.pass());
  CHECK(run.tuples_checked() > 0);
  const auto &dich = find(run, "dichotomy");
  CHECK(dich.tuples_checked > 0);
  CHECK(dich.stats.at("case1") + dich.stats.at("case2") == static_cast<std::int64_t>(dich.tuples_checked));
  CHECK(summary_text(run).find("all claims pass") != std::string::npos);
}

TEST_CASE("every table entry is symbolic") {
  for (const auto &r : audit_implication_tables(small())) {
    CHECK_MESSAGE(r.mode == AuditMode::Symbolic, r.claim);
    CHECK(r.residual.has_value());
  }
}

TEST_CASE("claim filtering") {
  const auto run = run_audits(small(), {"tables/case1-forward"});
  CHECK(run.reports.size() == 10);
  for (const auto &r : run.reports) CHECK(r.claim.rfind("tables/case1-forward/", 0) == 0);
  CHECK(run_audits(small(), {"dichotomy"}).reports.size() == 1);
  CHECK_THROWS_AS(run_audits(small(), {"nonsense"}), UnknownClaim);
  CHECK_THROWS_AS(run_audits(small(), {"tables/nonsense"}), UnknownClaim);
}

TEST_CASE("a unit change to any system label is caught by the spellings audit") {
  auto opts = small("r=3..4,d<=8,g<=6");
  for (const auto *labels : {&main_labels(), &mainp_labels()})
    for (const auto &label : *labels)
      for (long delta : {-1L, 1L}) {
        opts.catalog = mutated(label, delta);
        const auto run = run_audits(opts, {"spellings/" + label});
        REQUIRE(run.reports.size() == 1);
        CHECK_MESSAGE(!run.pass(), label << " " << delta);
      }
}

TEST_CASE("an off-by-one in the primed (g) breaks the tables") {
  auto opts = small();
  opts.catalog = mutated("g'", 1);
  const auto run = run_audits(opts, {"tables"});
  const auto &fwd = find(run, "tables/shift-forward/g");
  CHECK_FALSE(fwd.pass());
  CHECK(fwd.mode == AuditMode::Exhaustive);
  CHECK(fwd.counterexamples.size() <= kMaxCounterexamples);
  CHECK_FALSE(fwd.counterexamples.empty());
  CHECK_FALSE(find(run, "tables/case2-minimality/g").pass());
  CHECK(find(run, "tables/case1-forward/g").pass());
}

TEST_CASE("weakening (h) to n >= r + 3 breaks the dichotomy") {
  auto opts = small();
  auto c = std::make_shared<InequalityCatalog>(*InequalityCatalog::standard());
  c->replace("h", c->lookup("nr3").form);
  opts.catalog = c;
  CHECK_FALSE(audit_dichotomy(opts).pass());
}

TEST_CASE("worker count does not change the output") {
  auto one = small("r=3..4,d<=12,g<=10,d1<=7,d2<=7");
  auto many = one;
  many.workers = 8;
  CHECK(to_json(run_audits(one)).dump() == to_json(run_audits(many)).dump());

  std::ostringstream a, b;
  write_enum_csv(a, enumerate_region(one.box, Variant::Main, 1));
  write_enum_csv(b, enumerate_region(one.box, Variant::Main, 8));
  CHECK(a.str() == b.str());
}

TEST_CASE("report merging") {
  AuditReport a, b;
  a.tuples_checked = 3;
  a.stats["max_depth"] = 4;
  a.stats["nodes"] = 10;
  b.tuples_checked = 2;
  b.stats["max_depth"] = 2;
  b.stats["nodes"] = 5;
  for (int i = 0; i < 120; ++i) b.add_counterexample(ParamTuple::split(1, 0, 1, 0, i, 3));
  a.merge(b);
  CHECK(a.tuples_checked == 5);
  CHECK(a.stats["max_depth"] == 4);
  CHECK(a.stats["nodes"] == 15);
  CHECK(a.counterexample_count == 120);
  CHECK(a.counterexamples.size() == kMaxCounterexamples);
  CHECK(a.counterexamples.front().n() == 0);
}

TEST_CASE("enumeration rows") {
  const auto rows = enumerate_region(parse_box("r=3,d=12,g=6,dp=6,gp=0"), Variant::Main);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].minimal_n == 3);
  CHECK(rows[0].base_class == BaseClass::BaseRbn19);
  CHECK(rows[0].depth == 1u);
  CHECK(enumerate_region(parse_box("r=3,d=1..2"), Variant::Main).empty());

  std::ostringstream out;
  write_enum_csv(out, rows);
  CHECK(out.str() == "r,d,g,dp,gp,minimal_n,class,depth\r\n3,12,6,6,0,3,BASE_RBN_19,1\r\n");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"x\"") == "\"say \"\"x\"\"\"");
  CHECK(csv_field("plain") == "plain");
}
