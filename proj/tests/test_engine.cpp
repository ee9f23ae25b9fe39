#include "bncert/engine.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace bncert;

namespace {

// First MAIN input at minimal n >= r + 3 whose step lands in the given case.
std::optional<ParamTuple> find_main_case(CaseTag want, const EngineContext &ctx, std::int64_t min_n = 0) {
  const auto &sys = ctx.system(Variant::Main);
  const std::int64_t r = ctx.r();
  for (std::int64_t d = 1; d <= 30; ++d)
    for (std::int64_t g = 0; g <= 30; ++g)
      for (std::int64_t dp = 1; dp <= d; ++dp)
        for (std::int64_t gp = 0; gp <= g; ++gp) {
          const auto n = sys.minimal_n(d, g, dp, gp);
          if (!n || *n < std::max(r + 3, min_n)) continue;
          const auto t = ParamTuple::split(d, g, dp, gp, *n, r);
          if (reduce_main(t, ctx).case_tag == want) return t;
        }
  return std::nullopt;
}

}  // namespace

TEST_CASE("base inputs are single leaves") {
  const auto a = certify(Theorem::Main, 9, 3, 5, 0, 3);
  CHECK(a.case_tag == CaseTag::LeafRbn19);
  CHECK(a.is_leaf());
  CHECK(a.depth() == 1);
  CHECK(a.n() == 2);
  const auto b = certify(Theorem::Main, 12, 6, 6, 0, 3);
  CHECK(b.case_tag == CaseTag::LeafRbn19);
  CHECK(b.n() == 3);
  CHECK(verify_certificate(b, *InequalityCatalog::standard()).empty());
  CHECK(certify(Theorem::Main, 30, 30, 20, 10, 2).case_tag == CaseTag::LeafClassical);
}

TEST_CASE("infeasible input and bad r") {
  try {
    certify(Theorem::Main, 9, 3, 4, 0, 3);
    FAIL("expected NotFeasible");
  } catch (const EngineError &e) {
    CHECK(e.kind() == ErrorKind::NotFeasible);
  }
  CHECK_THROWS(certify(Theorem::Main, 9, 3, 5, 0, 0));
}

TEST_CASE("reductions check their preconditions") {
  const EngineContext ctx(3);
  const auto t = ParamTuple::split(20, 5, 10, 2, 5, 3);  // n = r + 2
  for (auto step : {reduce_main, reduce_mainp}) {
    try {
      step(t, ctx);
      FAIL("expected PreconditionViolated");
    } catch (const EngineError &e) {
      CHECK(e.kind() == ErrorKind::PreconditionViolated);
      CHECK(e.tuple() == t);
    }
  }
}

TEST_CASE("Case 1 step") {
  const EngineContext ctx(4);
  const auto t = find_main_case(CaseTag::Case1, ctx);
  REQUIRE(t.has_value());
  const auto red = reduce_main(*t, ctx);
  CHECK(red.child_theorem == Theorem::Main);
  CHECK(red.child.n() == t->n() - 1);
  CHECK(red.child == ctx.catalog().substitution("sub-case1").apply(*t));
  for (const auto &sc : red.side_checks) CHECK_MESSAGE(sc.ok, sc.label);
  CHECK(ctx.system(Variant::Main).minimal_n(red.child[split::d], red.child[split::g], red.child[split::dp],
                                            red.child[split::gp]) == red.child.n());
}

TEST_CASE("Case 2 step") {
  const EngineContext ctx(3);
  const auto t = find_main_case(CaseTag::Case2, ctx, ctx.r() + 4);
  REQUIRE(t.has_value());
  const auto red = reduce_main(*t, ctx);
  CHECK(red.child_theorem == Theorem::MainP);
  CHECK(red.child.n() == t->n() - 1);
  for (const auto &sc : red.side_checks) CHECK_MESSAGE(sc.ok, sc.label);

  // The MAIN_P node at the child then steps back to MAIN at the same n.
  const auto back = reduce_mainp(red.child, ctx);
  CHECK(back.case_tag == CaseTag::Shift);
  CHECK(back.child_theorem == Theorem::Main);
  CHECK(back.child.n() == red.child.n());
}

TEST_CASE("certificates over a box verify and shrink the measure") {
  const auto &cat = *InequalityCatalog::standard();
  for (std::int64_t r = 3; r <= 5; ++r) {
    const EngineContext ctx(r);
    for (const Theorem th : {Theorem::Main, Theorem::MainP}) {
      const auto &sys = ctx.system(th == Theorem::Main ? Variant::Main : Variant::MainP);
      for (std::int64_t d = 1; d <= 22; d += 3)
        for (std::int64_t g = 0; g <= 22; g += 2)
          for (std::int64_t dp = 1; dp <= d; ++dp)
            for (std::int64_t gp = 0; gp <= g; ++gp) {
              if (!sys.minimal_n(d, g, dp, gp)) continue;
              const auto cert = certify(th, d, g, dp, gp, ctx);
              REQUIRE(verify_certificate(cert, cat).empty());
              CHECK(cert.conclusive());
              CHECK(cert.depth() <= static_cast<std::size_t>(2 * cert.n() + 2));
            }
    }
  }
}

TEST_CASE("verification catches tampering") {
  const EngineContext ctx(3);
  const auto t = find_main_case(CaseTag::Case1, ctx);
  REQUIRE(t.has_value());
  const auto cert = certify(Theorem::Main, (*t)[split::d], (*t)[split::g], (*t)[split::dp], (*t)[split::gp], ctx);
  const auto &cat = *InequalityCatalog::standard();
  REQUIRE(verify_certificate(cert, cat).empty());
  REQUIRE(!cert.side_checks.empty());

  auto bad_value = cert;
  bad_value.side_checks.back().value += 1;
  CHECK_FALSE(verify_certificate(bad_value, cat).empty());

  auto bad_child = cert;
  REQUIRE(!bad_child.children.empty());
  bad_child.children.front().tuple = cert.tuple;  // no decrease
  CHECK_FALSE(verify_certificate(bad_child, cat).empty());

  auto bad_leaf = cert;
  bad_leaf.case_tag = CaseTag::LeafRbn19;
  CHECK_FALSE(verify_certificate(bad_leaf, cat).empty());

  auto bad_r = cert;
  bad_r.children.front().tuple.r = 4;
  CHECK_FALSE(verify_certificate(bad_r, cat).empty());
}

TEST_CASE("measure order") {
  CertNode main;
  main.tuple = ParamTuple::split(10, 5, 6, 2, 6, 3);
  CertNode mainp = main;
  mainp.theorem = Theorem::MainP;
  mainp.case_tag = CaseTag::Shift;
  CHECK(measure(main) < measure(mainp));
  CertNode leaf;
  leaf.theorem = Theorem::R3;
  leaf.case_tag = CaseTag::LeafRbn16;
  leaf.tuple = ParamTuple::glue(1, 0, 3, 0, 2);
  CHECK(measure(leaf) < measure(main));
}

TEST_CASE("gluing dispatch") {
  const auto a = dispatch_r3({4, 0, 4, 0, 5});
  CHECK(a.case_tag == CaseTag::R3A);
  const auto red = reduce_r3({4, 0, 4, 0, 5});
  REQUIRE(red.children.size() == 1);
  CHECK(red.children.front() == GlueInstance{3, 0, 5, 1, 4});
  REQUIRE(red.axiom_leaf.has_value());
  CHECK(*red.axiom_leaf == GlueInstance{1, 0, 4, 0, 2});

  try {
    dispatch_r3({3, 0, 3, 0, 6});
    FAIL("expected ExcludedCase");
  } catch (const EngineError &e) {
    CHECK(e.kind() == ErrorKind::ExcludedCase);
  }
  try {
    dispatch_r3({3, 1, 4, 0, 2});  // rho1 < 0
    FAIL("expected HypothesisViolated");
  } catch (const EngineError &e) {
    CHECK(e.kind() == ErrorKind::HypothesisViolated);
  }
  CHECK(glue_hypothesis_failures({3, 1, 4, 0, 2}) == std::vector<std::string>{"rho1", "pts1"});

  const auto leaf = certify_r3({3, 0, 3, 0, 1});
  CHECK(leaf.case_tag == CaseTag::LeafR3Rho0);
  CHECK(leaf.is_leaf());
}

TEST_CASE("dispatch is symmetric up to ordering") {
  for (std::int64_t d1 = 3; d1 <= 9; ++d1)
    for (std::int64_t g1 = 0; g1 <= 8; ++g1)
      for (std::int64_t d2 = 3; d2 <= 9; ++d2)
        for (std::int64_t g2 = 0; g2 <= 8; ++g2)
          for (std::int64_t n = 1; n <= 12; ++n) {
            const GlueInstance inst{d1, g1, d2, g2, n};
            if (!glue_hypothesis_failures(inst).empty()) continue;
            const auto a = dispatch_r3(inst);
            const auto b = dispatch_r3(inst.swapped());
            CHECK(a.case_tag == b.case_tag);
            CHECK(a.instance == b.instance);
          }
}

TEST_CASE("random gluing instances terminate within n + 5") {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<std::int64_t> deg(3, 20), gen(0, 30), pts(1, 40);
  int made = 0;
  const auto &cat = *InequalityCatalog::standard();
  while (made < 1000) {
    const GlueInstance inst{deg(rng), gen(rng), deg(rng), gen(rng), pts(rng)};
    if (!glue_hypothesis_failures(inst).empty()) continue;
    ++made;
    const auto cert = certify_r3(inst);
    CHECK(cert.depth() <= static_cast<std::size_t>(inst.n + 5));
    CHECK(verify_certificate(cert, cat, true).empty());
  }
}

TEST_CASE("certification is deterministic") {
  const auto a = certify_r3({7, 3, 8, 5, 9});
  const auto b = certify_r3({7, 3, 8, 5, 9});
  CHECK(a.size() == b.size());
  CHECK(a.depth() == b.depth());
  CHECK(a.flag_count() == b.flag_count());
}

TEST_CASE("names") {
  CHECK(theorem_name(Theorem::MainP) == "MAIN_P");
  CHECK(case_name(CaseTag::R3A) == "R3_A");
  CHECK(case_name(CaseTag::LeafRbn16) == "LEAF_RBN16");
  CHECK(is_leaf_tag(CaseTag::LeafR3Rho0));
  CHECK_FALSE(is_leaf_tag(CaseTag::Case1));
  CHECK(error_kind_name(ErrorKind::ExcludedCase) == "ExcludedCase");
}
