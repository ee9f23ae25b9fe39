#include "bncert/catalog.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <set>

using namespace bncert;

namespace {

const InequalityCatalog &cat() { return *InequalityCatalog::standard(); }
AffineForm v(VarIndex i) { return AffineForm::var(Space::Split, i); }

}  // namespace

TEST_CASE("Brill-Noether number") {
  CHECK(rho(3, 0, 3) == 0);
  CHECK(rho(9, 3, 3) == 15);  // 4*9 - 3*3 - 12
  CHECK(rho(5, 2, 3) == 2);
  CHECK_THROWS_AS(rho(std::int64_t{1} << 62, 0, 3), std::overflow_error);
}

TEST_CASE("rho is increasing in d and decreasing in g") {
  for (std::int64_t r = 1; r <= 8; ++r)
    for (std::int64_t d = -5; d <= 20; ++d)
      for (std::int64_t g = -5; g <= 20; ++g) {
        CHECK(rho(d + 1, g, r) > rho(d, g, r));
        CHECK(rho(d, g + 1, r) < rho(d, g, r));
      }
}

TEST_CASE("hyperplane complement") {
  CHECK(split_complement(9, 3, 5, 0, 2) == SplitComplement{4, 2});
  CHECK(split_complement(7, 4, 7, 4, 1) == SplitComplement{0, 0});
  CHECK(split_complement(12, 6, 6, 0, 3) == SplitComplement{6, 4});
}

TEST_CASE("glued curve invariants") {
  CHECK(glued_invariants({4, 0, 4, 0, 5}) == GluedCurve{8, 4});
  CHECK(glued_invariants({3, 1, 6, 2, 1}) == GluedCurve{9, 3});
  CHECK(glued_invariants({5, 2, 6, 4, 3}) == GluedCurve{11, 8});
  CHECK_THROWS_AS(glued_invariants({4, 0, 4, 0, 0}), InvalidInstance);
}

TEST_CASE("point passing in P^3") {
  CHECK(p3_through_points(5, 2, 9));
  CHECK_FALSE(p3_through_points(5, 2, 10));
  CHECK(p3_through_points(6, 4, 9));
  CHECK_FALSE(p3_through_points(6, 4, 10));
  CHECK(p3_through_points(3, 0, 6));
  CHECK_FALSE(p3_through_points(3, 1, 0));
  for (std::int64_t d = 1; d <= 20; ++d)
    for (std::int64_t g = 0; g <= 20; ++g)
      for (std::int64_t n = 0; n <= 45; ++n) {
        CHECK(p3_through_points(d, g, n) == oracle::through_points(d, g, n));
        CHECK((p3_point_slack(d, g, n) >= 0) == p3_through_points(d, g, n));
      }
}

TEST_CASE("catalog lookups") {
  CHECK(cat().lookup("h").form == v(split::n) - PolyR(1));
  CHECK(cat().lookup("nr3").form == v(split::n) - PolyR::r() - PolyR(3));
  const PolyR r = PolyR::r();
  const AffineForm otd = (r + PolyR(1)) * (v(split::dp) - PolyR(1)) - r * v(split::gp) - r * (r + PolyR(1));
  CHECK(cat().lookup("otd").form == otd);
  CHECK_THROWS_AS(cat().lookup("zz"), UnknownLabel);
  CHECK(cat().min_r("rem") == 4);
  CHECK(cat().min_r("e") == 1);
}

TEST_CASE("catalog labels are unique and the systems have ten labels each") {
  std::set<std::string> seen;
  for (const auto &q : cat().entries()) CHECK(seen.insert(q.label).second);
  for (const auto &[label, fn] : cat().computed()) CHECK(seen.insert(label).second);
  CHECK(main_labels().size() == 10);
  CHECK(mainp_labels().size() == 10);
  for (const char *label : {"cC", "nC", "rem", "r3", "nr3", "for62", "btf", "btff", "btj", "for62ii", "otd",
                            "n-upper"})
    CHECK(cat().contains(label));
  for (const char *name : {"sub-shift", "sub-case1", "sub-case2"}) CHECK(cat().substitutions().contains(name));
}

TEST_CASE("alternative spellings agree") {
  const auto &cC = cat().lookup("cC").form;
  CHECK(cC == cat().lookup("e'").form);
  // (e) is (cC) with d' + 1 replaced by d', which leaves the (g' - d' + n) factor alone.
  const PolyR r = PolyR::r();
  CHECK(cat().lookup("e").form == cC - (PolyR(2) * r - PolyR(3)));

  for (std::int64_t r0 = 1; r0 <= 6; ++r0)
    for (std::int64_t d = 0; d <= 12; ++d)
      for (std::int64_t g = 0; g <= 8; ++g)
        for (std::int64_t dp = 0; dp <= d; ++dp)
          for (std::int64_t n = 0; n <= 6; ++n) {
            const std::int64_t gp = g / 2;
            const auto c = split_complement(d, g, dp, gp, n);
            const auto t = ParamTuple::split(d, g, dp, gp, n, r0);
            CHECK(eval_form(cat().lookup("nC").form, t) == n + c.dpp - c.gpp - r0);
          }
}

TEST_CASE("only (g), (h), (k) grow with n") {
  for (const auto &label : main_labels()) {
    const PolyR coeff = cat().lookup(label).form.coeff(split::n);
    const bool grows = label == "g" || label == "h" || label == "k";
    if (grows)
      CHECK(nonnegative_for_r(coeff));
    else
      CHECK(nonnegative_for_r(-coeff));
  }
}

TEST_CASE("mutation hooks copy-on-write") {
  InequalityCatalog copy = cat();
  copy.replace("h", v(split::n));
  CHECK(copy.lookup("h").form == v(split::n));
  CHECK(cat().lookup("h").form == v(split::n) - PolyR(1));
  copy.remove("rem");
  CHECK_FALSE(copy.contains("rem"));
  CHECK(copy.contains("nr3"));
  CHECK(copy.lookup("nr3").form == cat().lookup("nr3").form);
}

TEST_CASE("computed glue checks") {
  const auto t = ParamTuple::glue(4, 0, 4, 0, 5);
  CHECK(cat().evaluate("pts1", t) == 3);
  CHECK(cat().evaluate("not-excluded", ParamTuple::glue(3, 0, 3, 0, 6)) == -1);
  CHECK(cat().evaluate("not-excluded", t) == 0);
  CHECK(cat().evaluate("n-upper", t) == 8);
}
