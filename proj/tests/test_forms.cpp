#include "bncert/catalog.hpp"

#include <doctest.h>

using namespace bncert;

namespace {

const AffineForm &form(const std::string &label) { return InequalityCatalog::standard()->lookup(label).form; }

AffineForm v(VarIndex i) { return AffineForm::var(Space::Split, i); }

}  // namespace

TEST_CASE("polynomial evaluation") {
  CHECK(eval_poly(PolyR{2, -5, 3}, 3) == 14);
  CHECK(eval_poly(PolyR(), 17) == 0);
  CHECK(eval_poly(PolyR{2, 2}, 4) == 10);
}

TEST_CASE("polynomials drop trailing zeros") {
  const PolyR p{4, 0, 0};
  CHECK(p.degree() == 0);
  CHECK(p == PolyR(4));
  CHECK((PolyR::r() - PolyR::r()).is_zero());
  CHECK(PolyR().coefficients().empty());
  CHECK(PolyR{2, -5, 3}.str() == "3r^2 - 5r + 2");
}

TEST_CASE("nonnegativity for r >= 3") {
  CHECK(nonnegative_for_r(PolyR::r() - PolyR(3)));
  CHECK_FALSE(nonnegative_for_r(PolyR::r() - PolyR(4)));
  CHECK(nonnegative_for_r(PolyR{2, -5, 3}));
  CHECK_FALSE(nonnegative_for_r(PolyR{200, 0, -1}));  // fails only for r > 14
  CHECK_FALSE(nonnegative_for_r(PolyR{0, -150, 1}));  // negative inside the range, positive leading term
  CHECK_FALSE(nonnegative_for_r(PolyR{-1}));
  CHECK(nonnegative_for_r(PolyR()));
  // Root beyond the default range: caught by the root-bound extension.
  CHECK_FALSE(nonnegative_for_r(PolyR{-500, 1}, 100));
}

TEST_CASE("form evaluation at pinned tuples") {
  CHECK(eval_form(form("k"), ParamTuple::split(9, 3, 5, 0, 1, 3)) == -2);
  CHECK(eval_form(form("h"), ParamTuple::split(9, 3, 5, 0, 1, 3)) == 0);
  CHECK(eval_form(form("e"), ParamTuple::split(12, 6, 6, 0, 3, 3)) == 3);
}

TEST_CASE("evaluation across spaces is rejected") {
  CHECK_THROWS_AS(eval_form(form("k"), ParamTuple::glue(4, 0, 4, 0, 5)), SpaceMismatch);
  CHECK_THROWS_AS(form("k") + form("rho1"), SpaceMismatch);
  CHECK_THROWS_AS(substitute(form("k"), InequalityCatalog::standard()->substitution("swap")), SpaceMismatch);
}

TEST_CASE("parameter tuples need r >= 1") {
  CHECK_THROWS(ParamTuple::split(1, 0, 1, 0, 1, 0));
  CHECK(ParamTuple::glue(1, 2, 3, 4, 5).r == 3);
}

TEST_CASE("substitution into a form") {
  const auto &cat = *InequalityCatalog::standard();
  const PolyR r = PolyR::r();
  // (f) under the Case 1 map.
  const AffineForm expected = v(split::g) - v(split::gp) - v(split::n) - r + PolyR(1);
  CHECK(substitute(form("f"), cat.substitution("sub-case1")) == expected);
  CHECK(substitute(form("f"), Substitution::identity(Space::Split)) == form("f"));
  // (i) under the map to (d, g, d'+1, g'+1, n).
  CHECK(substitute(form("i"), cat.substitution("sub-shift")) == v(split::dp) - v(split::n) + PolyR(1));
}

TEST_CASE("composition applies the inner map first") {
  const auto &cat = *InequalityCatalog::standard();
  const auto &c1 = cat.substitution("sub-case1");
  const auto &prev = cat.substitution("n-1");
  const Substitution both = compose(c1, prev);
  const ParamTuple t = ParamTuple::split(30, 20, 9, 2, 8, 4);
  CHECK(both.apply(t) == c1.apply(prev.apply(t)));
  CHECK(both.apply(t) == ParamTuple::split(27, 15, 9, 2, 6, 4));

  Substitution a = Substitution::identity(Space::Split);
  a.set(split::d, v(split::g) + v(split::n));
  Substitution b = Substitution::identity(Space::Split);
  b.set(split::g, PolyR(2) * v(split::dp));
  CHECK(compose(a, b).apply(t) == a.apply(b.apply(t)));
  CHECK(compose(b, a).apply(t) == b.apply(a.apply(t)));
}

TEST_CASE("combination certificates") {
  const auto &cat = *InequalityCatalog::standard();
  auto combo = [&](const std::string &name) {
    for (const auto &c : cat.combos())
      if (c.name == name) return c;
    FAIL("missing combo " << name);
    return ComboCertificate{};
  };

  SUBCASE("Case 1 g'' bound from (g) and the negated (k)") {
    const auto res = combo_check(cat.entries(), combo("btf"));
    CHECK(res.pass);
    CHECK(res.residual.is_constant());
  }
  SUBCASE("interpolation bound with slack 3r^2 - 5r + 2") {
    const auto res = combo_check(cat.entries(), combo("btj"));
    CHECK(res.pass);
    CHECK(res.residual.constant_term() == PolyR{2, -5, 3});
  }
  SUBCASE("a zero combination cannot produce a form with variables") {
    const ComboCertificate zero{"zero", "h", {{"k", PolyR()}}, PolyR(-1)};
    const auto res = combo_check(cat.entries(), zero);
    CHECK_FALSE(res.pass);
    CHECK(res.residual == form("h"));
  }
  SUBCASE("negative multiplier is rejected") {
    const ComboCertificate bad{"bad", "for62ii", {{"k", PolyR(-1)}}, PolyR()};
    CHECK_FALSE(combo_check(cat.entries(), bad).pass);
  }
  SUBCASE("unknown label") {
    const ComboCertificate bad{"bad", "h", {{"nope", PolyR(1)}}, PolyR()};
    CHECK_THROWS_AS(combo_check(cat.entries(), bad), UnknownLabel);
  }
}

TEST_CASE("bound forms detect overflow") {
  const BoundForm f(form("c"), 3);
  const auto huge = std::int64_t{1} << 62;
  CHECK_THROWS_AS(f.eval(ParamTuple::split(huge, 0, 1, 0, 1, 3)), std::overflow_error);
  CHECK_THROWS_AS(to_int64(Integer("123456789012345678901234567890")), std::overflow_error);
  CHECK(to_int64(Integer(-42)) == -42);
}

TEST_CASE("form printing") {
  CHECK(form("h").str().find('n') != std::string::npos);
  CHECK(AffineForm::constant(Space::Split, PolyR()).is_constant());
}
