#include "bncert/audit.hpp"
#include "random_forms.hpp"

#include <doctest.h>

using namespace bncert;

TEST_CASE("substitution soundness on random triples") {
  gen::Rng rng(1);
  int bad = 0;
  for (int i = 0; i < 100000; ++i) bad += !gen::substitution_sound(rng);
  CHECK(bad == 0);
}

TEST_CASE("composition agrees with sequential application") {
  gen::Rng rng(2);
  for (int i = 0; i < 5000; ++i) {
    const Space s = gen::space(rng);
    const auto a = gen::substitution(rng, s);
    const auto b = gen::substitution(rng, s);
    const auto t = gen::tuple(rng, s);
    const auto f = gen::form(rng, s);
    REQUIRE(compose(a, b).apply(t) == a.apply(b.apply(t)));
    REQUIRE(substitute(f, compose(a, b)) == substitute(substitute(f, a), b));
  }
}

TEST_CASE("form arithmetic agrees with evaluation") {
  gen::Rng rng(3);
  for (int i = 0; i < 100000; ++i) {
    const Space s = gen::space(rng);
    const auto f = gen::form(rng, s);
    const auto g = gen::form(rng, s);
    const auto k = gen::poly(rng);
    const auto t = gen::tuple(rng, s);
    const Integer ft = gen::eval_direct(f, t), gt = gen::eval_direct(g, t);
    REQUIRE(eval_form(f, t) == ft);
    REQUIRE(eval_form(f + g, t) == ft + gt);
    REQUIRE(eval_form(f - g, t) == ft - gt);
    REQUIRE(eval_form(k * f, t) == eval_poly(k, t.r) * ft);
    REQUIRE(f + g == g + f);
    REQUIRE((f + g) - g == f);
    REQUIRE(k * (f + g) == k * f + k * g);
  }
}

TEST_CASE("bound forms agree with exact evaluation") {
  gen::Rng rng(4);
  for (int i = 0; i < 20000; ++i) {
    const Space s = gen::space(rng);
    const auto f = gen::form(rng, s);
    const auto t = gen::tuple(rng, s);
    REQUIRE(BoundForm(f, t.r).eval(t) == to_int64(eval_form(f, t)));
  }
}

TEST_CASE("passing combination certificates are sound on samples") {
  const auto &cat = *InequalityCatalog::standard();
  gen::Rng rng(5);
  for (const auto &combo : cat.combos()) {
    if (!combo_check(cat.entries(), combo).pass) continue;
    const Space s = cat.lookup(combo.target).form.space();
    int hits = 0;
    for (int i = 0; i < 20000; ++i) {
      std::array<std::int64_t, kNumVars> vals{};
      for (auto &x : vals) x = gen::uniform(rng, 0, 60);
      const ParamTuple t(s, vals, s == Space::Glue ? 3 : gen::uniform(rng, 3, 20));
      bool hyp = true;
      for (const auto &[label, mult] : combo.terms) hyp = hyp && eval_form(cat.lookup(label).form, t) >= 0;
      if (!hyp) continue;
      ++hits;
      REQUIRE_MESSAGE(eval_form(cat.lookup(combo.target).form, t) >= 0, combo.name << " at " << t.str());
    }
    CHECK_MESSAGE(hits > 0, combo.name);
  }
}

TEST_CASE("random coefficient mutations are caught") {
  gen::Rng rng(6);
  AuditOptions opts;
  opts.box = parse_box("r=3..4,d<=8,g<=6,d1<=5,g1<=3,d2<=5,g2<=3,n<=6");
  const auto &entries = InequalityCatalog::standard()->entries();
  for (int i = 0; i < 25; ++i) {
    const auto &e = entries[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(entries.size()) - 1))];
    auto mutated = e.form;
    const auto v = static_cast<VarIndex>(gen::uniform(rng, 0, kNumVars));
    const PolyR delta(gen::uniform(rng, 0, 1) == 0 ? -1L : 1L);
    if (v == kNumVars)
      mutated.set_constant(mutated.constant_term() + delta);
    else
      mutated.set_coeff(v, mutated.coeff(v) + delta);
    auto cat = std::make_shared<InequalityCatalog>(*InequalityCatalog::standard());
    cat->replace(e.label, mutated);
    opts.catalog = cat;
    CHECK_MESSAGE(!run_audits(opts, {"spellings/" + e.label}).pass(), e.label);
  }
}
