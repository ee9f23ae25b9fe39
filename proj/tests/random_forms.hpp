#pragma once

// Random forms, substitutions and tuples for the property checks.

#include "bncert/catalog.hpp"

#include <random>

namespace gen {

using namespace bncert;
using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng &rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline PolyR poly(Rng &rng) {
  const auto deg = uniform(rng, 0, 2);
  std::vector<Integer> c;
  for (std::int64_t i = 0; i <= deg; ++i) c.emplace_back(static_cast<long>(uniform(rng, -9, 9)));
  return PolyR(std::move(c));
}

inline Space space(Rng &rng) { return uniform(rng, 0, 3) == 0 ? Space::Glue : Space::Split; }

// Half catalog entries, half fresh forms with sparse coefficients.
inline AffineForm form(Rng &rng, Space s) {
  const auto &entries = InequalityCatalog::standard()->entries();
  if (uniform(rng, 0, 1) == 0) {
    for (int tries = 0; tries < 64; ++tries) {
      const auto &e = entries[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(entries.size()) - 1))];
      if (e.form.space() == s) return e.form;
    }
  }
  AffineForm f = AffineForm::constant(s, poly(rng));
  for (VarIndex v = 0; v < kNumVars; ++v)
    if (uniform(rng, 0, 2) != 0) f.set_coeff(v, poly(rng));
  return f;
}

inline Substitution substitution(Rng &rng, Space s) {
  if (uniform(rng, 0, 1) == 0) {
    std::vector<const Substitution *> same;
    for (const auto &[name, sub] : InequalityCatalog::standard()->substitutions())
      if (sub.space() == s) same.push_back(&sub);
    if (!same.empty()) return *same[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(same.size()) - 1))];
  }
  Substitution sub = Substitution::identity(s);
  for (VarIndex v = 0; v < kNumVars; ++v)
    if (uniform(rng, 0, 1) == 0) sub.set(v, form(rng, s));
  return sub;
}

inline ParamTuple tuple(Rng &rng, Space s) {
  std::array<std::int64_t, kNumVars> vals{};
  for (auto &x : vals) x = uniform(rng, -30, 30);
  return ParamTuple(s, vals, s == Space::Glue ? 3 : uniform(rng, 1, 12));
}

// Evaluation written out from the coefficient lists, without eval_form.
inline Integer eval_direct(const AffineForm &f, const ParamTuple &t) {
  auto at = [&](const PolyR &p) {
    Integer acc = 0;
    const auto &c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * static_cast<long>(t.r) + *it;
    return acc;
  };
  Integer sum = at(f.constant_term());
  for (VarIndex v = 0; v < kNumVars; ++v) sum += at(f.coeff(v)) * static_cast<long>(t[v]);
  return sum;
}

// One substitution-soundness trial; false on a mismatch.
inline bool substitution_sound(Rng &rng) {
  const Space s = space(rng);
  const auto f = form(rng, s);
  const auto sub = substitution(rng, s);
  const auto t = tuple(rng, s);
  return eval_form(substitute(f, sub), t) == eval_form(f, sub.apply(t));
}

}  // namespace gen
