#include "bncert/audit.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

namespace bncert {

std::string_view mode_name(AuditMode m) { return m == AuditMode::Symbolic ? "SYMBOLIC" : "EXHAUSTIVE"; }

void AuditReport::add_counterexample(const ParamTuple &t, std::string why) {
  ++counterexample_count;
  if (counterexamples.size() < kMaxCounterexamples) {
    counterexamples.push_back(t);
    details.push_back(std::move(why));
  }
}

void AuditReport::merge(const AuditReport &later) {
  tuples_checked += later.tuples_checked;
  counterexample_count += later.counterexample_count;
  for (std::size_t i = 0; i < later.counterexamples.size() && counterexamples.size() < kMaxCounterexamples; ++i) {
    counterexamples.push_back(later.counterexamples[i]);
    details.push_back(later.details[i]);
  }
  for (const auto &[key, value] : later.stats) {
    auto [it, fresh] = stats.emplace(key, value);
    if (fresh) continue;
    if (key.starts_with("max_"))
      it->second = std::max(it->second, value);
    else
      it->second += value;
  }
}

namespace {

// ---- parallel chunking ---------------------------------------------------------

// Chunks are claimed dynamically but results land in their own slot, so the merged
// output depends only on the chunk order.
template <class T, class Fn>
std::vector<T> run_chunks(std::size_t count, unsigned workers, Fn &&fn) {
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto threads = std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto &th : pool) th.join();
  }
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<AuditReport> merge_parts(std::vector<AuditReport> prototype, const std::vector<std::vector<AuditReport>> &parts) {
  for (const auto &part : parts)
    for (std::size_t i = 0; i < prototype.size(); ++i) prototype[i].merge(part[i]);
  return prototype;
}

// Strip accumulating fields so a prototype can seed each chunk.
std::vector<AuditReport> blank(const std::vector<AuditReport> &prototype) {
  std::vector<AuditReport> out;
  out.reserve(prototype.size());
  for (const auto &p : prototype) {
    AuditReport r;
    r.claim = p.claim;
    r.stats = p.stats;  // zero-valued keys only, so they show up even when never hit
    out.push_back(std::move(r));
  }
  return out;
}

struct Pair {
  std::int64_t a, b;
};

std::vector<Pair> split_chunks(const Box &box) {
  std::vector<Pair> out;
  for (auto r = box.r.lo; r <= box.r.hi; ++r)
    for (auto d = box.d.lo; d <= box.d.hi; ++d) out.push_back({r, d});
  return out;
}

std::vector<Pair> glue_chunks(const Box &box) {
  std::vector<Pair> out;
  for (auto d1 = box.d1.lo; d1 <= box.d1.hi; ++d1)
    for (auto g1 = box.g1.lo; g1 <= box.g1.hi; ++g1) out.push_back({d1, g1});
  return out;
}

// (g, d', g') for a fixed (r, d) chunk.
template <class Fn>
void each_quad(const Box &box, std::int64_t d, Fn &&fn) {
  const Range dps = box.dp_for(d);
  for (auto g = box.g.lo; g <= box.g.hi; ++g) {
    const Range gps = box.gp_for(g);
    for (auto dp = dps.lo; dp <= dps.hi; ++dp)
      for (auto gp = gps.lo; gp <= gps.hi; ++gp) fn(g, dp, gp);
  }
}

// ---- inductive-step contexts -------------------------------------------------------

enum class Context { Shift, Case1, Case2 };

// Minimal-n tuples at which a reduction applies: MAIN_P for Shift, MAIN split by which of
// (k), (g) fails at n - 1 for the two cases. Tuples fitting neither case are skipped here;
// the dichotomy audit reports them.
template <class Fn>
void each_context(const Box &box, const EngineContext &ctx, std::int64_t d, Fn &&fn) {
  const std::int64_t r = ctx.r();
  if (r < 3) return;
  const auto k_id = ctx.bound().id("k");
  const auto g_id = ctx.bound().id("g");
  each_quad(box, d, [&](std::int64_t g, std::int64_t dp, std::int64_t gp) {
    if (auto n = ctx.system(Variant::MainP).minimal_n(d, g, dp, gp); n && *n >= r + 3 && box.n.contains(*n))
      fn(Context::Shift, ParamTuple::split(d, g, dp, gp, *n, r));
    if (auto n = ctx.system(Variant::Main).minimal_n(d, g, dp, gp); n && *n >= r + 3 && box.n.contains(*n)) {
      const ParamTuple t = ParamTuple::split(d, g, dp, gp, *n, r);
      const ParamTuple prev = t.with(split::n, *n - 1);
      if (ctx.bound().eval(k_id, prev) < 0)
        fn(Context::Case1, t);
      else if (ctx.bound().eval(g_id, prev) < 0)
        fn(Context::Case2, t);
    }
  });
}

std::string value_note(const char *what, std::int64_t v) { return std::string(what) + " = " + std::to_string(v); }

// ---- independent transcriptions of the catalog entries ----------------------------

using Reference = std::function<std::int64_t(const ParamTuple &)>;

const std::map<std::string, Reference> &references() {
  static const std::map<std::string, Reference> refs = [] {
    std::map<std::string, Reference> m;
    using P = const ParamTuple &;
    auto R = [](P t) { return t.r; };
    auto D = [](P t) { return t[split::d]; };
    auto G = [](P t) { return t[split::g]; };
    auto Dp = [](P t) { return t[split::dp]; };
    auto Gp = [](P t) { return t[split::gp]; };
    auto N = [](P t) { return t[split::n]; };
    auto Dpp = [=](P t) { return D(t) - Dp(t); };
    auto Gpp = [=](P t) { return G(t) + 1 - Gp(t) - N(t); };
    auto at_prev = [=](P t) { return t.with(split::n, N(t) - 1); };

    auto e_like = [=](P t, std::int64_t shift) {
      const auto r = R(t);
      return (2 * r - 3) * (Dp(t) + shift) - (r - 2) * (r - 2) * (Gp(t) - Dp(t) + N(t)) - 2 * r * r + 3 * r - 9;
    };
    auto ref_g = [=](P t) { return rho(Dpp(t), Gpp(t), R(t) - 1); };
    auto ref_j = [=](P t) {
      const auto r = R(t);
      return r * Dpp(t) - (r - 4) * (G(t) - Gp(t)) - 2 * N(t) - 2 * r + 2;
    };
    auto ref_k = [=](P t) { return N(t) + Dpp(t) - Gpp(t) - R(t) - 1; };

    m["b"] = m["b'"] = Gp;
    m["c"] = m["c'"] = [=](P t) { return rho(D(t), G(t), R(t)); };
    m["d"] = m["d'"] = [=](P t) { return rho(Dp(t), Gp(t), R(t)); };
    m["e"] = [=](P t) { return e_like(t, 0); };
    m["e'"] = m["cC"] = [=](P t) { return e_like(t, 1); };
    m["f"] = Gpp;
    m["f'"] = [=](P t) { return Gpp(t) - 1; };
    m["g"] = ref_g;
    m["g'"] = [=](P t) { return ref_g(t) - 1; };
    m["h"] = m["h'"] = [=](P t) { return N(t) - 1; };
    m["i"] = m["i'"] = [=](P t) { return Dp(t) - N(t); };
    m["j"] = ref_j;
    m["j'"] = [=](P t) { return ref_j(t) - 4; };
    m["k"] = m["k'"] = ref_k;
    m["nC"] = [=](P t) { return ref_k(t) + 1; };
    m["rem"] = [=](P t) {
      const auto r = R(t);
      return (2 * r - 3) * (Dp(t) + 1) - (r - 2) * (r - 2) * Gp(t) - 2 * r * r + 3 * r - 9;
    };
    m["r3"] = [=](P t) { return R(t) - 3; };
    m["nr3"] = [=](P t) { return N(t) - R(t) - 3; };
    m["for62"] = [=](P t) { return (Dpp(t) - 1) - (Gpp(t) - 1) + (N(t) - 2) - (R(t) - 1); };
    m["btf"] = [=](P t) { return Gpp(t) - R(t) * (N(t) - 3); };
    m["btff"] = [=](P t) { return Gpp(t) - R(t); };
    m["btj"] = [=](P t) {
      const auto r = R(t);
      return r * Dpp(t) - (r - 4) * (G(t) - Gp(t)) - 2 * N(t) - 4 * r;
    };
    m["for62ii"] = [=](P t) {
      const auto r = R(t);
      return (Dpp(t) - r + 1) - (Gpp(t) - r) + (N(t) - 1) - (r + 1);
    };
    m["otd"] = [=](P t) { return rho(Dp(t) - 1, Gp(t), R(t)); };
    m["case1-neg"] = [=](P t) { return -ref_k(at_prev(t)) - 1; };
    m["case1-rho"] = [=](P t) { return rho(Dpp(t) - R(t) + 1, Gpp(t) - R(t), R(t) - 1); };
    m["case1-pts"] = [=](P t) { return (N(t) - 1) - (R(t) + 1); };
    m["case2-neg"] = [=](P t) { return -ref_g(at_prev(t)) - 1; };
    m["case2-k"] = [=](P t) { return ref_k(at_prev(t)); };
    m["case2-interp"] = [=](P t) {
      return e_like(t.with(split::dp, Dp(t) - 1).with(split::n, N(t) - 1), 1);
    };
    m["case2-pts"] = [=](P t) { return N(t) - 3; };
    m["shift-gpp"] = [=](P t) { return Gpp(t) - 1; };
    m["shift-rho"] = [=](P t) { return rho(Dpp(t) - 1, Gpp(t) - 1, R(t) - 1); };
    m["shift-interp"] = [=](P t) {
      const auto r = R(t);
      return r * (Dpp(t) - 1) - (r - 4) * (Gpp(t) - 2) - 2 * r + 2 - (r - 2) * N(t);
    };
    m["base-rbn19"] = [=](P t) { return R(t) + 2 - N(t); };
    m["base-classical"] = [=](P t) { return 2 - R(t); };

    auto D1 = [](P t) { return t[glue::d1]; };
    auto G1 = [](P t) { return t[glue::g1]; };
    auto D2 = [](P t) { return t[glue::d2]; };
    auto G2 = [](P t) { return t[glue::g2]; };
    auto GN = [](P t) { return t[glue::n]; };
    auto rho1 = [=](P t) { return rho(D1(t), G1(t), 3); };
    auto rho2 = [=](P t) { return rho(D2(t), G2(t), 3); };
    m["rho1"] = rho1;
    m["rho2"] = rho2;
    m["glue-n"] = [=](P t) { return GN(t) - 1; };
    m["n-upper"] = [=](P t) { return rho(D1(t) + D2(t), G1(t) + G2(t) + GN(t) - 1, 3); };
    m["r3a-rho1"] = [=](P t) { return rho(D1(t) - 1, G1(t), 3); };
    m["r3b-rho2-lower"] = [=](P t) { return rho2(t) - (3 * GN(t) - 15 - rho1(t)); };
    m["r3b-rho2-4"] = [=](P t) { return rho2(t) - 4; };
    m["r3b-n-d2"] = [=](P t) { return 2 * D2(t) - 1 - GN(t); };
    m["r3c-d1"] = [=](P t) { return D1(t) - 4; };
    m["r3c-g1"] = [=](P t) { return G1(t) - 1; };
    m["r3c-rho"] = [=](P t) { return rho(D1(t) - 1, G1(t) - 1, 3); };
    m["r3c-rho-order"] = [=](P t) { return rho2(t) - rho1(t); };
    m["r3c-rho2-3"] = [=](P t) { return 3 - rho2(t); };
    m["rho0"] = [=](P t) { return -rho1(t); };
    return m;
  }();
  return refs;
}

}  // namespace

// ---- spellings --------------------------------------------------------------------

std::vector<AuditReport> audit_spellings(const AuditOptions &opts) {
  const auto &cat = *opts.catalog;
  const auto &refs = references();
  std::vector<const Inequality *> split_entries, glue_entries;
  std::vector<AuditReport> out;
  std::vector<AuditReport> missing;
  for (const auto &q : cat.entries()) {
    if (!refs.contains(q.label)) {
      AuditReport rep;
      rep.claim = "spellings/" + q.label;
      rep.counterexample_count = 1;
      rep.details.push_back("no independent transcription for this label");
      missing.push_back(std::move(rep));
      continue;
    }
    (q.form.space() == Space::Split ? split_entries : glue_entries).push_back(&q);
  }

  auto prototype = [](const std::vector<const Inequality *> &entries) {
    std::vector<AuditReport> p(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) p[i].claim = "spellings/" + entries[i]->label;
    return p;
  };

  const Box &box = opts.box;
  const auto split_parts = split_chunks(box);
  const auto split_proto = prototype(split_entries);
  auto split_results = run_chunks<std::vector<AuditReport>>(split_parts.size(), opts.workers, [&](std::size_t i) {
    const auto [r, d] = split_parts[i];
    auto reps = blank(split_proto);
    std::vector<BoundForm> forms;
    std::vector<const Reference *> ref;
    for (const auto *q : split_entries) {
      forms.emplace_back(q->form, r);
      ref.push_back(&refs.at(q->label));
    }
    each_quad(box, d, [&](std::int64_t g, std::int64_t dp, std::int64_t gp) {
      const Range ns = box.n_for(dp);
      for (auto n = ns.lo; n <= ns.hi; ++n) {
        const ParamTuple t = ParamTuple::split(d, g, dp, gp, n, r);
        for (std::size_t k = 0; k < forms.size(); ++k) {
          const auto have = forms[k].eval(t), want = (*ref[k])(t);
          ++reps[k].tuples_checked;
          if (have != want)
            reps[k].add_counterexample(t, "catalog " + std::to_string(have) + ", reference " + std::to_string(want));
        }
      }
    });
    return reps;
  });
  auto split_reports = merge_parts(split_proto, split_results);

  const auto glue_parts = glue_chunks(box);
  const auto glue_proto = prototype(glue_entries);
  auto glue_results = run_chunks<std::vector<AuditReport>>(glue_parts.size(), opts.workers, [&](std::size_t i) {
    const auto [d1, g1] = glue_parts[i];
    auto reps = blank(glue_proto);
    std::vector<BoundForm> forms;
    std::vector<const Reference *> ref;
    for (const auto *q : glue_entries) {
      forms.emplace_back(q->form, 3);
      ref.push_back(&refs.at(q->label));
    }
    for (auto d2 = box.d2.lo; d2 <= box.d2.hi; ++d2)
      for (auto g2 = box.g2.lo; g2 <= box.g2.hi; ++g2)
        for (auto n = box.glue_n.lo; n <= box.glue_n.hi; ++n) {
          const ParamTuple t = ParamTuple::glue(d1, g1, d2, g2, n);
          for (std::size_t k = 0; k < forms.size(); ++k) {
            const auto have = forms[k].eval(t), want = (*ref[k])(t);
            ++reps[k].tuples_checked;
            if (have != want)
              reps[k].add_counterexample(t, "catalog " + std::to_string(have) + ", reference " + std::to_string(want));
          }
        }
    return reps;
  });
  auto glue_reports = merge_parts(glue_proto, glue_results);

  // Report in catalog order.
  std::map<std::string, AuditReport> by_label;
  for (auto &rep : split_reports) by_label.emplace(rep.claim, std::move(rep));
  for (auto &rep : glue_reports) by_label.emplace(rep.claim, std::move(rep));
  for (auto &rep : missing) by_label.emplace(rep.claim, std::move(rep));
  for (const auto &q : cat.entries()) out.push_back(std::move(by_label.at("spellings/" + q.label)));
  return out;
}

// ---- implication tables -------------------------------------------------------------

namespace {

struct Justification {
  std::string label;
  Substitution where;
};

struct TableSpec {
  std::string name;
  Context context;
  Variant source, conclusion;
  Substitution hyp, concl;
  std::map<std::string, Justification> exceptions;  // keyed by the unprimed letter
};

std::vector<TableSpec> table_specs(const InequalityCatalog &cat) {
  const auto id = Substitution::identity(Space::Split);
  const auto &prev = cat.substitution("n-1");
  const auto &shift = cat.substitution("sub-shift");
  const auto &case1 = cat.substitution("sub-case1");
  const auto &case2 = cat.substitution("sub-case2");
  std::vector<TableSpec> specs;
  specs.push_back({"shift-forward", Context::Shift, Variant::MainP, Variant::Main, id, shift, {}});
  specs.push_back({"shift-minimality",
                   Context::Shift,
                   Variant::Main,
                   Variant::MainP,
                   compose(shift, prev),
                   prev,
                   {{"b", {"b'", id}}, {"d", {"d'", id}}, {"i", {"i'", id}}}});
  specs.push_back({"case1-forward",
                   Context::Case1,
                   Variant::Main,
                   Variant::Main,
                   id,
                   case1,
                   {{"f", {"btff", id}}, {"h", {"nr3", id}}, {"j", {"btj", id}}}});
  specs.push_back({"case1-minimality",
                   Context::Case1,
                   Variant::Main,
                   Variant::Main,
                   compose(case1, prev),
                   prev,
                   {{"c", {"c", id}}, {"e", {"e", id}}, {"i", {"i", id}}}});
  specs.push_back({"case2-forward",
                   Context::Case2,
                   Variant::Main,
                   Variant::MainP,
                   id,
                   case2,
                   {{"d", {"otd", id}}, {"h", {"nr3", id}}, {"k", {"k", prev}}}});
  specs.push_back({"case2-minimality",
                   Context::Case2,
                   Variant::MainP,
                   Variant::Main,
                   compose(case2, prev),
                   prev,
                   {{"j", {"j", id}}}});
  return specs;
}

struct TableClaim {
  Context context;
  AffineForm hypothesis, conclusion;
  std::string hyp_text, concl_text;
};

}  // namespace

std::vector<AuditReport> audit_implication_tables(const AuditOptions &opts) {
  const auto &cat = *opts.catalog;
  std::vector<TableClaim> claims;
  std::vector<AuditReport> proto;
  for (const auto &spec : table_specs(cat)) {
    for (std::size_t i = 0; i < main_labels().size(); ++i) {
      const std::string &letter = main_labels()[i];
      const std::string &dst = variant_labels(spec.conclusion)[i];
      AffineForm hyp;
      std::string hyp_text;
      if (auto ex = spec.exceptions.find(letter); ex != spec.exceptions.end()) {
        hyp = substitute(cat.lookup(ex->second.label).form, ex->second.where);
        hyp_text = ex->second.label;
      } else {
        const std::string &src = variant_labels(spec.source)[i];
        hyp = substitute(cat.lookup(src).form, spec.hyp);
        hyp_text = src;
      }
      AffineForm concl = substitute(cat.lookup(dst).form, spec.concl);

      AuditReport rep;
      rep.claim = "tables/" + spec.name + "/" + letter;
      const AffineForm diff = concl - hyp;
      rep.residual = diff;
      if (diff.is_constant() && nonnegative_for_r(diff.constant_term(), opts.r_max)) rep.mode = AuditMode::Symbolic;
      proto.push_back(std::move(rep));
      claims.push_back({spec.context, std::move(hyp), std::move(concl), hyp_text, dst});
    }
  }

  const auto parts = split_chunks(opts.box);
  auto results = run_chunks<std::vector<AuditReport>>(parts.size(), opts.workers, [&](std::size_t i) {
    const auto [r, d] = parts[i];
    auto reps = blank(proto);
    if (r < 3) return reps;
    EngineContext ctx(r, opts.catalog);
    std::vector<BoundForm> hyp, concl;
    for (const auto &c : claims) {
      hyp.emplace_back(c.hypothesis, r);
      concl.emplace_back(c.conclusion, r);
    }
    each_context(opts.box, ctx, d, [&](Context where, const ParamTuple &t) {
      for (std::size_t k = 0; k < claims.size(); ++k) {
        if (claims[k].context != where) continue;
        ++reps[k].tuples_checked;
        const auto h = hyp[k].eval(t), c = concl[k].eval(t);
        if (h >= 0 && c < 0)
          reps[k].add_counterexample(t, claims[k].hyp_text + " side = " + std::to_string(h) + ", " +
                                            claims[k].concl_text + " side = " + std::to_string(c));
      }
    });
    return reps;
  });
  return merge_parts(proto, results);
}

// ---- derived inequalities -----------------------------------------------------------

namespace {

struct SplitDerived {
  std::string label;
  Context context;
};

const std::vector<SplitDerived> &split_derived() {
  static const std::vector<SplitDerived> list{
      {"btf", Context::Case1},          {"btff", Context::Case1},        {"btj", Context::Case1},
      {"case1-rho", Context::Case1},    {"case1-pts", Context::Case1},   {"for62ii", Context::Case1},
      {"otd", Context::Case2},          {"case2-k", Context::Case2},     {"case2-interp", Context::Case2},
      {"case2-pts", Context::Case2},    {"for62", Context::Shift},        {"shift-gpp", Context::Shift},
      {"shift-rho", Context::Shift},      {"shift-interp", Context::Shift},
  };
  return list;
}

enum class GlueContext { R3A, R3B, R3C, R3CStep };

struct GlueDerived {
  std::string id;
  GlueContext context;
  std::vector<std::string> labels;
  // Inline slack for claims with no catalog label of their own.
  std::function<std::int64_t(const GlueInstance &)> slack;
  std::string combo;
};

const std::vector<GlueDerived> &glue_derived() {
  static const std::vector<GlueDerived> list{
      {"r3a-rho1", GlueContext::R3A, {"r3a-rho1"}, {}, {}},
      {"r3a-max", GlueContext::R3A, {"r3a-rho2-max"}, {}, {}},
      {"r3a-n-bound",
       GlueContext::R3A,
       {},
       [](const GlueInstance &x) {
         return std::max(8 * x.d1 - 6 * x.g1 - 9, 8 * x.d1 - 3 * x.g1 - 13) - 3 * x.n;
       },
       {}},
      {"r3a-exception-10",
       GlueContext::R3A,
       {},
       [](const GlueInstance &x) {
         const bool listed = (x.d1 == 6 && x.g1 == 2) || (x.d1 == 7 && x.g1 == 4);
         return listed ? 10 - x.n : std::int64_t{0};
       },
       {}},
      {"r3a-pts-prev", GlueContext::R3A, {"r3a-pts-prev"}, {}, {}},
      {"r3b-rho2-lower", GlueContext::R3B, {"r3b-rho2-lower"}, {}, "r3b-rho2-lower"},
      {"r3b-rho2-4", GlueContext::R3B, {"r3b-rho2-4"}, {}, {}},
      {"r3b-n-d2", GlueContext::R3B, {"r3b-n-d2"}, {}, {}},
      {"r3c-order", GlueContext::R3C, {"r3c-rho-order", "r3c-rho2-3"}, {}, {}},
      {"r3c-d1-g1", GlueContext::R3CStep, {"r3c-d1", "r3c-g1"}, {}, {}},
      {"r3c-n7", GlueContext::R3CStep, {"r3c-n7"}, {}, {}},
      {"r3c-rho", GlueContext::R3CStep, {"r3c-rho"}, {}, {}},
      {"r3c-pts", GlueContext::R3CStep, {"r3c-pts"}, {}, {}},
  };
  return list;
}

const ComboCertificate *find_combo(const InequalityCatalog &cat, const std::string &name) {
  for (const auto &c : cat.combos())
    if (c.name == name) return &c;
  return nullptr;
}

void attach_combo(AuditReport &rep, const InequalityCatalog &cat, const std::string &name, long r_max) {
  const ComboCertificate *combo = find_combo(cat, name);
  if (!combo) return;
  CheckResult res;
  try {
    res = combo_check(cat.entries(), *combo, r_max);
  } catch (const UnknownLabel &) {
    return;
  }
  rep.residual = res.residual;
  if (res.pass) rep.mode = AuditMode::Symbolic;
}

}  // namespace

std::vector<AuditReport> audit_derived_inequalities(const AuditOptions &opts) {
  const auto &cat = *opts.catalog;
  const Box &box = opts.box;

  // SPLIT claims in their reduction contexts.
  std::vector<AuditReport> split_proto;
  for (const auto &c : split_derived()) {
    AuditReport rep;
    rep.claim = "derived/" + c.label;
    attach_combo(rep, cat, c.label, opts.r_max);
    split_proto.push_back(std::move(rep));
  }
  const auto parts = split_chunks(box);
  auto split_results = run_chunks<std::vector<AuditReport>>(parts.size(), opts.workers, [&](std::size_t i) {
    const auto [r, d] = parts[i];
    auto reps = blank(split_proto);
    if (r < 3) return reps;
    EngineContext ctx(r, opts.catalog);
    std::vector<std::size_t> ids;
    for (const auto &c : split_derived()) ids.push_back(ctx.bound().id(c.label));
    each_context(box, ctx, d, [&](Context where, const ParamTuple &t) {
      for (std::size_t k = 0; k < ids.size(); ++k) {
        if (split_derived()[k].context != where) continue;
        ++reps[k].tuples_checked;
        if (const auto v = ctx.bound().eval(ids[k], t); v < 0)
          reps[k].add_counterexample(t, value_note(split_derived()[k].label.c_str(), v));
      }
    });
    return reps;
  });
  auto out = merge_parts(split_proto, split_results);

  // max(2, r - 1) = r - 1 on the whole r-range.
  {
    AuditReport rep;
    rep.claim = "derived/for62-max";
    rep.mode = AuditMode::Symbolic;
    for (long r = kRMin; r <= opts.r_max; ++r) {
      ++rep.tuples_checked;
      if (std::max(2L, r - 1) != r - 1) rep.add_counterexample(ParamTuple::split(0, 0, 0, 0, 0, r), "max(2, r - 1) != r - 1");
    }
    out.push_back(std::move(rep));
  }

  // Point counts forced by small rho: 1 <= rho <= 3 gives d >= 4 and g >= 1, rho = 3 gives d >= 6.
  {
    AuditReport rep;
    rep.claim = "derived/r3c-force";
    for (auto d1 = box.d1.lo; d1 <= box.d1.hi; ++d1)
      for (auto g1 = box.g1.lo; g1 <= box.g1.hi; ++g1) {
        const auto p = rho(d1, g1, 3);
        if (p < 1 || p > 3) continue;
        ++rep.tuples_checked;
        if (d1 < 4 || g1 < 1 || (p == 3 && d1 < 6))
          rep.add_counterexample(ParamTuple::glue(d1, g1, 0, 0, 1), value_note("rho", p));
      }
    out.push_back(std::move(rep));
  }

  // GLUE claims at dispatched, normalised instances.
  std::vector<AuditReport> glue_proto;
  for (const auto &c : glue_derived()) {
    AuditReport rep;
    rep.claim = "derived/" + c.id;
    if (!c.combo.empty()) attach_combo(rep, cat, c.combo, opts.r_max);
    glue_proto.push_back(std::move(rep));
  }
  const BoundCatalog bound(opts.catalog, 3);
  std::vector<std::vector<std::size_t>> ids;
  for (const auto &c : glue_derived()) {
    std::vector<std::size_t> v;
    for (const auto &l : c.labels) v.push_back(cat.is_computed(l) ? SIZE_MAX : bound.id(l));
    ids.push_back(std::move(v));
  }
  const auto gparts = glue_chunks(box);
  auto glue_results = run_chunks<std::vector<AuditReport>>(gparts.size(), opts.workers, [&](std::size_t i) {
    const auto [d1, g1] = gparts[i];
    auto reps = blank(glue_proto);
    for (auto d2 = box.d2.lo; d2 <= box.d2.hi; ++d2)
      for (auto g2 = box.g2.lo; g2 <= box.g2.hi; ++g2)
        for (auto n = box.glue_n.lo; n <= box.glue_n.hi; ++n) {
          const GlueInstance inst{d1, g1, d2, g2, n};
          if (!glue_hypothesis_failures(inst).empty()) continue;
          // R3_A and R3_C claims hold at the normalised instance. The R3_B claims are the
          // paper's argument for rho_i >= 4 and n = 2 d_i, checked in either orientation even
          // though the dispatch sends such instances straight to R3_A.
          const R3Dispatch dispatch = dispatch_r3(inst);
          std::vector<std::pair<GlueContext, GlueInstance>> sites;
          switch (dispatch.case_tag) {
            case CaseTag::R3A: sites.emplace_back(GlueContext::R3A, dispatch.instance); break;
            case CaseTag::R3C:
              sites.emplace_back(GlueContext::R3C, dispatch.instance);
              if (dispatch.instance.rho1() >= 1) sites.emplace_back(GlueContext::R3CStep, dispatch.instance);
              break;
            default: break;
          }
          for (const GlueInstance &x : {inst, inst.swapped()})
            if (x.rho1() >= 4 && x.n == 2 * x.d1) sites.emplace_back(GlueContext::R3B, x);

          for (const auto &[where, x] : sites) {
            const ParamTuple t = x.tuple();
            for (std::size_t k = 0; k < glue_derived().size(); ++k) {
              const auto &c = glue_derived()[k];
              if (c.context != where) continue;
              ++reps[k].tuples_checked;
              if (c.slack) {
                if (const auto v = c.slack(x); v < 0) reps[k].add_counterexample(t, value_note("slack", v));
                continue;
              }
              for (std::size_t j = 0; j < c.labels.size(); ++j) {
                const auto v = ids[k][j] == SIZE_MAX ? bound.evaluate(c.labels[j], t) : bound.eval(ids[k][j], t);
                if (v < 0) {
                  reps[k].add_counterexample(t, value_note(c.labels[j].c_str(), v));
                  break;
                }
              }
            }
          }
        }
    return reps;
  });
  for (auto &rep : merge_parts(glue_proto, glue_results)) out.push_back(std::move(rep));
  return out;
}

// ---- dichotomy ----------------------------------------------------------------------

AuditReport audit_dichotomy(const AuditOptions &opts) {
  AuditReport proto;
  proto.claim = "dichotomy";
  proto.stats = {{"case1", 0}, {"case2", 0}, {"both_g_and_k_fail", 0}};
  const auto parts = split_chunks(opts.box);
  auto results = run_chunks<std::vector<AuditReport>>(parts.size(), opts.workers, [&](std::size_t i) {
    const auto [r, d] = parts[i];
    std::vector<AuditReport> reps = blank({proto});
    AuditReport &rep = reps[0];
    if (r < 3) return reps;
    EngineContext ctx(r, opts.catalog);
    const auto &sys = ctx.system(Variant::Main);
    each_quad(opts.box, d, [&](std::int64_t g, std::int64_t dp, std::int64_t gp) {
      const auto n = sys.minimal_n(d, g, dp, gp);
      if (!n || *n < r + 3 || !opts.box.n.contains(*n)) return;
      const ParamTuple t = ParamTuple::split(d, g, dp, gp, *n, r);
      ++rep.tuples_checked;
      const auto failing = sys.failing(t.with(split::n, *n - 1));
      const bool k_fails = std::find(failing.begin(), failing.end(), "k") != failing.end();
      const bool g_fails = std::find(failing.begin(), failing.end(), "g") != failing.end();
      std::string others;
      for (const auto &l : failing)
        if (l != "g" && l != "k") others += " " + l;
      if (failing.empty()) {
        rep.add_counterexample(t, "nothing fails at n - 1");
      } else if (!others.empty()) {
        rep.add_counterexample(t, "fails at n - 1 outside {g, k}:" + others);
      } else {
        ++rep.stats[k_fails ? "case1" : "case2"];
        if (k_fails && g_fails) ++rep.stats["both_g_and_k_fail"];
      }
    });
    return reps;
  });
  return merge_parts({proto}, results)[0];
}

// ---- termination --------------------------------------------------------------------

namespace {

void collect_leaves(const CertNode &node, std::map<std::string, std::int64_t> &stats) {
  if (node.is_leaf()) ++stats["leaf_" + std::string(case_name(node.case_tag))];
  for (const auto &c : node.children) collect_leaves(c, stats);
}

bool leaves_within(const CertNode &node, const std::set<CaseTag> &allowed) {
  if (node.is_leaf()) return allowed.contains(node.case_tag);
  return std::all_of(node.children.begin(), node.children.end(),
                     [&](const CertNode &c) { return leaves_within(c, allowed); });
}

}  // namespace

std::vector<AuditReport> audit_termination(const AuditOptions &opts) {
  const Box &box = opts.box;
  std::vector<AuditReport> proto(2);
  proto[0].claim = "termination/main";
  proto[1].claim = "termination/mainp";
  const std::set<CaseTag> split_leaves{CaseTag::LeafRbn19, CaseTag::LeafClassical};

  const auto parts = split_chunks(box);
  auto results = run_chunks<std::vector<AuditReport>>(parts.size(), opts.workers, [&](std::size_t i) {
    const auto [r, d] = parts[i];
    auto reps = blank(proto);
    EngineContext ctx(r, opts.catalog);
    each_quad(box, d, [&](std::int64_t g, std::int64_t dp, std::int64_t gp) {
      for (int which = 0; which < 2; ++which) {
        const Theorem theorem = which == 0 ? Theorem::Main : Theorem::MainP;
        const Variant variant = which == 0 ? Variant::Main : Variant::MainP;
        const auto n = ctx.system(variant).minimal_n(d, g, dp, gp);
        if (!n || !box.n.contains(*n)) continue;
        AuditReport &rep = reps[which];
        const ParamTuple root = ParamTuple::split(d, g, dp, gp, *n, r);
        ++rep.tuples_checked;
        try {
          const CertNode cert = certify(theorem, d, g, dp, gp, ctx);
          const auto problems = verify_certificate(cert, ctx.catalog());
          if (!problems.empty()) {
            rep.add_counterexample(root, problems.front());
            continue;
          }
          if (!leaves_within(cert, split_leaves)) {
            rep.add_counterexample(root, "leaf outside the base-case tags");
            continue;
          }
          rep.stats["max_depth"] = std::max<std::int64_t>(rep.stats["max_depth"], static_cast<std::int64_t>(cert.depth()));
          rep.stats["nodes"] += static_cast<std::int64_t>(cert.size());
          collect_leaves(cert, rep.stats);
        } catch (const EngineError &e) {
          rep.add_counterexample(root, e.what());
        }
      }
    });
    return reps;
  });
  auto out = merge_parts(proto, results);

  AuditReport r3proto;
  r3proto.claim = "termination/r3";
  const std::set<CaseTag> glue_leaves{CaseTag::LeafRbn16, CaseTag::LeafR3Rho0};
  const auto gparts = glue_chunks(box);
  auto gresults = run_chunks<std::vector<AuditReport>>(gparts.size(), opts.workers, [&](std::size_t i) {
    const auto [d1, g1] = gparts[i];
    auto reps = blank({r3proto});
    AuditReport &rep = reps[0];
    for (auto d2 = box.d2.lo; d2 <= box.d2.hi; ++d2)
      for (auto g2 = box.g2.lo; g2 <= box.g2.hi; ++g2)
        for (auto n = box.glue_n.lo; n <= box.glue_n.hi; ++n) {
          const GlueInstance inst{d1, g1, d2, g2, n};
          if (!glue_hypothesis_failures(inst).empty()) continue;
          ++rep.tuples_checked;
          try {
            const CertNode cert = certify_r3(inst, opts.catalog);
            const auto problems = verify_certificate(cert, *opts.catalog, true);
            if (!problems.empty()) {
              rep.add_counterexample(inst.tuple(), problems.front());
              continue;
            }
            if (!leaves_within(cert, glue_leaves)) {
              rep.add_counterexample(inst.tuple(), "leaf outside the axiom tags");
              continue;
            }
            if (static_cast<std::int64_t>(cert.depth()) > n + 5) {
              rep.add_counterexample(inst.tuple(), "depth " + std::to_string(cert.depth()) + " exceeds n + 5");
              continue;
            }
            rep.stats["max_depth"] = std::max<std::int64_t>(rep.stats["max_depth"], static_cast<std::int64_t>(cert.depth()));
            rep.stats["nodes"] += static_cast<std::int64_t>(cert.size());
            if (!cert.conclusive()) {
              ++rep.stats["flagged_certificates"];
              rep.stats["flags"] += static_cast<std::int64_t>(cert.flag_count());
            }
            collect_leaves(cert, rep.stats);
          } catch (const EngineError &e) {
            rep.add_counterexample(inst.tuple(), e.what());
          }
        }
    return reps;
  });
  out.push_back(merge_parts({r3proto}, gresults)[0]);
  return out;
}

// ---- orchestration ------------------------------------------------------------------

const std::vector<std::string> &claim_groups() {
  static const std::vector<std::string> groups{"spellings", "tables", "derived", "dichotomy", "termination"};
  return groups;
}

bool AuditRun::pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const AuditReport &r) { return r.pass(); });
}

std::uint64_t AuditRun::tuples_checked() const {
  std::uint64_t total = 0;
  for (const auto &r : reports) total += r.tuples_checked;
  return total;
}

std::size_t AuditRun::failed() const {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const AuditReport &r) { return !r.pass(); }));
}

AuditRun run_audits(const AuditOptions &opts, const std::vector<std::string> &filter) {
  std::set<std::string> groups;
  for (const auto &token : filter) {
    const std::string group = token.substr(0, token.find('/'));
    if (std::find(claim_groups().begin(), claim_groups().end(), group) == claim_groups().end())
      throw UnknownClaim("unknown claim '" + token + "'");
    groups.insert(group);
  }
  auto wanted = [&](const std::string &g) { return filter.empty() || groups.contains(g); };

  AuditRun run;
  run.box = opts.box;
  auto append = [&](std::vector<AuditReport> reps) {
    for (auto &r : reps) run.reports.push_back(std::move(r));
  };
  if (wanted("spellings")) append(audit_spellings(opts));
  if (wanted("tables")) append(audit_implication_tables(opts));
  if (wanted("derived")) append(audit_derived_inequalities(opts));
  if (wanted("dichotomy")) append({audit_dichotomy(opts)});
  if (wanted("termination")) append(audit_termination(opts));

  if (!filter.empty()) {
    std::vector<AuditReport> kept;
    std::set<std::string> matched;
    for (auto &rep : run.reports) {
      bool keep = false;
      for (const auto &token : filter)
        if (rep.claim == token || rep.claim.starts_with(token + "/")) keep = true, matched.insert(token);
      if (keep) kept.push_back(std::move(rep));
    }
    for (const auto &token : filter)
      if (!matched.contains(token)) throw UnknownClaim("unknown claim '" + token + "'");
    run.reports = std::move(kept);
  }
  return run;
}

std::string summary_text(const AuditRun &run) {
  std::ostringstream os;
  for (const auto &rep : run.reports) {
    os << (rep.pass() ? "PASS" : "FAIL") << "  " << rep.claim << "  " << mode_name(rep.mode) << "  "
       << rep.tuples_checked << " tuples";
    if (!rep.pass()) {
      os << "  " << rep.counterexample_count << " counterexamples";
      if (!rep.counterexamples.empty()) os << ", first " << rep.counterexamples.front().str();
      if (!rep.details.empty() && !rep.details.front().empty()) os << " (" << rep.details.front() << ")";
    }
    for (const auto &[key, value] : rep.stats) os << "  " << key << "=" << value;
    os << "\n";
  }
  if (run.pass())
    os << "all claims pass, " << run.tuples_checked() << " tuples checked\n";
  else
    os << run.failed() << " of " << run.reports.size() << " claims fail, " << run.tuples_checked()
       << " tuples checked\n";
  return os.str();
}

// ---- enumeration --------------------------------------------------------------------

std::vector<EnumRow> enumerate_region(const Box &box, Variant variant, unsigned workers,
                                      std::shared_ptr<const InequalityCatalog> catalog) {
  const auto parts = split_chunks(box);
  auto results = run_chunks<std::vector<EnumRow>>(parts.size(), workers, [&](std::size_t i) {
    const auto [r, d] = parts[i];
    std::vector<EnumRow> rows;
    EngineContext ctx(r, catalog);
    const auto &sys = ctx.system(variant);
    const Theorem theorem = variant == Variant::Main ? Theorem::Main : Theorem::MainP;
    each_quad(box, d, [&](std::int64_t g, std::int64_t dp, std::int64_t gp) {
      if (!sys.fixed_part_holds(ParamTuple::split(d, g, dp, gp, 1, r))) return;
      EnumRow row{r, d, g, dp, gp, sys.minimal_n(d, g, dp, gp), std::nullopt, std::nullopt, {}};
      if (row.minimal_n) {
        row.base_class = classify_base(variant, ParamTuple::split(d, g, dp, gp, *row.minimal_n, r));
        try {
          row.depth = certify(theorem, d, g, dp, gp, ctx).depth();
        } catch (const EngineError &e) {
          row.error = std::string(error_kind_name(e.kind()));
        }
      }
      rows.push_back(std::move(row));
    });
    return rows;
  });
  std::vector<EnumRow> out;
  for (auto &part : results)
    for (auto &row : part) out.push_back(std::move(row));
  return out;
}

}  // namespace bncert
