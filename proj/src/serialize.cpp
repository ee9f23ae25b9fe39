#include "bncert/serialize.hpp"

namespace bncert {

Json to_json(const ParamTuple &t) {
  Json j = Json::object();
  const auto &names = variable_names(t.space);
  for (std::size_t i = 0; i < names.size(); ++i) j[std::string(names[i])] = t.values[i];
  if (t.space == Space::Split) j["r"] = t.r;
  return j;
}

Json to_json(const CheckReport &report) {
  Json j;
  j["variant"] = variant_name(report.variant);
  j["tuple"] = to_json(report.tuple);
  Json labels = Json::object();
  for (const auto &lv : report.labels) labels[lv.label] = {{"value", lv.value}, {"ok", lv.ok}};
  j["labels"] = std::move(labels);
  j["all_satisfied"] = report.all_satisfied;
  return j;
}

Json to_json(const CertNode &node) {
  Json j;
  j["theorem"] = theorem_name(node.theorem);
  j["tuple"] = to_json(node.tuple);
  j["n"] = node.n();
  j["case"] = case_name(node.case_tag);
  if (node.theorem == Theorem::R3) j["swapped"] = node.swapped;
  Json checks = Json::array();
  for (const auto &c : node.side_checks) checks.push_back({{"label", c.label}, {"value", c.value}, {"ok", c.ok}});
  j["side_checks"] = std::move(checks);
  j["flags"] = node.flags;
  Json children = Json::array();
  for (const auto &c : node.children) children.push_back(to_json(c));
  j["children"] = std::move(children);
  return j;
}

Json to_json(const AuditReport &report) {
  Json j;
  j["claim"] = report.claim;
  j["mode"] = mode_name(report.mode);
  j["pass"] = report.pass();
  j["tuples_checked"] = report.tuples_checked;
  j["counterexample_count"] = report.counterexample_count;
  Json examples = Json::array();
  for (std::size_t i = 0; i < report.counterexamples.size(); ++i) {
    Json e = to_json(report.counterexamples[i]);
    if (i < report.details.size() && !report.details[i].empty()) e["why"] = report.details[i];
    examples.push_back(std::move(e));
  }
  j["counterexamples"] = std::move(examples);
  j["residual"] = report.residual ? Json(report.residual->str()) : Json(nullptr);
  Json stats = Json::object();
  for (const auto &[k, v] : report.stats) stats[k] = v;
  j["stats"] = std::move(stats);
  return j;
}

Json to_json(const AuditRun &run) {
  Json j;
  j["box"] = run.box.str();
  j["pass"] = run.pass();
  j["claims_total"] = run.reports.size();
  j["claims_failed"] = run.failed();
  j["tuples_checked"] = run.tuples_checked();
  Json reports = Json::array();
  for (const auto &r : run.reports) reports.push_back(to_json(r));
  j["reports"] = std::move(reports);
  return j;
}

Json catalog_json(const InequalityCatalog &catalog) {
  Json j;
  Json entries = Json::array();
  for (const auto &q : catalog.entries()) {
    Json e;
    e["label"] = q.label;
    e["space"] = space_name(q.form.space());
    e["form"] = q.form.str();
    e["note"] = q.note;
    if (catalog.min_r(q.label) > 1) e["min_r"] = catalog.min_r(q.label);
    entries.push_back(std::move(e));
  }
  j["inequalities"] = std::move(entries);
  Json computed = Json::array();
  for (const auto &[label, fn] : catalog.computed()) computed.push_back(label);
  j["computed_checks"] = std::move(computed);
  Json subs = Json::object();
  for (const auto &[name, s] : catalog.substitutions()) {
    Json images = Json::object();
    const auto &names = variable_names(s.space());
    for (std::size_t v = 0; v < names.size(); ++v) images[std::string(names[v])] = s.image(v).str();
    subs[name] = std::move(images);
  }
  j["substitutions"] = std::move(subs);
  Json combos = Json::array();
  for (const auto &c : catalog.combos()) {
    Json terms = Json::array();
    for (const auto &[label, mult] : c.terms) terms.push_back({{"label", label}, {"multiplier", mult.str()}});
    combos.push_back({{"name", c.name}, {"target", c.target}, {"terms", std::move(terms)}, {"slack", c.slack.str()}});
  }
  j["combos"] = std::move(combos);
  return j;
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_enum_csv(std::ostream &out, const std::vector<EnumRow> &rows) {
  out << "r,d,g,dp,gp,minimal_n,class,depth\r\n";
  for (const auto &row : rows) {
    out << row.r << ',' << row.d << ',' << row.g << ',' << row.dp << ',' << row.gp << ',';
    if (row.minimal_n) out << *row.minimal_n;
    out << ',';
    if (row.base_class) out << csv_field(std::string(base_class_name(*row.base_class)));
    out << ',';
    if (row.depth)
      out << *row.depth;
    else if (!row.error.empty())
      out << csv_field(row.error);
    out << "\r\n";
  }
}

}  // namespace bncert
