#include "bncert/box.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace bncert {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string &text, const std::string &clause) {
  const std::string s = trim(text);
  std::int64_t v = 0;
  const auto *end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end)
    throw BoxParseError("box clause '" + clause + "': '" + s + "' is not an integer");
  return v;
}

Range *slot(Box &box, const std::string &name) {
  if (name == "r") return &box.r;
  if (name == "d") return &box.d;
  if (name == "g") return &box.g;
  if (name == "dp") return &box.dp;
  if (name == "gp") return &box.gp;
  if (name == "n") return &box.n;
  if (name == "d1") return &box.d1;
  if (name == "g1") return &box.g1;
  if (name == "d2") return &box.d2;
  if (name == "g2") return &box.g2;
  if (name == "glue_n") return &box.glue_n;
  return nullptr;
}

}  // namespace

std::string Box::str() const {
  std::ostringstream os;
  const std::pair<const char *, const Range *> parts[] = {{"r", &r},   {"d", &d},   {"g", &g},   {"dp", &dp},
                                                          {"gp", &gp}, {"n", &n},   {"d1", &d1}, {"g1", &g1},
                                                          {"d2", &d2}, {"g2", &g2}, {"glue_n", &glue_n}};
  for (const auto &[name, range] : parts) {
    if (os.tellp() > 0) os << ",";
    os << name << "=" << range->lo << ".." << range->hi;
  }
  return os.str();
}

Box parse_box(const std::string &spec) {
  Box box;
  std::stringstream ss(spec);
  std::string clause;
  while (std::getline(ss, clause, ',')) {
    clause = trim(clause);
    if (clause.empty()) continue;

    std::string name, rest;
    enum { Eq, Le, Ge } op;
    if (auto p = clause.find("<="); p != std::string::npos) {
      op = Le, name = clause.substr(0, p), rest = clause.substr(p + 2);
    } else if (auto q = clause.find(">="); q != std::string::npos) {
      op = Ge, name = clause.substr(0, q), rest = clause.substr(q + 2);
    } else if (auto e = clause.find('='); e != std::string::npos) {
      op = Eq, name = clause.substr(0, e), rest = clause.substr(e + 1);
    } else {
      throw BoxParseError("box clause '" + clause + "' has no =, <= or >=");
    }
    name = trim(name);
    Range *target = slot(box, name);
    if (!target) throw BoxParseError("box clause '" + clause + "': unknown variable '" + name + "'");

    Range value = *target;
    if (op == Le) {
      value.hi = parse_int(rest, clause);
    } else if (op == Ge) {
      value.lo = parse_int(rest, clause);
    } else if (auto dots = rest.find(".."); dots != std::string::npos) {
      value = {parse_int(rest.substr(0, dots), clause), parse_int(rest.substr(dots + 2), clause)};
    } else {
      const auto v = parse_int(rest, clause);
      value = {v, v};
    }
    if (value.empty()) throw BoxParseError("box clause '" + clause + "' gives an empty range");
    *target = value;
    if (name == "n") box.glue_n = value;
  }
  if (box.r.lo < 1) throw BoxParseError("box needs r >= 1");
  return box;
}

}  // namespace bncert
