#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bncert {

class BoxParseError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Range {
  std::int64_t lo = 0, hi = -1;

  bool empty() const { return hi < lo; }
  bool contains(std::int64_t x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Range &, const Range &) = default;
};

/// Finite search domain for audits and enumeration.
/// SPLIT: dp runs over [1, d] and gp over [0, g] intersected with their ranges, n over [1, dp]
/// intersected with its range. GLUE instances use d1, g1, d2, g2 and glue_n.
struct Box {
  Range r{3, 6};
  Range d{1, 25};
  Range g{0, 25};
  Range dp{1, 25};
  Range gp{0, 25};
  Range n{1, 25};
  Range d1{3, 12};
  Range g1{0, 12};
  Range d2{3, 12};
  Range g2{0, 12};
  Range glue_n{1, 24};

  Range dp_for(std::int64_t d_value) const { return {dp.lo, std::min(dp.hi, d_value)}; }
  Range gp_for(std::int64_t g_value) const { return {gp.lo, std::min(gp.hi, g_value)}; }
  Range n_for(std::int64_t dp_value) const { return {n.lo, std::min(n.hi, dp_value)}; }

  std::string str() const;
  friend bool operator==(const Box &, const Box &) = default;
};

/// Comma-separated clauses `var=v`, `var=lo..hi`, `var<=hi`, `var>=lo` over
/// r, d, g, dp, gp, n, d1, g1, d2, g2, glue_n. Omitted variables keep their defaults; `n` sets
/// the point count of both spaces. Throws BoxParseError.
Box parse_box(const std::string &spec);

}  // namespace bncert
