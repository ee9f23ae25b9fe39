#include "bncert/poly.hpp"

#include <algorithm>
#include <sstream>

namespace bncert {

PolyR::PolyR(long constant) : coeffs_{Integer(constant)} { normalize(); }

PolyR::PolyR(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

PolyR::PolyR(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

PolyR PolyR::r() { return PolyR{0, 1}; }

void PolyR::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer PolyR::eval(const Integer &r) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + *it;
  return acc;
}

PolyR &PolyR::operator+=(const PolyR &o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Integer(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

PolyR &PolyR::operator-=(const PolyR &o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Integer(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

PolyR &PolyR::operator*=(const PolyR &o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Integer> out(coeffs_.size() + o.coeffs_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

PolyR PolyR::operator-() const {
  PolyR out = *this;
  for (auto &c : out.coeffs_) c = -c;
  return out;
}

std::string PolyR::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Integer &c = coeffs_[k];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) os << mag.get_str();
    if (k >= 1) os << "r";
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

bool nonnegative_for_r(const PolyR &p, long r_max, long r_min) {
  if (p.is_zero()) return true;
  if (p.is_constant()) return p.leading() >= 0;
  if (p.leading() < 0) return false;
  // Cauchy bound: every real root lies below 1 + max|a_i / a_lead|.
  Integer bound = 0;
  const Integer lead = p.leading();
  for (int i = 0; i < p.degree(); ++i) {
    Integer q = abs(p.coefficient(static_cast<std::size_t>(i)));
    q = (q + lead - 1) / lead;
    bound = std::max(bound, q);
  }
  bound += 1;
  Integer hi = std::max(Integer(r_max), bound);
  for (Integer r = r_min; r <= hi; ++r)
    if (p.eval(r) < 0) return false;
  return true;
}

}  // namespace bncert
