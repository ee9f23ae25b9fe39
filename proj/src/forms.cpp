#include "bncert/forms.hpp"

#include <sstream>

namespace bncert {

namespace {

constexpr std::array<std::string_view, kNumVars> kSplitNames{"d", "g", "dp", "gp", "n"};
constexpr std::array<std::string_view, kNumVars> kGlueNames{"d1", "g1", "d2", "g2", "n"};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("int64 overflow in form evaluation");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("int64 overflow in form evaluation");
  return out;
}

}  // namespace

std::string_view space_name(Space s) { return s == Space::Split ? "SPLIT" : "GLUE"; }

const std::array<std::string_view, kNumVars> &variable_names(Space s) {
  return s == Space::Split ? kSplitNames : kGlueNames;
}

std::optional<VarIndex> variable_index(Space s, std::string_view name) {
  const auto &names = variable_names(s);
  for (VarIndex i = 0; i < kNumVars; ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

// ---- AffineForm -----------------------------------------------------------

AffineForm AffineForm::var(Space space, VarIndex v, PolyR coeff) {
  AffineForm f(space);
  f.coeffs_.at(v) = std::move(coeff);
  return f;
}

AffineForm AffineForm::constant(Space space, PolyR c) {
  AffineForm f(space);
  f.constant_ = std::move(c);
  return f;
}

bool AffineForm::is_constant() const {
  for (const auto &c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

void AffineForm::check_space(const AffineForm &o) const {
  if (o.space_ != space_) throw SpaceMismatch("affine forms over different variable spaces");
}

AffineForm &AffineForm::operator+=(const AffineForm &o) {
  check_space(o);
  for (VarIndex v = 0; v < kNumVars; ++v) coeffs_[v] += o.coeffs_[v];
  constant_ += o.constant_;
  return *this;
}

AffineForm &AffineForm::operator-=(const AffineForm &o) {
  check_space(o);
  for (VarIndex v = 0; v < kNumVars; ++v) coeffs_[v] -= o.coeffs_[v];
  constant_ -= o.constant_;
  return *this;
}

AffineForm &AffineForm::operator*=(const PolyR &k) {
  for (auto &c : coeffs_) c *= k;
  constant_ *= k;
  return *this;
}

AffineForm AffineForm::operator-() const {
  AffineForm out = *this;
  out *= PolyR(-1);
  return out;
}

std::string AffineForm::str() const {
  std::ostringstream os;
  const auto &names = variable_names(space_);
  bool first = true;
  auto emit = [&](const PolyR &c, std::string_view name) {
    if (c.is_zero()) return;
    if (!first) os << " + ";
    first = false;
    if (name.empty()) {
      os << (c.is_constant() ? c.str() : "(" + c.str() + ")");
    } else if (c == PolyR(1)) {
      os << name;
    } else {
      os << "(" << c.str() << ")*" << name;
    }
  };
  for (VarIndex v = 0; v < kNumVars; ++v) emit(coeffs_[v], names[v]);
  emit(constant_, "");
  return first ? "0" : os.str();
}

// ---- ParamTuple -------------------------------------------------------------

ParamTuple::ParamTuple(Space s, std::array<std::int64_t, kNumVars> v, std::int64_t r_value)
    : space(s), values(v), r(r_value) {
  if (r < 1) throw std::invalid_argument("ParamTuple requires r >= 1");
}

ParamTuple ParamTuple::split(std::int64_t d, std::int64_t g, std::int64_t dp, std::int64_t gp,
                             std::int64_t n, std::int64_t r) {
  return ParamTuple(Space::Split, {d, g, dp, gp, n}, r);
}

ParamTuple ParamTuple::glue(std::int64_t d1, std::int64_t g1, std::int64_t d2, std::int64_t g2,
                            std::int64_t n) {
  return ParamTuple(Space::Glue, {d1, g1, d2, g2, n}, 3);
}

std::string ParamTuple::str() const {
  std::ostringstream os;
  const auto &names = variable_names(space);
  os << "(";
  for (VarIndex v = 0; v < kNumVars; ++v) os << names[v] << "=" << values[v] << ", ";
  os << "r=" << r << ")";
  return os.str();
}

// ---- evaluation -------------------------------------------------------------

Integer eval_poly(const PolyR &p, std::int64_t r) { return p.eval(Integer(static_cast<long>(r))); }

Integer eval_form(const AffineForm &f, const ParamTuple &t) {
  if (f.space() != t.space) throw SpaceMismatch("form and tuple live in different variable spaces");
  const Integer r(static_cast<long>(t.r));
  Integer acc = f.constant_term().eval(r);
  for (VarIndex v = 0; v < kNumVars; ++v) {
    const PolyR &c = f.coeff(v);
    if (!c.is_zero()) acc += c.eval(r) * Integer(static_cast<long>(t.values[v]));
  }
  return acc;
}

std::int64_t to_int64(const Integer &x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + x.get_str());
  return static_cast<std::int64_t>(x.get_si());
}

BoundForm::BoundForm(const AffineForm &f, std::int64_t r) {
  for (VarIndex v = 0; v < kNumVars; ++v) coeffs_[v] = to_int64(eval_poly(f.coeff(v), r));
  constant_ = to_int64(eval_poly(f.constant_term(), r));
}

std::int64_t BoundForm::eval(const std::array<std::int64_t, kNumVars> &values) const {
  std::int64_t acc = constant_;
  for (VarIndex v = 0; v < kNumVars; ++v)
    if (coeffs_[v] != 0) acc = checked_add(acc, checked_mul(coeffs_[v], values[v]));
  return acc;
}

// ---- Substitution -----------------------------------------------------------

Substitution::Substitution(Space space) : space_(space) {
  for (VarIndex v = 0; v < kNumVars; ++v) images_[v] = AffineForm::var(space, v);
}

Substitution Substitution::identity(Space space) { return Substitution(space); }

Substitution &Substitution::set(VarIndex v, AffineForm image) {
  if (image.space() != space_) throw SpaceMismatch("substitution image over a different space");
  images_.at(v) = std::move(image);
  return *this;
}

Substitution &Substitution::shift(VarIndex v, const PolyR &delta) {
  return set(v, AffineForm::var(space_, v) + delta);
}

ParamTuple Substitution::apply(const ParamTuple &t) const {
  if (t.space != space_) throw SpaceMismatch("substitution applied to a tuple of another space");
  ParamTuple out = t;
  for (VarIndex v = 0; v < kNumVars; ++v) out.values[v] = to_int64(eval_form(images_[v], t));
  return out;
}

AffineForm substitute(const AffineForm &f, const Substitution &s) {
  if (f.space() != s.space()) throw SpaceMismatch("substitution over a different space");
  AffineForm out = AffineForm::constant(f.space(), f.constant_term());
  for (VarIndex v = 0; v < kNumVars; ++v)
    if (!f.coeff(v).is_zero()) out += f.coeff(v) * s.image(v);
  return out;
}

// ---- combination certificates ----------------------------------------------

CheckResult combo_check(std::span<const Inequality> catalog, const ComboCertificate &cert,
                        long r_max) {
  auto find = [&](const std::string &label) -> const Inequality & {
    for (const auto &q : catalog)
      if (q.label == label) return q;
    throw UnknownLabel("combination certificate '" + cert.name + "' names unknown label '" + label + "'");
  };

  const Inequality &target = find(cert.target);
  CheckResult out;
  out.residual = target.form;
  for (const auto &[label, multiplier] : cert.terms) {
    out.residual -= multiplier * find(label).form;
    if (!nonnegative_for_r(multiplier, r_max))
      out.problems.push_back("multiplier of " + label + " (" + multiplier.str() + ") is not nonnegative for r >= 3");
  }
  if (!nonnegative_for_r(cert.slack, r_max))
    out.problems.push_back("slack " + cert.slack.str() + " is not nonnegative for r >= 3");
  if (!out.residual.is_constant())
    out.problems.push_back("residual has variable terms: " + out.residual.str());
  else if (out.residual.constant_term() != cert.slack)
    out.problems.push_back("residual constant " + out.residual.constant_term().str() + " differs from slack " +
                           cert.slack.str());
  out.pass = out.problems.empty();
  return out;
}

Substitution compose(const Substitution &outer, const Substitution &inner) {
  if (outer.space() != inner.space()) throw SpaceMismatch("composing substitutions over different spaces");
  Substitution out = Substitution::identity(outer.space());
  for (VarIndex v = 0; v < kNumVars; ++v) out.set(v, substitute(outer.image(v), inner));
  return out;
}

}  // namespace bncert
