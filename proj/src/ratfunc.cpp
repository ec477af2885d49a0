#include "cremona/ratfunc.hpp"

namespace cremona {
namespace {
void require(bool ok, const std::string& msg) {
  if (!ok) throw FieldError(msg);
}
}  // namespace

RatFunc RatFunc::from(Poly num, Poly den) {
  require(num.valid() && den.valid(), "rational function from uninitialized polynomials");
  require(!den.is_zero(), "zero denominator");
  RatFunc r;
  if (num.is_zero()) {
    r.num_ = std::move(num);
    r.den_ = Poly::constant(r.num_.field(), r.num_.vars(), r.num_.field()->one());
    return r;
  }
  Poly g = poly_gcd(num, den);
  if (!g.is_constant()) {
    num = *divexact(num, g);
    den = *divexact(den, g);
  }
  FElem c = den.leading_coeff().inverse();
  r.num_ = num * c;
  r.den_ = den * c;
  return r;
}

RatFunc RatFunc::from_poly(Poly p) {
  Poly one = Poly::constant(p.field(), p.vars(), p.field()->one());
  return from(std::move(p), std::move(one));
}

RatFunc RatFunc::zero(FieldPtr F, std::vector<std::string> vars) {
  return from_poly(Poly::zero(std::move(F), std::move(vars)));
}

RatFunc RatFunc::one(FieldPtr F, std::vector<std::string> vars) {
  auto f = F;
  return from_poly(Poly::constant(std::move(F), std::move(vars), f->one()));
}

RatFunc RatFunc::constant(FieldPtr F, std::vector<std::string> vars, const mpq_class& c) {
  return from_poly(Poly::constant(std::move(F), std::move(vars), c));
}

RatFunc RatFunc::constant(FieldPtr F, std::vector<std::string> vars, FElem c) {
  return from_poly(Poly::constant(std::move(F), std::move(vars), std::move(c)));
}

RatFunc RatFunc::variable(FieldPtr F, std::vector<std::string> vars, const std::string& name) {
  return from_poly(Poly::variable(std::move(F), std::move(vars), name));
}

bool RatFunc::is_one() const { return num_.is_constant() && den_.is_constant() && num_ == den_; }

const Poly& RatFunc::as_poly() const {
  require(den_.is_constant() && den_.constant_value().is_one(),
          "rational function is not a polynomial");
  return num_;
}

RatFunc RatFunc::operator-() const {
  RatFunc r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  *this = from(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
  *this = from(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  return *this;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  *this = from(num_ * o.num_, den_ * o.den_);
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  require(!o.is_zero(), "division by zero rational function");
  *this = from(num_ * o.den_, den_ * o.num_);
  return *this;
}

RatFunc RatFunc::reciprocal() const {
  require(!is_zero(), "reciprocal of zero");
  return from(den_, num_);
}

RatFunc RatFunc::pow(long e) const {
  if (e < 0) return reciprocal().pow(-e);
  RatFunc acc = one(field(), vars());
  RatFunc b = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

FElem RatFunc::eval(const std::vector<FElem>& point) const {
  FElem d = den_.eval(point);
  require(!d.is_zero(), "denominator vanishes at the evaluation point");
  return num_.eval(point) / d;
}

RatFunc RatFunc::subst(const std::vector<RatFunc>& images) const {
  RatFunc n = poly_at(num_, images);
  RatFunc d = poly_at(den_, images);
  require(!d.is_zero(), "denominator collapses to zero under substitution");
  return n / d;
}

RatFunc RatFunc::lift(std::vector<std::string> new_vars) const {
  RatFunc r;
  r.num_ = num_.lift(new_vars);
  r.den_ = den_.lift(std::move(new_vars));
  // Padding exponent vectors with zeros at matching positions preserves the
  // grlex order, so monic-ness and coprimality survive the lift.
  return r;
}

RatFunc RatFunc::apply_galois(const GaloisGen& g) const {
  RatFunc r;
  r.num_ = num_.apply_galois(g);
  r.den_ = den_.apply_galois(g);
  // Galois fixes the leading 1 of the denominator and preserves coprimality,
  // so the result is already in normal form.
  return r;
}

std::string RatFunc::str() const {
  if (!valid()) return "<invalid>";
  if (den_.is_constant() && den_.constant_value().is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFunc poly_at(const Poly& p, const std::vector<RatFunc>& images) {
  require(p.valid(), "substitution into uninitialized polynomial");
  require(images.size() == p.vars().size(), "one image per variable required");
  require(!images.empty(), "need at least one variable image");
  RatFunc acc = RatFunc::zero(images[0].field(), images[0].vars());
  for (const auto& [e, c] : p.terms()) {
    RatFunc t = RatFunc::constant(acc.field(), acc.vars(), c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) t *= images[i].pow(e[i]);
    }
    acc += t;
  }
  return acc;
}

}  // namespace cremona
