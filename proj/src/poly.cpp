#include "cremona/poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cremona {
namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw FieldError(msg);
}

std::string coeff_str(const FElem& c) {
  try {
    return rational_str(c.base_value());
  } catch (const FieldError&) {
    return c.str();
  }
}

}  // namespace

Poly Poly::zero(FieldPtr F, std::vector<std::string> vars) {
  return Poly(std::move(F), std::move(vars));
}

Poly Poly::constant(FieldPtr F, std::vector<std::string> vars, FElem c) {
  Poly p(std::move(F), std::move(vars));
  require(c.valid() && c.field().get() == p.F_.get(), "constant from a different field");
  p.add_term(std::vector<int>(p.vars_.size(), 0), std::move(c));
  return p;
}

Poly Poly::constant(FieldPtr F, std::vector<std::string> vars, const mpq_class& c) {
  FElem e = F->from_rational(c);
  return constant(std::move(F), std::move(vars), std::move(e));
}

Poly Poly::variable(FieldPtr F, std::vector<std::string> vars, const std::string& name) {
  Poly p(std::move(F), std::move(vars));
  std::vector<int> e(p.vars_.size(), 0);
  e[p.var_index(name)] = 1;
  p.add_term(std::move(e), p.F_->one());
  return p;
}

Poly Poly::monomial(FieldPtr F, std::vector<std::string> vars, std::vector<int> exps, FElem c) {
  Poly p(std::move(F), std::move(vars));
  require(exps.size() == p.vars_.size(), "exponent vector length mismatch");
  for (int e : exps) require(e >= 0, "negative exponent");
  p.add_term(std::move(exps), std::move(c));
  return p;
}

void Poly::add_term(std::vector<int> exps, FElem c) {
  if (c.is_zero()) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(std::move(exps), std::move(c));
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::size_t Poly::var_index(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  require(it != vars_.end(), "unknown variable " + var);
  return static_cast<std::size_t>(it - vars_.begin());
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

FElem Poly::constant_value() const {
  require(is_constant(), "polynomial is not constant");
  if (terms_.empty()) return F_->zero();
  return terms_.begin()->second;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.rbegin()->first;  // grlex max has max total degree
  int d = 0;
  for (int x : e) d += x;
  return d;
}

int Poly::degree_in(std::size_t var_i) const {
  int d = 0;
  bool seen = false;
  for (const auto& [e, c] : terms_) {
    (void)c;
    d = std::max(d, e[var_i]);
    seen = true;
  }
  return seen ? d : -1;
}

int Poly::degree_in(const std::string& var) const { return degree_in(var_index(var)); }

Poly Poly::operator-() const {
  Poly r(F_, vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

static void check_compatible(const Poly& a, const Poly& b) {
  if (!a.valid() || !b.valid()) throw FieldError("operation on uninitialized polynomial");
  if (a.field().get() != b.field().get()) throw FieldError("polynomial field mismatch");
  if (a.vars() != b.vars()) throw FieldError("polynomial variable-context mismatch");
}

Poly& Poly::operator+=(const Poly& o) {
  check_compatible(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_compatible(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  check_compatible(*this, o);
  Poly r(F_, vars_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      std::vector<int> e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      r.add_term(std::move(e), c1 * c2);
    }
  }
  terms_.swap(r.terms_);
  return *this;
}

Poly Poly::operator*(const FElem& c) const {
  require(c.valid() && c.field().get() == F_.get(), "scalar from a different field");
  Poly r(F_, vars_);
  if (c.is_zero()) return r;
  for (const auto& [e, q] : terms_) r.add_term(e, q * c);
  return r;
}

Poly Poly::pow(unsigned e) const {
  require(valid(), "pow of uninitialized polynomial");
  Poly acc = constant(F_, vars_, F_->one());
  Poly b = *this;
  while (e) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

bool Poly::operator==(const Poly& o) const {
  check_compatible(*this, o);
  return terms_ == o.terms_;
}

const std::vector<int>& Poly::leading_exps() const {
  require(!terms_.empty(), "zero polynomial has no leading term");
  return terms_.rbegin()->first;
}

const FElem& Poly::leading_coeff() const {
  require(!terms_.empty(), "zero polynomial has no leading term");
  return terms_.rbegin()->second;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  FElem inv = leading_coeff().inverse();
  return *this * inv;
}

FElem Poly::eval(const std::vector<FElem>& point) const {
  require(valid(), "eval on uninitialized polynomial");
  require(point.size() == vars_.size(), "evaluation point arity mismatch");
  FElem acc = F_->zero();
  for (const auto& [e, c] : terms_) {
    FElem t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) t *= point[i].pow(e[i]);
    }
    acc += t;
  }
  return acc;
}

Poly Poly::subst(const std::vector<Poly>& images) const {
  require(valid(), "subst on uninitialized polynomial");
  require(images.size() == vars_.size(), "one image per variable required");
  for (const auto& im : images) check_compatible(images[0], im);
  require(images[0].field().get() == F_.get(), "substitution changes the field");
  const FieldPtr& K = images[0].field();
  const std::vector<std::string>& W = images[0].vars();
  if (terms_.empty()) return Poly::zero(K, W);
  // Nested Horner evaluation: group terms by the exponent of one variable,
  // fold the groups from the highest power down, and recurse on the rest.
  // Every intermediate is a running sum times a small image power, which
  // stays far cheaper than forming a product of large powers per term.
  std::vector<std::vector<Poly>> pows(images.size());
  auto power = [&](std::size_t i, int e) -> const Poly& {
    auto& tab = pows[i];
    if (tab.empty()) tab.push_back(constant(K, W, F_->one()));
    while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * images[i]);
    return tab[static_cast<std::size_t>(e)];
  };
  struct TermRef {
    const std::vector<int>* e;
    const FElem* c;
  };
  std::vector<TermRef> all;
  all.reserve(terms_.size());
  for (const auto& [e, c] : terms_) all.push_back({&e, &c});
  std::function<Poly(const std::vector<TermRef>&, std::size_t)> fold =
      [&](const std::vector<TermRef>& ts, std::size_t idx) -> Poly {
    if (idx == vars_.size()) return constant(K, W, *ts.front().c);
    std::map<int, std::vector<TermRef>, std::greater<int>> buckets;
    for (const auto& t : ts) buckets[(*t.e)[idx]].push_back(t);
    Poly acc = Poly::zero(K, W);
    int prev = 0;
    bool first = true;
    for (const auto& [k, sub] : buckets) {
      if (!first && prev > k) acc = acc * power(idx, prev - k);
      acc += fold(sub, idx + 1);
      prev = k;
      first = false;
    }
    if (prev > 0) acc = acc * power(idx, prev);
    return acc;
  };
  return fold(all, 0);
}

Poly Poly::lift(std::vector<std::string> new_vars) const {
  require(valid(), "lift on uninitialized polynomial");
  std::vector<std::size_t> where(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
    require(it != new_vars.end(), "lift drops variable " + vars_[i]);
    where[i] = static_cast<std::size_t>(it - new_vars.begin());
  }
  Poly r(F_, std::move(new_vars));
  for (const auto& [e, c] : terms_) {
    std::vector<int> ne(r.vars_.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
    r.add_term(std::move(ne), c);
  }
  return r;
}

Poly Poly::apply_galois(const GaloisGen& g) const {
  Poly r(F_, vars_);
  for (const auto& [e, c] : terms_) r.add_term(e, F_->apply(g, c));
  return r;
}

std::string Poly::str() const {
  if (!valid()) return "<invalid>";
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    bool has_var = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
    bool unit = c.is_one();
    if (!unit || !has_var) os << coeff_str(c);
    bool printed = !unit || !has_var;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      printed = true;
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

// ---- division and gcd ----

std::optional<Poly> divexact(const Poly& num, const Poly& den) {
  check_compatible(num, den);
  require(!den.is_zero(), "division by the zero polynomial");
  Poly q(num.F_, num.vars_);
  Poly r = num;
  const auto& dexp = den.leading_exps();
  while (!r.is_zero()) {
    const auto& rexp = r.leading_exps();
    std::vector<int> e(rexp.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = rexp[i] - dexp[i];
      if (e[i] < 0) return std::nullopt;
    }
    FElem c = r.leading_coeff() / den.leading_coeff();
    Poly t = Poly::monomial(num.F_, num.vars_, std::move(e), std::move(c));
    q += t;
    r -= t * den;
  }
  return q;
}

namespace {

// View of p as a dense univariate polynomial in variable v, coefficients
// being polynomials in the remaining variables (same context, v-degree 0).
std::vector<Poly> coeffs_in(const Poly& p, std::size_t v) {
  int d = std::max(p.degree_in(v), 0);
  std::vector<Poly> out(static_cast<std::size_t>(d) + 1, Poly::zero(p.field(), p.vars()));
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> reste = e;
    int k = reste[v];
    reste[v] = 0;
    out[static_cast<std::size_t>(k)] += Poly::monomial(p.field(), p.vars(), std::move(reste), c);
  }
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

Poly assemble(const std::vector<Poly>& coeffs, const Poly& v_poly) {
  Poly acc = Poly::zero(coeffs[0].field(), coeffs[0].vars());
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = acc * v_poly + coeffs[k];
  }
  return acc;
}

int deg_v(const std::vector<Poly>& c) {
  return c.size() == 1 && c[0].is_zero() ? -1 : static_cast<int>(c.size()) - 1;
}

// Remainder of A by B in the main variable (both as dense coefficient
// lists). When lc(B) is constant this is plain Euclidean division; otherwise
// it is a pseudo-remainder, multiplying through by lc(B) per step, and the
// caller strips the growth via content division. The distinction matters: in
// the univariate-over-a-field case contents are trivial, so pseudo-division
// would blow coefficients up with nothing to strip them back down.
std::vector<Poly> pseudo_rem(std::vector<Poly> A, const std::vector<Poly>& B) {
  const Poly& lcB = B.back();
  const bool lcB_const = lcB.is_constant();
  FElem lcB_inv;
  if (lcB_const) lcB_inv = lcB.constant_value().inverse();
  while (deg_v(A) >= deg_v(B)) {
    int shift = deg_v(A) - deg_v(B);
    Poly lcA = A.back();
    if (lcB_const) {
      lcA = lcA * lcB_inv;  // subtract (lcA/lcB) x^shift B from A
    } else {
      for (auto& a : A) a *= lcB;  // subtract lcA x^shift B from lcB*A
    }
    for (std::size_t i = 0; i < B.size(); ++i) {
      A[static_cast<std::size_t>(shift) + i] -= B[i] * lcA;
    }
    while (A.size() > 1 && A.back().is_zero()) A.pop_back();
    if (deg_v(A) < 0) break;
  }
  return A;
}

Poly content_of(const std::vector<Poly>& coeffs) {
  Poly g = coeffs[0];
  for (std::size_t i = 1; i < coeffs.size(); ++i) g = poly_gcd(g, coeffs[i]);
  return g;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  check_compatible(a, b);
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant())
    return Poly::constant(a.field(), a.vars(), a.field()->one());

  // Main variable: the first one that actually occurs.
  std::size_t v = 0;
  while (a.degree_in(v) <= 0 && b.degree_in(v) <= 0) ++v;

  auto ca = coeffs_in(a, v), cb = coeffs_in(b, v);
  Poly cont_a = content_of(ca), cont_b = content_of(cb);
  Poly gcont = poly_gcd(cont_a, cont_b);

  auto strip = [&](std::vector<Poly>& c, const Poly& cont) {
    for (auto& x : c) {
      auto q = divexact(x, cont);
      require(q.has_value(), "internal: content does not divide coefficient");
      x = *q;
    }
  };
  strip(ca, cont_a);
  strip(cb, cont_b);

  // Primitive PRS on the main variable.
  std::vector<Poly> A = ca, B = cb;
  if (deg_v(A) < deg_v(B)) std::swap(A, B);
  while (deg_v(B) >= 0) {
    std::vector<Poly> R = pseudo_rem(A, B);
    if (deg_v(R) >= 0) {
      Poly c = content_of(R);
      strip(R, c);
      if (R.back().is_constant()) {
        // Keep remainders monic whenever we can; gcds are up to units.
        FElem inv = R.back().constant_value().inverse();
        for (auto& x : R) x = x * inv;
      }
    }
    A = std::move(B);
    B = std::move(R);
  }
  // A PRS ending at main-variable degree 0 means the primitive parts are
  // coprime: a v-free divisor of a v-primitive polynomial is a unit.
  Poly prim = Poly::constant(a.field(), a.vars(), a.field()->one());
  if (deg_v(A) > 0) {
    Poly v_poly = Poly::variable(a.field(), a.vars(), a.vars()[v]);
    prim = assemble(A, v_poly);
  }
  return (prim * gcont).monic();
}

}  // namespace cremona
