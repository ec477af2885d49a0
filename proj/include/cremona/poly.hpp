#pragma once

// Sparse multivariate polynomials over a Field. Terms live in a map keyed by
// exponent vectors under the graded lexicographic order, with no zero
// coefficients stored, so equality of normal forms is plain structural
// equality. The variable list is part of a polynomial's identity: arithmetic
// requires both operands to share it.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cremona/field.hpp"

namespace cremona {

struct GrlexLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    int da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da < db;
    return a < b;  // same total degree: lexicographic on exponents
  }
};

class Poly {
 public:
  using TermMap = std::map<std::vector<int>, FElem, GrlexLess>;

  Poly() = default;  // invalid until assigned

  static Poly zero(FieldPtr F, std::vector<std::string> vars);
  static Poly constant(FieldPtr F, std::vector<std::string> vars, FElem c);
  static Poly constant(FieldPtr F, std::vector<std::string> vars, const mpq_class& c);
  static Poly variable(FieldPtr F, std::vector<std::string> vars, const std::string& name);
  static Poly monomial(FieldPtr F, std::vector<std::string> vars, std::vector<int> exps, FElem c);

  bool valid() const { return F_ != nullptr; }
  const FieldPtr& field() const { return F_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // The value of a constant polynomial (zero polynomial gives 0).
  FElem constant_value() const;
  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(std::size_t var_index) const;
  int degree_in(const std::string& var) const;
  std::size_t var_index(const std::string& var) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  Poly operator*(const FElem& c) const;
  Poly pow(unsigned e) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Grlex-leading data of a nonzero polynomial.
  const std::vector<int>& leading_exps() const;
  const FElem& leading_coeff() const;
  Poly monic() const;

  FElem eval(const std::vector<FElem>& point) const;
  // Total substitution: one image per variable, all over a common context.
  Poly subst(const std::vector<Poly>& images) const;
  // Rename/extend the variable context; every current variable must appear
  // in new_vars.
  Poly lift(std::vector<std::string> new_vars) const;

  Poly apply_galois(const GaloisGen& g) const;

  std::string str() const;

 private:
  Poly(FieldPtr F, std::vector<std::string> vars) : F_(std::move(F)), vars_(std::move(vars)) {}
  void add_term(std::vector<int> exps, FElem c);

  FieldPtr F_;
  std::vector<std::string> vars_;
  TermMap terms_;

  friend Poly poly_gcd(const Poly& a, const Poly& b);
  friend std::optional<Poly> divexact(const Poly& num, const Poly& den);
};

// Monic gcd; gcd(0,0) = 0. Computed by content/primitive-part recursion with
// pseudo-division, which stays exact over any of our coefficient fields.
Poly poly_gcd(const Poly& a, const Poly& b);

// Exact quotient num/den if den divides num, otherwise nullopt.
std::optional<Poly> divexact(const Poly& num, const Poly& den);

}  // namespace cremona
