#pragma once

// Quotients of multivariate polynomials in normal form: gcd(num, den) = 1
// and den monic under grlex, so equality is structural. Division by a
// rational function whose numerator is zero throws.

#include <string>
#include <vector>

#include "cremona/poly.hpp"

namespace cremona {

class RatFunc {
 public:
  RatFunc() = default;  // invalid until assigned

  static RatFunc from(Poly num, Poly den);
  static RatFunc from_poly(Poly p);
  static RatFunc zero(FieldPtr F, std::vector<std::string> vars);
  static RatFunc one(FieldPtr F, std::vector<std::string> vars);
  static RatFunc constant(FieldPtr F, std::vector<std::string> vars, const mpq_class& c);
  static RatFunc constant(FieldPtr F, std::vector<std::string> vars, FElem c);
  static RatFunc variable(FieldPtr F, std::vector<std::string> vars, const std::string& name);

  bool valid() const { return num_.valid(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }
  const std::vector<std::string>& vars() const { return num_.vars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_poly() const { return den_.is_constant(); }
  // For den == 1 only; throws otherwise.
  const Poly& as_poly() const;
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  FElem constant_value() const { return num_.constant_value() / den_.constant_value(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc reciprocal() const;
  RatFunc pow(long e) const;

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  FElem eval(const std::vector<FElem>& point) const;
  RatFunc subst(const std::vector<RatFunc>& images) const;
  RatFunc apply_galois(const GaloisGen& g) const;
  // Reinterpret in a larger variable context (new_vars must contain vars()).
  RatFunc lift(std::vector<std::string> new_vars) const;

  std::string str() const;

 private:
  Poly num_, den_;
};

// Evaluate a polynomial with rational-function images for its variables.
RatFunc poly_at(const Poly& p, const std::vector<RatFunc>& images);

}  // namespace cremona
