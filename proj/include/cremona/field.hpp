#pragma once

// Exact arithmetic in towers of field extensions.
//
// A Field is either Q or F_p, extended by a chain of univariate irreducible
// polynomials whose coefficients live in the base (so a tower descriptor is
// just a characteristic plus a list of coefficient rows). Elements are flat
// coefficient vectors over the base of length prod(step degrees), indexed in
// mixed radix over the step generators. Galois generators are stored as the
// images of each step's generator and are derived automatically where the
// structure allows it: Frobenius for finite fields, root conjugation for
// quadratic steps in characteristic zero.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cremona/numeric.hpp"

namespace cremona {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FElem {
 public:
  FElem() = default;  // invalid until assigned; kept for container use

  const FieldPtr& field() const { return F_; }
  bool valid() const { return F_ != nullptr; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  // The base-field value of an element that lies in the base; throws if the
  // element has a component along any extension generator.
  mpq_class base_value() const;

  FElem operator-() const;
  FElem& operator+=(const FElem& o);
  FElem& operator-=(const FElem& o);
  FElem& operator*=(const FElem& o);
  FElem& operator/=(const FElem& o);
  friend FElem operator+(FElem a, const FElem& b) { return a += b; }
  friend FElem operator-(FElem a, const FElem& b) { return a -= b; }
  friend FElem operator*(FElem a, const FElem& b) { return a *= b; }
  friend FElem operator/(FElem a, const FElem& b) { return a /= b; }

  FElem inverse() const;
  FElem pow(long e) const;

  bool operator==(const FElem& o) const;
  bool operator!=(const FElem& o) const { return !(*this == o); }

  std::string str() const;

 private:
  friend class Field;
  FElem(FieldPtr F, std::vector<mpq_class> c) : F_(std::move(F)), c_(std::move(c)) {}

  FieldPtr F_;
  std::vector<mpq_class> c_;
};

// An automorphism of the tower, recorded by where it sends each step
// generator. Always fixes the base field pointwise.
struct GaloisGen {
  std::string name;
  std::vector<FElem> step_images;
};

struct FieldSpec {
  long characteristic = 0;
  // One row per extension step: c0..cd of a degree-d polynomial over the
  // base, highest coefficient last. Rows are normalized to monic.
  std::vector<std::vector<mpq_class>> steps;
  // Accept steps whose irreducibility the library cannot decide (degree > 4,
  // or enumeration too large). Without the flag such steps are rejected.
  bool trust_irreducible = false;
};

class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr rationals();
  static FieldPtr prime_field(long p);
  static FieldPtr make(const FieldSpec& spec);

  long characteristic() const { return p_; }
  std::size_t dim() const { return dim_; }
  std::size_t num_steps() const { return steps_.size(); }
  std::size_t step_degree(std::size_t k) const { return steps_[k].size() - 1; }
  // Monic coefficient row c0..cd of step k, canonical residues when p > 0.
  const std::vector<mpq_class>& step_poly(std::size_t k) const { return steps_[k]; }
  const FieldPtr& parent() const { return parent_; }

  const std::vector<GaloisGen>& galois_generators() const { return gens_; }
  // False when some step admits no derivable generator (the list may then be
  // incomplete as a generating set for the full automorphism group).
  bool galois_complete() const { return galois_complete_; }

  FElem zero() const;
  FElem one() const;
  FElem from_rational(const mpq_class& q) const;
  FElem from_int(long n) const { return from_rational(mpq_class(n)); }
  FElem gen(std::size_t k) const;
  FElem element(std::vector<mpq_class> coeffs) const;

  bool finite() const { return p_ > 0; }
  std::uint64_t order() const;  // p^dim; throws in characteristic zero
  FElem nth(std::uint64_t i) const;

  // Lift an element of this field or of any ancestor into this field.
  FElem embed(const FElem& x) const;

  FElem apply(const GaloisGen& g, const FElem& x) const;
  // Evaluate step k's polynomial at x (x in this field).
  FElem eval_step_poly(std::size_t k, const FElem& x) const;

  // Exact square root within the tower, when one exists. Supported for
  // finite fields (search) and characteristic-zero towers whose steps are
  // all quadratic (descent through the tower); otherwise throws.
  std::optional<FElem> sqrt(const FElem& x) const;

  bool same(const Field& o) const { return this == &o; }
  std::string describe() const;

 private:
  Field() = default;
  static FieldPtr base(long p);
  static FieldPtr extend(const FieldPtr& parent, std::vector<mpq_class> poly, bool trust);

  void check_irreducible(const std::vector<mpq_class>& poly, bool trust) const;
  void derive_galois();
  mpq_class norm_scalar(const mpq_class& q) const;
  std::vector<mpq_class> mul_raw(const std::vector<mpq_class>& a,
                                 const std::vector<mpq_class>& b) const;

  long p_ = 0;
  FieldPtr parent_;  // tower minus the last step; null for Q / F_p
  std::vector<std::vector<mpq_class>> steps_;
  std::vector<std::size_t> stride_;  // stride_[k] = prod of degrees below k
  std::size_t dim_ = 1;
  std::vector<GaloisGen> gens_;
  bool galois_complete_ = true;
  // powtab_[k][m] = coefficients of gen_k^m as a polynomial in gen_k over the
  // base, for m up to 2*(deg_k - 1); this is all products ever need.
  std::vector<std::vector<std::vector<mpq_class>>> powtab_;

  friend class FElem;
};

// Convenience: apply a Galois generator, deferring to the element's field.
inline FElem apply_galois(const GaloisGen& g, const FElem& x) {
  return x.field()->apply(g, x);
}

}  // namespace cremona
