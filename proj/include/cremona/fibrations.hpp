#pragma once

// Conic and line pencils on the plane, the induced quadratic space over the
// function field of the base, and the bridge from its orthogonal group back
// to fiber-preserving plane maps.

#include "cremona/maps.hpp"
#include "cremona/quadform.hpp"

namespace cremona {

enum class FibKind {
  Lines,      // lines through a rational center, pi = [l1 : l2]
  TwinPairs,  // conics through two conjugate point pairs on two lines
  Quartet     // conics through a degree-4 orbit, pi = [quartic form : y^2 - xz]
};

struct Fibration {
  FibKind kind;
  Poly q1, q2;         // the pencil generators, ternary forms over the base
  FieldPtr base;       // k
  FieldPtr ext;        // where the materialized base points live
  std::vector<FElem> center;                    // Lines only
  std::vector<FElem> coeffs;                    // TwinPairs: m0,m1,m0',m1'; Quartet: a,b,c,d
  std::vector<std::vector<FElem>> base_points;  // coordinates over ext
};

// Pencil of lines through a rational point.
Fibration build_lines_fibration(const FieldPtr& k, const std::vector<FElem>& center);

// Conics through the root pairs of two monic irreducible quadratics
// t^2 + m1*t + m0 (roots on z = 0) and t^2 + n1*t + n0 (roots on y = 0).
// Coefficients are given low-to-high: {m0, m1}, {n0, n1}.
Fibration build_twin_pairs_fibration(const FieldPtr& k, const std::array<FElem, 2>& m,
                                     const std::array<FElem, 2>& n);

// Conics through the orbit [r^2 : r : 1] of the roots of the monic
// irreducible quartic t^4 + a t^3 + b t^2 + c t + d.
Fibration build_quartet_fibration(const FieldPtr& k, const FElem& a, const FElem& b,
                                  const FElem& c, const FElem& d);

// The space (k(t)^3, q1 + t*q2). Conic pencils only; the degeneracy class is
// checked to be non-degenerate (char != 2) or defect one (char 2).
SpacePtr<RatFunc> pencil_quadratic_space(const Fibration& fib);

// Rational point on q1 = q2 = 0: exhaustive over finite fields,
// height-bounded over the rationals.
std::optional<std::vector<FElem>> common_zero_search(const Poly& q1, const Poly& q2,
                                                     const SearchBudget& budget = {});

// Isotropy of the pencil space, decided through the base locus: a rational
// base point gives a constant witness; otherwise the construction data
// (irreducible minimal polynomials) certify anisotropy, upgraded to a proof
// when the base-point search was exhaustive.
IsotropyCertificate<RatFunc> pencil_isotropy(const Fibration& fib, const SearchBudget& budget = {});

// The Moebius action alpha with pi . f = alpha . pi, as a cross-multiplied
// polynomial identity; nullopt if f does not permute the fibers.
std::optional<Mat<FElem>> preserves_fibration(const ProjectiveMap& f, const Fibration& fib);

// True when f maps every fiber to itself (alpha projectively the identity).
bool fixes_fibration(const ProjectiveMap& f, const Fibration& fib);

// Substitute t -> -q1/q2 into the matrix of a pencil-space similitude, clear
// denominators, and read the result as a plane map. The output is verified
// to fix the fibration.
ProjectiveMap pgo_to_cremona(const OrthMap<RatFunc>& A, const Fibration& fib);

// Factor a special-orthogonal element of an anisotropic pencil space into
// fiber-fixing involutions of the plane: at most dim (char 2) or dim - 1
// factors, ordered so their composition is pgo_to_cremona(A).
std::vector<ProjectiveMap> fiberwise_involution_factorization(const OrthMap<RatFunc>& A,
                                                              const Fibration& fib);

}  // namespace cremona
