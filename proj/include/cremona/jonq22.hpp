#pragma once

// Chart machinery for the conic pencil through two conjugate point pairs.
//
// Start from two quadratic extensions L = k(theta) and L' = k(theta') with
// composite K. Three coordinate changes alpha, beta, gamma straighten the
// pencil of conics through {[theta':1:0], [theta'^g:1:0]} and
// {[theta:0:1], [theta^g:0:1]} into the pencil of vertical lines, so maps
// preserving the pencil become pairs (M, M') in PGL2(K) x PGL2(K(x)) acting
// by (x, y) -> (M x, M'(x) y). The Galois action of K over k, transported
// through eps = gamma . beta . alpha, becomes an explicit semilinear action
// on that group; its fixed pairs are exactly the maps defined over k. The
// module builds the charts, the transported actions, the invariance test,
// the involution family (1/(mu x), 1/(lambda y)), and the reduction of an
// invariant pair to diagonal or antidiagonal shape.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cremona/fibrations.hpp"
#include "cremona/maps.hpp"

namespace cremona {

// A conjugation of the composite field, stored as tower generators to apply
// in order. The ones arising here square to the identity.
struct ChartConjugation {
  std::string name;
  std::vector<GaloisGen> gens;
};

FElem conjugate(const ChartConjugation& s, const FElem& x);
Poly conjugate(const ChartConjugation& s, const Poly& p);
RatFunc conjugate(const ChartConjugation& s, const RatFunc& f);
AffinePairMap conjugate(const ChartConjugation& s, const AffinePairMap& m);

// The straightening data for one pair of quadratic extensions.
struct ExorcistData {
  FieldPtr k;  // ground field, the rationals or a prime field
  FieldPtr K;  // composite; one quadratic step when L = L', two otherwise
  bool same_extension = false;

  // Minimal polynomials t^2 + c[1] t + c[0] over k, and the roots inside K.
  std::array<FElem, 2> theta_min, theta_prime_min;
  FElem theta, theta_conj;
  FElem theta_prime, theta_prime_conj;

  ChartConjugation g;                 // moves theta and theta'
  std::optional<ChartConjugation> h;  // moves theta only; absent when L = L'

  AffinePairMap alpha, alpha_inv;  // blows up the theta' pair on z = 0
  AffinePairMap beta, beta_inv;    // sends the theta pair to (0, inf), (inf, 0)
  AffinePairMap gamma, gamma_inv;  // (xy, y)
  AffinePairMap eps, eps_inv;      // gamma . beta . alpha and its inverse

  Fibration pencil;  // the same pencil as a plane fibration over k
};

// Semilinear chart map p -> plain(sigma(p)); sigma also says how coefficients
// conjugate when composing two such maps.
struct GaloisActionOnChart {
  std::string name;  // "g" or "h"
  ChartConjugation sigma;
  AffinePairMap plain;
};

// plain . plain^sigma; the identity exactly when the action has order two.
AffinePairMap semilinear_square(const GaloisActionOnChart& a);
// Group law (f . s)(p) = f(sigma_f(s(p))).
GaloisActionOnChart semilinear_compose(const GaloisActionOnChart& f,
                                       const GaloisActionOnChart& s);

// Build the chart tower for L = k(theta), L' = k(theta'). Each minimal
// polynomial is passed as {c0, c1} for t^2 + c1 t + c0, which must be
// irreducible over k. Every inverse law is verified symbolically before the
// data is returned. Inputs whose theta' coincides with its conjugate are
// rejected; over a perfect ground field this never happens for irreducible
// input.
ExorcistData exorcist_maps(const FieldPtr& k, const std::array<FElem, 2>& theta_min,
                           const std::array<FElem, 2>& theta_prime_min);

// Transport a Galois generator through eps, verify the result against its
// closed form, and return it. which is "g" or "h"; "h" needs L != L'.
GaloisActionOnChart conjugated_galois_action(const ExorcistData& ex, const std::string& which);

// Which of the centralizer conditions a pair satisfies. The h entries stay
// true when L = L' (there is no h condition to fail).
struct InvarianceReport {
  bool base_g = false;   // M equals M^g projectively
  bool fiber_g = false;  // the x-twisted fiber matrix equality for g
  bool base_h = true;
  bool fiber_h = true;
  bool ok() const { return base_g && fiber_g && base_h && fiber_h; }
};

// Test whether (M, M') commutes with the transported Galois action(s). Base
// entries live in K, fiber entries in K(x) with the single variable "x".
InvarianceReport invariance_check(const JonqElement& j, const ExorcistData& ex);

struct HFamilyInvolution {
  FElem lambda, mu;     // mu = lambda * lambda^g
  AffinePairMap iota;   // (1/(mu x), 1/(lambda y)) on the straightened chart
  ProjectiveMap plane;  // eps^{-1} . iota . eps, with coefficients in k
};

// The involution family on the straightened chart. lambda must be a nonzero
// element of K, with lambda * lambda^h = 1 when L != L'. The chart involution
// is verified invariant under the transported action(s), and its conjugate by
// eps is verified to have coefficients fixed by Gal(K/k) before being rebuilt
// over k; the plane map is checked to be an involution preserving the pencil.
HFamilyInvolution h_family_involution(const ExorcistData& ex, const FElem& lambda);

enum class PairShape { Diagonal, Antidiagonal };

struct NormalizedPair {
  PairShape shape;
  JonqElement pair;
};

// Reduce an invariant pair to an invariant diagonal or antidiagonal pair with
// the same base action, by zeroing half of a full fiber matrix and, for mixed
// shapes, trading a diagonal fiber against an antidiagonal base (or back)
// with an extra factor of x. Invariance is re-verified after every move.
NormalizedPair diag_antidiag_normalize(const JonqElement& j, const ExorcistData& ex);

}  // namespace cremona
