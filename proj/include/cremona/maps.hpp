#pragma once

// Birational maps of the projective plane, in homogeneous coordinates and in
// the affine chart (x,y) -> [x:y:1].

#include <array>
#include <optional>

#include "cremona/matrix.hpp"

namespace cremona {

// [x:y:z] -> [P0:P1:P2] with the components coprime, homogeneous of equal
// degree, and scaled so the first nonzero component's leading coefficient
// is 1. The normal form makes equality of maps structural.
class ProjectiveMap {
 public:
  ProjectiveMap() = default;

  // Normalizes: strips the common polynomial factor, then rescales.
  ProjectiveMap(Poly p0, Poly p1, Poly p2);

  // For components known to be coprime already; skips the gcd computation,
  // which dominates at high degree, but keeps every other check and the
  // rescaling. The caller vouches for coprimality.
  static ProjectiveMap from_coprime(Poly p0, Poly p1, Poly p2);

  static const std::vector<std::string>& coords();  // {"x","y","z"}
  static ProjectiveMap identity(const FieldPtr& F);
  static ProjectiveMap from_matrix(const Mat<FElem>& m);
  // The standard quadratic involution [yz : xz : xy].
  static ProjectiveMap standard_quadratic(const FieldPtr& F);
  // [a*yz : b*xz : xy], an involution for any nonzero a, b.
  static ProjectiveMap scaled_quadratic(const FElem& a, const FElem& b);

  bool valid() const { return comps_[0].valid(); }
  const std::array<Poly, 3>& components() const { return comps_; }
  int degree() const { return comps_[0].total_degree(); }
  const FieldPtr& field() const { return comps_[0].field(); }

  // Image of a projective point; throws at a base point (all components 0).
  std::vector<FElem> apply(const std::vector<FElem>& pt) const;

  bool operator==(const ProjectiveMap& o) const { return comps_ == o.comps_; }
  bool operator!=(const ProjectiveMap& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::array<Poly, 3> comps_;
};

// f after g. Substitutes g into f and removes the common factor.
ProjectiveMap compose(const ProjectiveMap& f, const ProjectiveMap& g);

// f after g without stripping the common factor. Cheap when the normal form
// is not needed, e.g. for equality tests against another map.
std::array<Poly, 3> raw_compose(const ProjectiveMap& f, const ProjectiveMap& g);

// Whether two component triples define the same rational map, decided by
// cross products so neither side needs a gcd computation.
bool rational_maps_equal(const std::array<Poly, 3>& a, const std::array<Poly, 3>& b);

bool is_involution(const ProjectiveMap& f);

// Scale a point so its first nonzero coordinate is 1.
std::vector<FElem> normalize_point(std::vector<FElem> pt);
// Projective equality of coordinate vectors.
bool points_equal(const std::vector<FElem>& a, const std::vector<FElem>& b);

// The same map seen in the chart (x,y) -> [x:y:1].
struct AffinePairMap {
  RatFunc fx, fy;  // bivariate in x, y

  static const std::vector<std::string>& coords();  // {"x","y"}
  static AffinePairMap identity(const FieldPtr& F);

  bool operator==(const AffinePairMap& o) const { return fx == o.fx && fy == o.fy; }
  bool operator!=(const AffinePairMap& o) const { return !(*this == o); }
  std::string str() const;
};

AffinePairMap compose(const AffinePairMap& f, const AffinePairMap& g);
bool is_involution(const AffinePairMap& f);

ProjectiveMap to_projective(const AffinePairMap& f);
// Requires the third component to survive restriction to the chart.
AffinePairMap to_affine(const ProjectiveMap& f);

// An element of the group of maps ((ax+b)/(cx+d), (A(x)y+B(x))/(C(x)y+D(x))):
// a Moebius action on x and an x-dependent Moebius action on y.
struct JonqElement {
  Mat<FElem> base;     // 2x2, invertible
  Mat<RatFunc> fiber;  // 2x2 over K(x), invertible as rational functions

  JonqElement(Mat<FElem> m, Mat<RatFunc> mp);
  AffinePairMap to_affine_pair() const;
};

// The two displayed involutions whose composition (first after second) is
// (a*x, y); the overload taking a rational function A produces (x, A(x)*y).
std::pair<AffinePairMap, AffinePairMap> jonq1_factor_dilatation(const FElem& a);
std::pair<AffinePairMap, AffinePairMap> jonq1_factor_dilatation(const RatFunc& A);

// Post-compose a quadratic map with a linear change so the result is an
// involution. The three base points and the images of the lines joining them
// are caller-supplied; alpha is taken from the hint or searched among the
// finitely many frame-compatible candidates sending q_k to p_k.
struct QuadInvolution {
  Mat<FElem> alpha;
  ProjectiveMap iota;  // alpha after f, verified involutive
};
QuadInvolution quadratic_involution_from(
    const ProjectiveMap& f, const std::array<std::vector<FElem>, 3>& base_points,
    const std::array<std::vector<FElem>, 3>& line_images,
    const std::optional<Mat<FElem>>& to_frame = std::nullopt,
    const std::optional<Mat<FElem>>& alpha_hint = std::nullopt);

}  // namespace cremona
