#include "cremona/maps.hpp"

#include <algorithm>

namespace cremona {
namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw FieldError(msg);
}

bool is_homogeneous(const Poly& p, int d) {
  for (const auto& [exps, c] : p.terms()) {
    int sum = 0;
    for (int e : exps) sum += e;
    if (sum != d) return false;
  }
  return true;
}

// u and v span the same line: nonzero and all 2x2 minors vanish.
bool proportional(const std::vector<FElem>& u, const std::vector<FElem>& v) {
  bool un = false, vn = false;
  for (const auto& x : u)
    if (!x.is_zero()) un = true;
  for (const auto& x : v)
    if (!x.is_zero()) vn = true;
  if (!un || !vn) return false;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (!(u[i] * v[j] == u[j] * v[i])) return false;
  return true;
}

}  // namespace

const std::vector<std::string>& ProjectiveMap::coords() {
  static const std::vector<std::string> c = {"x", "y", "z"};
  return c;
}

ProjectiveMap::ProjectiveMap(Poly p0, Poly p1, Poly p2) {
  comps_ = {std::move(p0), std::move(p1), std::move(p2)};
  for (const auto& p : comps_) {
    require(p.valid(), "projective map needs three polynomials");
    require(p.vars() == coords(), "projective map components must live in x, y, z");
    require(p.field()->same(*comps_[0].field()), "projective map components over mixed fields");
  }
  int d = -1;
  for (const auto& p : comps_)
    if (!p.is_zero()) d = std::max(d, p.total_degree());
  require(d >= 0, "projective map cannot be identically zero");
  for (const auto& p : comps_)
    require(p.is_zero() || (p.total_degree() == d && is_homogeneous(p, d)),
            "projective map components must be homogeneous of equal degree");

  Poly g = poly_gcd(poly_gcd(comps_[0], comps_[1]), comps_[2]);
  if (!g.is_constant()) {
    for (auto& p : comps_) p = *divexact(p, g);
  }
  for (const auto& p : comps_) {
    if (p.is_zero()) continue;
    FElem inv = p.leading_coeff().inverse();
    for (auto& q : comps_) q = q * inv;
    break;
  }
}

ProjectiveMap ProjectiveMap::from_coprime(Poly p0, Poly p1, Poly p2) {
  ProjectiveMap f;
  f.comps_ = {std::move(p0), std::move(p1), std::move(p2)};
  for (const auto& p : f.comps_) {
    require(p.valid(), "projective map needs three polynomials");
    require(p.vars() == coords(), "projective map components must live in x, y, z");
    require(p.field()->same(*f.comps_[0].field()), "projective map components over mixed fields");
  }
  int d = -1;
  for (const auto& p : f.comps_)
    if (!p.is_zero()) d = std::max(d, p.total_degree());
  require(d >= 0, "projective map cannot be identically zero");
  for (const auto& p : f.comps_)
    require(p.is_zero() || (p.total_degree() == d && is_homogeneous(p, d)),
            "projective map components must be homogeneous of equal degree");
  for (const auto& p : f.comps_) {
    if (p.is_zero()) continue;
    FElem inv = p.leading_coeff().inverse();
    for (auto& q : f.comps_) q = q * inv;
    break;
  }
  return f;
}

ProjectiveMap ProjectiveMap::identity(const FieldPtr& F) {
  return ProjectiveMap(Poly::variable(F, coords(), "x"), Poly::variable(F, coords(), "y"),
                       Poly::variable(F, coords(), "z"));
}

ProjectiveMap ProjectiveMap::from_matrix(const Mat<FElem>& m) {
  require(m.rows() == 3 && m.cols() == 3, "projective linear map needs a 3x3 matrix");
  require(!m.det().is_zero(), "projective linear map needs an invertible matrix");
  const FieldPtr& F = m.at(0, 0).field();
  std::array<Poly, 3> ps;
  for (std::size_t i = 0; i < 3; ++i) {
    Poly acc = Poly::zero(F, coords());
    for (std::size_t j = 0; j < 3; ++j)
      acc += Poly::variable(F, coords(), coords()[j]) * m.at(i, j);
    ps[i] = acc;
  }
  return ProjectiveMap(ps[0], ps[1], ps[2]);
}

ProjectiveMap ProjectiveMap::standard_quadratic(const FieldPtr& F) {
  return scaled_quadratic(F->one(), F->one());
}

ProjectiveMap ProjectiveMap::scaled_quadratic(const FElem& a, const FElem& b) {
  require(!a.is_zero() && !b.is_zero(), "quadratic involution scales must be nonzero");
  const FieldPtr& F = a.field();
  auto mono = [&](int i, int j, int k, const FElem& c) {
    return Poly::monomial(F, coords(), {i, j, k}, c);
  };
  return ProjectiveMap(mono(0, 1, 1, a), mono(1, 0, 1, b), mono(1, 1, 0, F->one()));
}

std::vector<FElem> ProjectiveMap::apply(const std::vector<FElem>& pt) const {
  require(pt.size() == 3, "projective point needs three coordinates");
  std::vector<FElem> img;
  bool nonzero = false;
  for (const auto& p : comps_) {
    img.push_back(p.eval(pt));
    if (!img.back().is_zero()) nonzero = true;
  }
  require(nonzero, "point is a base point of the map");
  return normalize_point(std::move(img));
}

std::string ProjectiveMap::str() const {
  return "[" + comps_[0].str() + " : " + comps_[1].str() + " : " + comps_[2].str() + "]";
}

ProjectiveMap compose(const ProjectiveMap& f, const ProjectiveMap& g) {
  auto r = raw_compose(f, g);
  return ProjectiveMap(r[0], r[1], r[2]);
}

std::array<Poly, 3> raw_compose(const ProjectiveMap& f, const ProjectiveMap& g) {
  require(f.field()->same(*g.field()), "composition over mixed fields");
  std::vector<Poly> images(g.components().begin(), g.components().end());
  std::array<Poly, 3> r;
  bool nonzero = false;
  for (std::size_t i = 0; i < 3; ++i) {
    r[i] = f.components()[i].subst(images);
    if (!r[i].is_zero()) nonzero = true;
  }
  require(nonzero, "composition undefined along g's image");
  return r;
}

bool rational_maps_equal(const std::array<Poly, 3>& a, const std::array<Poly, 3>& b) {
  bool a_zero = true, b_zero = true;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!a[i].is_zero()) a_zero = false;
    if (!b[i].is_zero()) b_zero = false;
  }
  if (a_zero || b_zero) return false;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

bool is_involution(const ProjectiveMap& f) {
  try {
    return rational_maps_equal(raw_compose(f, f),
                               ProjectiveMap::identity(f.field()).components());
  } catch (const FieldError&) {
    return false;
  }
}

std::vector<FElem> normalize_point(std::vector<FElem> pt) {
  for (const auto& x : pt)
    if (!x.is_zero()) {
      FElem inv = x.inverse();
      for (auto& y : pt) y = y * inv;
      return pt;
    }
  throw FieldError("cannot normalize the zero vector");
}

bool points_equal(const std::vector<FElem>& a, const std::vector<FElem>& b) {
  return a.size() == b.size() && proportional(a, b);
}

const std::vector<std::string>& AffinePairMap::coords() {
  static const std::vector<std::string> c = {"x", "y"};
  return c;
}

AffinePairMap AffinePairMap::identity(const FieldPtr& F) {
  return {RatFunc::variable(F, coords(), "x"), RatFunc::variable(F, coords(), "y")};
}

std::string AffinePairMap::str() const { return "(" + fx.str() + ", " + fy.str() + ")"; }

AffinePairMap compose(const AffinePairMap& f, const AffinePairMap& g) {
  std::vector<RatFunc> images = {g.fx, g.fy};
  return {f.fx.subst(images), f.fy.subst(images)};
}

bool is_involution(const AffinePairMap& f) {
  try {
    return compose(f, f) == AffinePairMap::identity(f.fx.field());
  } catch (const FieldError&) {
    return false;
  }
}

namespace {

// c * x^i y^j becomes c * x^i y^j z^(d-i-j).
Poly homogenize_to(const Poly& p, int d, const FieldPtr& F) {
  Poly acc = Poly::zero(F, ProjectiveMap::coords());
  for (const auto& [exps, c] : p.terms()) {
    int i = exps[0], j = exps[1];
    require(i + j <= d, "internal: homogenization degree too small");
    acc += Poly::monomial(F, ProjectiveMap::coords(), {i, j, d - i - j}, c);
  }
  return acc;
}

}  // namespace

ProjectiveMap to_projective(const AffinePairMap& f) {
  require(f.fx.valid() && f.fy.valid(), "affine map not initialized");
  require(f.fx.vars() == AffinePairMap::coords(), "affine map must live in x, y");
  const FieldPtr& F = f.fx.field();
  Poly A = f.fx.num() * f.fy.den();
  Poly B = f.fy.num() * f.fx.den();
  Poly C = f.fx.den() * f.fy.den();
  int d = std::max({A.total_degree(), B.total_degree(), C.total_degree()});
  return ProjectiveMap(homogenize_to(A, d, F), homogenize_to(B, d, F), homogenize_to(C, d, F));
}

AffinePairMap to_affine(const ProjectiveMap& f) {
  const FieldPtr& F = f.field();
  const auto& xy = AffinePairMap::coords();
  std::vector<Poly> chart = {Poly::variable(F, xy, "x"), Poly::variable(F, xy, "y"),
                             Poly::constant(F, xy, F->one())};
  Poly p0 = f.components()[0].subst(chart);
  Poly p1 = f.components()[1].subst(chart);
  Poly p2 = f.components()[2].subst(chart);
  require(!p2.is_zero(), "map sends the chart into the line at infinity");
  return {RatFunc::from(p0, p2), RatFunc::from(p1, p2)};
}

JonqElement::JonqElement(Mat<FElem> m, Mat<RatFunc> mp) : base(std::move(m)), fiber(std::move(mp)) {
  require(base.rows() == 2 && base.cols() == 2, "base action needs a 2x2 matrix");
  require(fiber.rows() == 2 && fiber.cols() == 2, "fiber action needs a 2x2 matrix");
  require(!base.det().is_zero(), "base action is singular");
  require(!fiber.det().is_zero(), "fiber action is singular");
}

AffinePairMap JonqElement::to_affine_pair() const {
  const FieldPtr& F = base.at(0, 0).field();
  const auto& xy = AffinePairMap::coords();
  RatFunc x = RatFunc::variable(F, xy, "x");
  RatFunc y = RatFunc::variable(F, xy, "y");
  auto cst = [&](const FElem& c) { return RatFunc::constant(F, xy, c); };

  RatFunc fx = (cst(base.at(0, 0)) * x + cst(base.at(0, 1))) /
               (cst(base.at(1, 0)) * x + cst(base.at(1, 1)));
  RatFunc A = fiber.at(0, 0).lift(xy), B = fiber.at(0, 1).lift(xy);
  RatFunc C = fiber.at(1, 0).lift(xy), D = fiber.at(1, 1).lift(xy);
  RatFunc fy = (A * y + B) / (C * y + D);
  return {fx, fy};
}

std::pair<AffinePairMap, AffinePairMap> jonq1_factor_dilatation(const FElem& a) {
  require(!a.is_zero(), "dilatation scale must be nonzero");
  const FieldPtr& F = a.field();
  const auto& xy = AffinePairMap::coords();
  RatFunc x = RatFunc::variable(F, xy, "x");
  RatFunc y = RatFunc::variable(F, xy, "y");
  AffinePairMap first = {x.reciprocal(), y};
  AffinePairMap second = {(RatFunc::constant(F, xy, a) * x).reciprocal(), y};
  return {first, second};
}

std::pair<AffinePairMap, AffinePairMap> jonq1_factor_dilatation(const RatFunc& A) {
  require(A.valid() && !A.is_zero(), "dilatation scale must be nonzero");
  require(A.vars() == AffinePairMap::coords(), "dilatation function must live in x, y");
  const FieldPtr& F = A.field();
  const auto& xy = AffinePairMap::coords();
  RatFunc x = RatFunc::variable(F, xy, "x");
  RatFunc y = RatFunc::variable(F, xy, "y");
  AffinePairMap first = {x, y.reciprocal()};
  AffinePairMap second = {x, (A * y).reciprocal()};
  return {first, second};
}

QuadInvolution quadratic_involution_from(const ProjectiveMap& f,
                                         const std::array<std::vector<FElem>, 3>& base_points,
                                         const std::array<std::vector<FElem>, 3>& line_images,
                                         const std::optional<Mat<FElem>>& to_frame,
                                         const std::optional<Mat<FElem>>& alpha_hint) {
  require(f.degree() == 2, "involution construction needs a quadratic map");
  const FieldPtr& F = f.field();
  const Mat<FElem> I = Mat<FElem>::identity(3, F->zero());
  Mat<FElem> C = to_frame.value_or(I);
  require(!C.det().is_zero(), "frame change must be invertible");

  // The frame change must move the base points to the coordinate points.
  for (std::size_t k = 0; k < 3; ++k) {
    auto w = C.mul_vec(base_points[k]);
    for (std::size_t i = 0; i < 3; ++i)
      require((i == k) != w[i].is_zero(), "frame change does not send base points to the frame");
  }

  std::vector<Mat<FElem>> candidates;
  if (alpha_hint) {
    candidates.push_back(*alpha_hint);
  } else {
    candidates.push_back(I);
    // Q collects the (frame-coordinate) images of the contracted lines; any
    // valid alpha is Q^-1 up to a frame permutation and the projective scale.
    Mat<FElem> Q(3, 3, F->zero());
    for (std::size_t k = 0; k < 3; ++k) {
      auto w = C.mul_vec(line_images[k]);
      for (std::size_t i = 0; i < 3; ++i) Q.at(i, k) = w[i];
    }
    if (!Q.det().is_zero()) {
      Mat<FElem> Qinv = Q.inverse();
      Mat<FElem> Cinv = C.inverse();
      std::array<std::size_t, 3> perm = {0, 1, 2};
      do {
        Mat<FElem> P(3, 3, F->zero());
        for (std::size_t k = 0; k < 3; ++k) P.at(perm[k], k) = F->one();
        candidates.push_back(Cinv * P * Qinv * C);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    // collinear line images leave only the identity candidate, which then
    // fails the proportionality screen and triggers the rejection below
  }

  for (const auto& alpha : candidates) {
    if (alpha.det().is_zero()) continue;
    bool sends = true;
    for (std::size_t k = 0; k < 3 && sends; ++k)
      sends = proportional(alpha.mul_vec(line_images[k]), base_points[k]);
    if (!sends) continue;
    ProjectiveMap iota = compose(ProjectiveMap::from_matrix(alpha), f);
    if (is_involution(iota)) return {alpha, iota};
  }
  throw FieldError("no frame-compatible linear change makes the map involutive "
                   "(collinear or mismatched data)");
}

}  // namespace cremona
