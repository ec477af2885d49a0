#pragma once

// Quadratic spaces over exact scalars, valid in every characteristic.
//
// A form is kept as its upper-triangular coefficient matrix U, q(x) = x^T U x
// with U_ij the coefficient of x_i x_j (i <= j). Composing with a linear map
// M symmetrizes M^T U M back to upper form, so identities like q(Mx) = t q(x)
// are decided coefficient-by-coefficient with no polynomial engine involved.
// The scalar type S is FElem for towers and RatFunc for function fields.

#include <cstdint>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include "cremona/matrix.hpp"

namespace cremona {

inline long scalar_characteristic(const FElem& x) { return x.field()->characteristic(); }
inline long scalar_characteristic(const RatFunc& f) { return f.field()->characteristic(); }

inline FElem scalar_from_int(const FElem& like, long v) { return like.field()->from_int(v); }
inline RatFunc scalar_from_int(const RatFunc& like, long v) {
  return RatFunc::constant(like.field(), like.vars(), mpq_class(v));
}

template <class S>
class QuadSpace {
 public:
  // rows: the upper coefficient matrix; entries below the diagonal must be
  // zero (they are checked, not folded).
  static QuadSpace from_upper(Mat<S> upper) {
    if (upper.rows() != upper.cols()) throw FieldError("quadratic form needs a square matrix");
    QuadSpace sp;
    sp.n_ = upper.rows();
    for (std::size_t i = 0; i < sp.n_; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (!upper.at(i, j).is_zero())
          throw FieldError("upper coefficient matrix has entries below the diagonal");
    sp.U_ = std::move(upper);
    sp.delta_ = scalar_characteristic(sp.U_.at(0, 0)) == 2 ? 1 : 2;
    sp.gram_ = sp.compute_gram();
    return sp;
  }

  // Convenience: coefficient of x_i x_j for i <= j, everything else zero.
  static QuadSpace from_coeffs(std::size_t n, const S& exemplar,
                               const std::vector<std::tuple<std::size_t, std::size_t, S>>& cs) {
    Mat<S> U(n, n, zero_like(exemplar));
    for (const auto& [i, j, c] : cs) {
      if (i > j || j >= n) throw FieldError("bad coefficient index");
      U.at(i, j) = U.at(i, j) + c;
    }
    return from_upper(std::move(U));
  }

  std::size_t dim() const { return n_; }
  long delta() const { return delta_; }
  long characteristic() const { return scalar_characteristic(U_.at(0, 0)); }
  const Mat<S>& upper() const { return U_; }
  // Polar Gram matrix: b(e_i, e_j) = (q(e_i + e_j) - q(e_i) - q(e_j)) / delta.
  const Mat<S>& gram() const { return gram_; }
  S zero() const { return zero_like(U_.at(0, 0)); }
  S one() const { return one_like(U_.at(0, 0)); }

  S eval(const std::vector<S>& v) const {
    if (v.size() != n_) throw FieldError("vector dimension mismatch");
    S acc = zero();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) acc = acc + U_.at(i, j) * v[i] * v[j];
    return acc;
  }

  S polar(const std::vector<S>& x, const std::vector<S>& y) const {
    auto gy = gram_.mul_vec(y);
    S acc = zero();
    for (std::size_t i = 0; i < n_; ++i) acc = acc + x[i] * gy[i];
    return acc;
  }

  // Upper coefficient matrix of x |-> q(Mx).
  Mat<S> pullback_upper(const Mat<S>& M) const {
    Mat<S> W = M.transpose() * U_ * M;
    Mat<S> R(n_, n_, zero());
    for (std::size_t i = 0; i < n_; ++i) {
      R.at(i, i) = W.at(i, i);
      for (std::size_t j = i + 1; j < n_; ++j) R.at(i, j) = W.at(i, j) + W.at(j, i);
    }
    return R;
  }

  bool operator==(const QuadSpace& o) const { return U_ == o.U_; }

 private:
  Mat<S> compute_gram() const {
    Mat<S> G(n_, n_, zero());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        S c = i == j ? U_.at(i, i) + U_.at(i, i) : (i < j ? U_.at(i, j) : U_.at(j, i));
        if (delta_ == 2) {
          // Halving is exact: characteristic is not 2 on this branch.
          c = c / scalar_from_int(c, 2);
        }
        G.at(i, j) = c;
      }
    return G;
  }

  std::size_t n_ = 0;
  long delta_ = 2;
  Mat<S> U_;
  Mat<S> gram_;
};

template <class S>
using SpacePtr = std::shared_ptr<const QuadSpace<S>>;

enum class MapKind { General, Reflection, Transvection, NegatedReflection };

template <class S>
struct OrthMap {
  SpacePtr<S> space;
  Mat<S> matrix;
  S multiplier;  // q(Mx) = multiplier * q(x)
  MapKind kind = MapKind::General;

  bool is_isometry() const { return multiplier == one_like(multiplier); }
  S det() const { return matrix.det(); }
};

// Wrap a matrix as a similitude of the space, deriving and checking the
// multiplier. Throws if q(Mx) is not a scalar multiple of q(x).
template <class S>
OrthMap<S> make_similitude(const SpacePtr<S>& sp, Mat<S> M) {
  Mat<S> P = sp->pullback_upper(M);
  const Mat<S>& U = sp->upper();
  // Find the multiplier from the first nonzero coefficient of q.
  std::optional<S> lambda;
  for (std::size_t i = 0; i < sp->dim() && !lambda; ++i)
    for (std::size_t j = i; j < sp->dim() && !lambda; ++j)
      if (!U.at(i, j).is_zero()) lambda = P.at(i, j) / U.at(i, j);
  if (!lambda) throw FieldError("zero form cannot carry a similitude");
  if (lambda->is_zero()) throw FieldError("matrix collapses the form (multiplier 0)");
  if (!(U.scale(*lambda) == P)) throw FieldError("matrix is not a similitude of the form");
  return OrthMap<S>{sp, std::move(M), *lambda, MapKind::General};
}

template <class S>
OrthMap<S> make_isometry(const SpacePtr<S>& sp, Mat<S> M) {
  OrthMap<S> f = make_similitude(sp, std::move(M));
  if (!f.is_isometry()) throw FieldError("matrix is a similitude but not an isometry");
  return f;
}

// ---- radical and defect ----

enum class SpaceKind { NonDegenerate, Defect, Degenerate, Unknown };

template <class S>
struct DefectReport {
  std::vector<std::vector<S>> radical_basis;  // basis of the polar kernel
  SpaceKind kind = SpaceKind::Unknown;
  std::size_t defect = 0;  // = radical dimension when kind == Defect
};

namespace detail {
// Exhaustively decide whether q restricted to the span of `basis` has a
// nonzero zero. Only callable for FElem scalars over a finite field.
bool span_has_isotropic(const QuadSpace<FElem>& sp, const std::vector<std::vector<FElem>>& basis);
}  // namespace detail

template <class S>
DefectReport<S> radical_and_defect(const QuadSpace<S>& sp) {
  DefectReport<S> rep;
  rep.radical_basis = sp.gram().kernel();
  const std::size_t d = rep.radical_basis.size();
  if (d == 0) {
    rep.kind = SpaceKind::NonDegenerate;
    return rep;
  }
  if (d == 1) {
    // One-dimensional restriction c*t^2: anisotropic iff c != 0.
    S c = sp.eval(rep.radical_basis[0]);
    rep.kind = c.is_zero() ? SpaceKind::Degenerate : SpaceKind::Defect;
    rep.defect = c.is_zero() ? 0 : 1;
    return rep;
  }
  if constexpr (std::is_same_v<S, FElem>) {
    const FieldPtr& K = sp.upper().at(0, 0).field();
    if (K->finite() && K->order() <= 4096) {
      bool iso = detail::span_has_isotropic(sp, rep.radical_basis);
      rep.kind = iso ? SpaceKind::Degenerate : SpaceKind::Defect;
      rep.defect = iso ? 0 : d;
      return rep;
    }
  }
  rep.kind = SpaceKind::Unknown;
  return rep;
}

// ---- reflections ----

// tau_a(x) = x - delta * b(x,a)/q(a) * a. An involution fixing a's polar
// hyperplane; determinant -1 away from characteristic 2 (reflection) and +1
// in characteristic 2 (orthogonal transvection).
template <class S>
OrthMap<S> reflection(const SpacePtr<S>& sp, const std::vector<S>& a) {
  S qa = sp->eval(a);
  if (qa.is_zero()) throw FieldError("reflection vector is isotropic");
  auto ga = sp->gram().mul_vec(a);
  bool in_radical = true;
  for (const auto& x : ga)
    if (!x.is_zero()) in_radical = false;
  if (in_radical) throw FieldError("vector lies in the radical: identity transvection");

  const std::size_t n = sp->dim();
  S factor = scalar_from_int(qa, sp->delta()) / qa;
  Mat<S> M = Mat<S>::identity(n, qa);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M.at(i, j) = M.at(i, j) - factor * a[i] * ga[j];
  OrthMap<S> f = make_isometry(sp, std::move(M));
  f.kind = sp->characteristic() == 2 ? MapKind::Transvection : MapKind::Reflection;
  return f;
}

// ---- isotropy ----

enum class IsotropyStatus { IsotropicWitness, AnisotropicProved, AnisotropicByTheorem, Unknown };

template <class S>
struct IsotropyCertificate {
  IsotropyStatus status = IsotropyStatus::Unknown;
  std::vector<S> witness;  // nonzero with q(witness) = 0 when isotropic
};

struct SearchBudget {
  long height_bound = 50;                 // coordinate range for rational search
  std::uint64_t max_vectors = 5'000'000;  // cap on exhaustive enumeration
};

// Exhaustive over finite fields (decides); height-bounded integer search in
// characteristic zero (witness or unknown, never a silent anisotropy claim).
IsotropyCertificate<FElem> isotropy_search(const QuadSpace<FElem>& sp,
                                           const SearchBudget& budget = {});

// ---- Cartan-Dieudonne and the special orthogonal pipeline ----

template <class S>
std::size_t fixed_space_codim(const QuadSpace<S>& sp, const Mat<S>& M) {
  Mat<S> MI = M - Mat<S>::identity(sp.dim(), sp.zero());
  return MI.rank();
}

// Factor an isometry of an anisotropic space into reflections (transvections
// in characteristic 2). The factor count equals the codimension of the fixed
// space. The unfixed vector is always the first unfixed standard basis
// vector, so runs are reproducible.
template <class S>
std::vector<OrthMap<S>> cartan_dieudonne(const SpacePtr<S>& sp, const OrthMap<S>& phi,
                                         const IsotropyCertificate<S>& cert) {
  if (cert.status == IsotropyStatus::IsotropicWitness || cert.status == IsotropyStatus::Unknown)
    throw FieldError("factorization requires a certified anisotropic space");
  if (!phi.is_isometry()) throw FieldError("factorization input must be an isometry");

  const std::size_t n = sp->dim();
  std::vector<OrthMap<S>> factors;
  Mat<S> cur = phi.matrix;
  const Mat<S> I = Mat<S>::identity(n, sp->zero());
  for (std::size_t guard = 0; guard <= n; ++guard) {
    if (cur == I) return factors;
    // First standard basis vector moved by the current map.
    std::size_t moved = n;
    for (std::size_t j = 0; j < n && moved == n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        S want = i == j ? sp->one() : sp->zero();
        if (!(cur.at(i, j) == want)) {
          moved = j;
          break;
        }
      }
    }
    if (moved == n) throw FieldError("internal: map differs from identity but fixes all basis vectors");
    std::vector<S> w(n, sp->zero());
    for (std::size_t i = 0; i < n; ++i) {
      S vi = i == moved ? sp->one() : sp->zero();
      w[i] = vi - cur.at(i, moved);
    }
    OrthMap<S> tau = reflection(sp, w);
    factors.push_back(tau);
    cur = tau.matrix * cur;
  }
  throw FieldError("internal: factorization did not terminate within dim steps");
}

// An SO element of an odd-dimensional anisotropic space as a short product
// of involutions that each lie in SO themselves. Away from characteristic 2
// the reflections come in pairs and each gets negated (odd dimension makes
// -tau special orthogonal); in characteristic 2, SO = O and transvections
// are already special.
template <class S>
std::vector<OrthMap<S>> so_involution_factorization(const SpacePtr<S>& sp, const OrthMap<S>& phi,
                                                    const IsotropyCertificate<S>& cert) {
  const std::size_t n = sp->dim();
  if (n % 2 == 0) throw FieldError("special orthogonal factorization needs odd dimension");
  if (!(phi.det() == sp->one()))
    throw FieldError("input determinant is not 1");
  std::vector<OrthMap<S>> taus = cartan_dieudonne(sp, phi, cert);
  if (sp->characteristic() == 2) return taus;
  if (taus.size() % 2 != 0)
    throw FieldError("internal: determinant-1 input produced an odd reflection count");
  for (auto& t : taus) {
    t.matrix = Mat<S>(n, n, sp->zero()) - t.matrix;
    t.kind = MapKind::NegatedReflection;
  }
  return taus;
}

// Split a similitude of an odd-dimensional space as c * S with S in SO.
// The candidate scalar is lambda^((n+1)/2) / det(A); the contract is the
// post-hoc verification, not the formula.
template <class S>
std::pair<S, OrthMap<S>> go_to_so_split(const SpacePtr<S>& sp, const OrthMap<S>& A) {
  const std::size_t n = sp->dim();
  if (n % 2 == 0) throw FieldError("similitude split needs odd dimension");
  S det = A.det();
  if (det.is_zero()) throw FieldError("similitude is singular");
  S c = A.multiplier;
  // lambda^((n+1)/2)
  S lam_pow = sp->one();
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) lam_pow = lam_pow * A.multiplier;
  c = lam_pow / det;
  Mat<S> Smat = A.matrix.scale(sp->one() / c);
  OrthMap<S> Sm = make_similitude(sp, std::move(Smat));
  if (!Sm.is_isometry())
    throw FieldError("similitude split failed verification: result is not an isometry");
  if (!(Sm.det() == sp->one()))
    throw FieldError("similitude split failed verification: determinant is not 1");
  return {c, Sm};
}

// Tangent-line concurrency point of a ternary conic in characteristic 2: the
// polar Gram is (0,a,b; a,0,c; b,c,0) and every tangent passes through
// [c : b : a], which spans the radical.
template <class S>
std::vector<S> tangent_concurrency_point(const QuadSpace<S>& sp) {
  if (sp.characteristic() != 2) throw FieldError("tangent concurrency needs characteristic 2");
  if (sp.dim() != 3) throw FieldError("tangent concurrency needs a ternary form");
  const Mat<S>& G = sp.gram();
  if (G.is_zero())
    throw FieldError("polar form vanishes identically: conic is reducible over the closure");
  std::vector<S> pt = {G.at(1, 2), G.at(0, 2), G.at(0, 1)};  // [c : b : a]
  auto img = G.mul_vec(pt);
  for (const auto& x : img)
    if (!x.is_zero()) throw FieldError("internal: concurrency point is not in the radical");
  return pt;
}

}  // namespace cremona
