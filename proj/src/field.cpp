#include "cremona/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

namespace cremona {
namespace {

// Reasonable ceiling for exhaustive searches (roots, square roots, factor
// enumeration) in finite towers. Beyond this the caller must pass trust.
constexpr std::uint64_t kSearchCap = 200000;

void require(bool ok, const std::string& msg) {
  if (!ok) throw FieldError(msg);
}

std::string poly_row_str(const std::vector<mpq_class>& row, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = row.size(); i-- > 0;) {
    if (row[i] == 0 && !(first && i == 0)) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || row[i] != 1) os << rational_str(row[i]);
    if (i > 0) {
      if (row[i] != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

// Gauss-Jordan solve of A x = b over the base scalars. When p > 0 all
// entries are canonical residues and pivoting / division happens mod p.
bool solve_base_linear(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> b,
                       long p, std::vector<mpq_class>& out) {
  const std::size_t n = A.size();
  auto norm = [&](mpq_class& q) {
    if (p > 0) q = mpq_class(residue_mod(q, p));
  };
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) return false;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    mpq_class lead = A[col][col];
    for (std::size_t j = col; j < n; ++j) {
      A[col][j] /= lead;
      norm(A[col][j]);
    }
    b[col] /= lead;
    norm(b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      mpq_class f = A[r][col];
      for (std::size_t j = col; j < n; ++j) {
        A[r][j] -= f * A[col][j];
        norm(A[r][j]);
      }
      b[r] -= f * b[col];
      norm(b[r]);
    }
  }
  out = std::move(b);
  return true;
}

}  // namespace

mpq_class Field::norm_scalar(const mpq_class& q) const {
  if (p_ > 0) return mpq_class(residue_mod(q, p_));
  mpq_class r = q;
  r.canonicalize();
  return r;
}

FieldPtr Field::base(long p) {
  require(p == 0 || is_prime_small(p), "characteristic must be 0 or prime");
  // One canonical instance per characteristic, so towers built separately
  // over the same prime share their bottom field and embed across each other.
  static std::mutex mu;
  static std::map<long, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  FieldPtr& slot = cache[p];
  if (!slot) {
    auto F = std::shared_ptr<Field>(new Field());
    F->p_ = p;
    F->dim_ = 1;
    slot = F;
  }
  return slot;
}

FieldPtr Field::rationals() {
  static FieldPtr q = base(0);
  return q;
}

FieldPtr Field::prime_field(long p) {
  require(p > 0, "prime field needs positive characteristic");
  return base(p);
}

FieldPtr Field::make(const FieldSpec& spec) {
  FieldPtr F = base(spec.characteristic);
  for (const auto& row : spec.steps) {
    F = extend(F, row, spec.trust_irreducible);
  }
  return F;
}

FieldPtr Field::extend(const FieldPtr& parent, std::vector<mpq_class> poly, bool trust) {
  require(poly.size() >= 2, "extension step needs degree >= 1");
  require(poly.back() != 0, "extension step has zero leading coefficient");
  // Normalize to monic; the extension only depends on the monic form.
  const long p = parent->p_;
  if (p > 0) {
    for (auto& c : poly) c = mpq_class(residue_mod(c, p));
    require(poly.back() != 0, "leading coefficient vanishes mod p");
  }
  if (poly.back() != 1) {
    mpq_class lead = poly.back();
    for (auto& c : poly) c /= lead;
    if (p > 0)
      for (auto& c : poly) c = mpq_class(residue_mod(c, p));
  }

  parent->check_irreducible(poly, trust);

  auto F = std::shared_ptr<Field>(new Field());
  F->p_ = p;
  F->parent_ = parent;
  F->steps_ = parent->steps_;
  F->steps_.push_back(poly);
  F->stride_ = parent->stride_;
  F->stride_.push_back(parent->dim_);
  F->dim_ = parent->dim_ * (poly.size() - 1);

  // Power table for every step: gen^m reduced below deg, for m <= 2(deg-1).
  F->powtab_.clear();
  for (const auto& step : F->steps_) {
    const std::size_t d = step.size() - 1;
    std::vector<std::vector<mpq_class>> tab;
    tab.reserve(2 * d - 1);
    for (std::size_t m = 0; m + 1 <= d; ++m) {
      std::vector<mpq_class> row(d, 0);
      row[m] = 1;
      tab.push_back(std::move(row));
    }
    for (std::size_t m = d; m <= 2 * (d - 1); ++m) {
      // gen * previous row, then fold the overflow via the monic relation
      // gen^d = -(c0 + c1 gen + ... + c_{d-1} gen^{d-1}).
      const auto& prev = tab.back();
      std::vector<mpq_class> row(d, 0);
      for (std::size_t i = 0; i + 1 < d; ++i) row[i + 1] = prev[i];
      mpq_class top = prev[d - 1];
      if (top != 0) {
        for (std::size_t i = 0; i < d; ++i) row[i] -= top * step[i];
      }
      if (p > 0)
        for (auto& c : row) c = mpq_class(residue_mod(c, p));
      tab.push_back(std::move(row));
    }
    F->powtab_.push_back(std::move(tab));
  }
  F->derive_galois();
  return F;
}

void Field::check_irreducible(const std::vector<mpq_class>& poly, bool trust) const {
  const std::size_t deg = poly.size() - 1;
  if (deg == 1) return;

  auto too_hard = [&](const std::string& why) {
    require(trust, "cannot verify irreducibility (" + why +
                       "); pass trust_irreducible to accept " + poly_row_str(poly, "t"));
  };

  if (p_ > 0) {
    std::uint64_t ord;
    try {
      ord = order();
    } catch (const FieldError&) {
      too_hard("tower too large to enumerate");
      return;
    }
    if (deg > 4) {
      too_hard("degree above 4");
      return;
    }
    if (ord > kSearchCap) {
      too_hard("root search too large");
      return;
    }
    auto eval = [&](const FElem& x) {
      FElem acc = zero();
      FElem xp = one();
      for (std::size_t i = 0; i <= deg; ++i) {
        acc += xp * from_rational(poly[i]);
        if (i < deg) xp *= x;
      }
      return acc;
    };
    for (std::uint64_t i = 0; i < ord; ++i) {
      FElem x = nth(i);
      if (eval(x).is_zero()) {
        throw FieldError("step " + poly_row_str(poly, "t") + " is reducible: root t = " + x.str());
      }
    }
    if (deg == 4) {
      if (ord * ord > kSearchCap) {
        too_hard("quadratic-factor search too large");
        return;
      }
      // No roots; a factorization can only be into two irreducible monic
      // quadratics t^2 + u t + v. Check the remainder of division directly.
      for (std::uint64_t iu = 0; iu < ord; ++iu) {
        FElem u = nth(iu);
        for (std::uint64_t iv = 0; iv < ord; ++iv) {
          FElem v = nth(iv);
          // Divide t^4 + c3 t^3 + c2 t^2 + c1 t + c0 by t^2 + u t + v.
          FElem c3 = from_rational(poly[3]), c2 = from_rational(poly[2]);
          FElem c1 = from_rational(poly[1]), c0 = from_rational(poly[0]);
          FElem q1 = c3 - u;
          FElem q0 = c2 - v - u * q1;
          FElem r1 = c1 - u * q0 - v * q1;
          FElem r0 = c0 - v * q0;
          if (r1.is_zero() && r0.is_zero()) {
            throw FieldError("step " + poly_row_str(poly, "t") +
                             " is reducible: factor t^2 + (" + u.str() + ")t + (" + v.str() + ")");
          }
        }
      }
    }
    return;
  }

  // Characteristic zero. Over the bare rationals we have root tests and the
  // quartic two-quadratics check; over a tower of quadratics, a quadratic
  // step reduces to a squareness test handled by sqrt().
  if (dim_ == 1) {
    if (deg > 4) {
      too_hard("degree above 4");
      return;
    }
    if (deg == 2) {
      mpq_class disc = poly[1] * poly[1] - 4 * poly[0];
      if (auto w = rational_sqrt(disc)) {
        mpq_class root = (-poly[1] + *w) / 2;
        throw FieldError("step " + poly_row_str(poly, "t") +
                         " is reducible: root t = " + rational_str(root));
      }
      return;
    }
    // Rescale x -> y/L to a monic integer polynomial in y; irreducibility is
    // unchanged and Gauss's lemma applies.
    mpz_class L = 1;
    for (std::size_t i = 0; i < deg; ++i) {
      mpz_class den = poly[i].get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), L.get_mpz_t(), den.get_mpz_t());
      L = L / g * den;
    }
    std::vector<mpz_class> ip(deg + 1);
    ip[deg] = 1;
    mpz_class Lpow = 1;
    for (std::size_t i = deg; i-- > 0;) {
      Lpow *= L;
      mpq_class scaled = poly[i] * mpq_class(Lpow);
      ip[i] = scaled.get_num();  // denominator is 1 by construction of L
    }
    if (ip[0] == 0) {
      throw FieldError("step " + poly_row_str(poly, "t") + " is reducible: root t = 0");
    }
    mpz_class bound = abs(ip[0]);
    if (bound > mpz_class("1000000000000")) {
      too_hard("constant term too large for divisor search");
      return;
    }
    std::vector<mpz_class> divs;
    for (mpz_class d = 1; d * d <= bound; ++d) {
      if (bound % d == 0) {
        divs.push_back(d);
        divs.push_back(bound / d);
      }
    }
    auto eval_int = [&](const mpz_class& r) {
      mpz_class acc = 0;
      for (std::size_t i = deg + 1; i-- > 0;) acc = acc * r + ip[i];
      return acc;
    };
    for (const auto& d : divs) {
      for (int sgn : {1, -1}) {
        mpz_class r = sgn * d;
        if (eval_int(r) == 0) {
          mpq_class orig_root = mpq_class(r) / mpq_class(L);
          throw FieldError("step " + poly_row_str(poly, "t") +
                           " is reducible: root t = " + rational_str(orig_root));
        }
      }
    }
    if (deg == 4) {
      // y^4 + a y^3 + b y^2 + c y + d = (y^2 + p y + q)(y^2 + r y + s) with
      // integer p,q,r,s forces q s = d; enumerate divisor pairs.
      mpz_class a = ip[3], b = ip[2], c = ip[1], d0 = ip[0];
      for (const auto& dv : divs) {
        for (int sgn : {1, -1}) {
          mpz_class q = sgn * dv;
          if (q == 0 || d0 % q != 0) continue;
          mpz_class s = d0 / q;
          mpz_class disc = a * a - 4 * (b - q - s);
          if (disc < 0 || mpz_perfect_square_p(disc.get_mpz_t()) == 0) continue;
          mpz_class w;
          mpz_sqrt(w.get_mpz_t(), disc.get_mpz_t());
          for (int s2 : {1, -1}) {
            mpz_class num = a + s2 * w;
            if (num % 2 != 0) continue;
            mpz_class pp = num / 2, rr = a - pp;
            if (pp * s + q * rr == c) {
              throw FieldError("step " + poly_row_str(poly, "t") +
                               " is reducible: integer-model factor y^2 + " + pp.get_str() +
                               "y + " + q.get_str());
            }
          }
        }
      }
    }
    return;
  }

  // Nontrivial characteristic-zero tower.
  bool all_quadratic = true;
  for (std::size_t k = 0; k < num_steps(); ++k)
    if (step_degree(k) != 2) all_quadratic = false;
  if (deg == 2 && all_quadratic) {
    mpq_class disc = poly[1] * poly[1] - 4 * poly[0];
    if (auto w = sqrt(from_rational(disc))) {
      FElem root = (from_rational(-poly[1]) + *w) / from_int(2);
      throw FieldError("step " + poly_row_str(poly, "t") +
                       " is reducible over the tower: root t = " + root.str());
    }
    return;
  }
  too_hard("no decision procedure over this tower");
}

void Field::derive_galois() {
  gens_.clear();
  galois_complete_ = true;
  if (num_steps() == 0) return;

  auto self = shared_from_this();
  if (p_ > 0) {
    // Frobenius x -> x^p generates the (cyclic) automorphism group.
    GaloisGen frob;
    frob.name = "frob";
    for (std::size_t k = 0; k < num_steps(); ++k) {
      frob.step_images.push_back(gen(k).pow(p_));
    }
    for (std::size_t k = 0; k < num_steps(); ++k) {
      require(eval_step_poly(k, frob.step_images[k]).is_zero(),
              "internal: Frobenius image is not a root of step polynomial");
    }
    gens_.push_back(std::move(frob));
    return;
  }

  // Characteristic zero: each quadratic step contributes the conjugation
  // swapping its two roots and fixing every other generator. Steps of other
  // degrees have no derivable generator; flag the list as incomplete.
  for (std::size_t k = 0; k < num_steps(); ++k) {
    if (step_degree(k) == 1) continue;  // trivial step, nothing to conjugate
    if (step_degree(k) != 2) {
      galois_complete_ = false;
      continue;
    }
    GaloisGen g;
    g.name = "conj" + std::to_string(k);
    for (std::size_t j = 0; j < num_steps(); ++j) {
      if (j == k) {
        // Root sum of t^2 + c1 t + c0 is -c1.
        g.step_images.push_back(from_rational(-steps_[k][1]) - gen(k));
      } else {
        g.step_images.push_back(gen(j));
      }
    }
    for (std::size_t j = 0; j < num_steps(); ++j) {
      require(eval_step_poly(j, g.step_images[j]).is_zero(),
              "internal: conjugation image is not a root of step polynomial");
    }
    gens_.push_back(std::move(g));
  }
}

FElem Field::zero() const {
  return FElem(shared_from_this(), std::vector<mpq_class>(dim_, 0));
}

FElem Field::one() const { return from_rational(1); }

FElem Field::from_rational(const mpq_class& q) const {
  std::vector<mpq_class> c(dim_, 0);
  c[0] = norm_scalar(q);
  return FElem(shared_from_this(), std::move(c));
}

FElem Field::gen(std::size_t k) const {
  require(k < num_steps(), "generator index out of range");
  if (step_degree(k) == 1) {
    // Degree-1 step contributes no new basis direction; its generator is
    // the scalar -c0.
    return from_rational(-steps_[k][0]);
  }
  std::vector<mpq_class> c(dim_, 0);
  c[stride_[k]] = 1;
  return FElem(shared_from_this(), std::move(c));
}

FElem Field::element(std::vector<mpq_class> coeffs) const {
  require(coeffs.size() == dim_, "coefficient vector has wrong length");
  for (auto& q : coeffs) q = norm_scalar(q);
  return FElem(shared_from_this(), std::move(coeffs));
}

std::uint64_t Field::order() const {
  require(p_ > 0, "field is infinite");
  unsigned __int128 o = 1;
  for (std::size_t i = 0; i < dim_; ++i) {
    o *= static_cast<unsigned __int128>(p_);
    require(o <= static_cast<unsigned __int128>(UINT64_MAX), "field order overflows");
  }
  return static_cast<std::uint64_t>(o);
}

FElem Field::nth(std::uint64_t i) const {
  require(p_ > 0, "enumeration needs a finite field");
  std::vector<mpq_class> c(dim_, 0);
  for (std::size_t k = 0; k < dim_; ++k) {
    c[k] = static_cast<long>(i % static_cast<std::uint64_t>(p_));
    i /= static_cast<std::uint64_t>(p_);
  }
  return FElem(shared_from_this(), std::move(c));
}

FElem Field::embed(const FElem& x) const {
  require(x.valid(), "embedding an invalid element");
  if (x.field().get() == this) return x;
  const Field* anc = parent_.get();
  while (anc && anc != x.field().get()) anc = anc->parent_.get();
  require(anc != nullptr, "element does not belong to this tower");
  std::vector<mpq_class> c(dim_, 0);
  std::copy(x.coeffs().begin(), x.coeffs().end(), c.begin());
  return FElem(shared_from_this(), std::move(c));
}

std::vector<mpq_class> Field::mul_raw(const std::vector<mpq_class>& a,
                                      const std::vector<mpq_class>& b) const {
  std::vector<mpq_class> out(dim_, 0);
  const std::size_t s = num_steps();
  std::vector<std::size_t> alpha(s), beta(s);
  // Scratch spread list: (flat offset, accumulated scalar).
  std::vector<std::pair<std::size_t, mpq_class>> cur, next;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t k = 0; k < s; ++k) alpha[k] = (i / stride_[k]) % step_degree(k);
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b[j] == 0) continue;
      for (std::size_t k = 0; k < s; ++k) beta[k] = (j / stride_[k]) % step_degree(k);
      cur.clear();
      cur.emplace_back(0, a[i] * b[j]);
      for (std::size_t k = 0; k < s; ++k) {
        const auto& row = powtab_[k][alpha[k] + beta[k]];
        next.clear();
        for (const auto& [off, f] : cur) {
          for (std::size_t t = 0; t < row.size(); ++t) {
            if (row[t] == 0) continue;
            next.emplace_back(off + t * stride_[k], f * row[t]);
          }
        }
        cur.swap(next);
      }
      for (const auto& [off, f] : cur) out[off] += f;
    }
  }
  if (p_ > 0)
    for (auto& q : out) q = mpq_class(residue_mod(q, p_));
  else
    for (auto& q : out) q.canonicalize();
  return out;
}

FElem Field::apply(const GaloisGen& g, const FElem& x) const {
  require(x.field().get() == this, "element is not owned by this field");
  require(g.step_images.size() == num_steps(), "generator does not match tower shape");
  const std::size_t s = num_steps();
  // Powers of each generator image up to its step degree.
  std::vector<std::vector<FElem>> img_pow(s);
  for (std::size_t k = 0; k < s; ++k) {
    img_pow[k].push_back(one());
    for (std::size_t t = 1; t < step_degree(k); ++t)
      img_pow[k].push_back(img_pow[k].back() * g.step_images[k]);
  }
  FElem acc = zero();
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x.coeffs()[i] == 0) continue;
    FElem term = from_rational(x.coeffs()[i]);
    for (std::size_t k = 0; k < s; ++k) {
      std::size_t ak = (i / stride_[k]) % step_degree(k);
      if (ak > 0) term *= img_pow[k][ak];
    }
    acc += term;
  }
  return acc;
}

FElem Field::eval_step_poly(std::size_t k, const FElem& x) const {
  require(k < num_steps(), "step index out of range");
  FElem acc = zero(), xp = one();
  const auto& row = steps_[k];
  for (std::size_t i = 0; i < row.size(); ++i) {
    acc += xp * from_rational(row[i]);
    if (i + 1 < row.size()) xp *= x;
  }
  return acc;
}

std::optional<FElem> Field::sqrt(const FElem& x) const {
  require(x.field().get() == this, "element is not owned by this field");
  if (x.is_zero()) return zero();
  if (p_ > 0) {
    std::uint64_t ord = order();
    require(ord <= kSearchCap, "finite field too large for square-root search");
    for (std::uint64_t i = 1; i < ord; ++i) {
      FElem y = nth(i);
      if (y * y == x) return y;
    }
    return std::nullopt;
  }
  if (dim_ == 1) {
    auto r = rational_sqrt(x.base_value());
    if (!r) return std::nullopt;
    return from_rational(*r);
  }
  for (std::size_t k = 0; k < num_steps(); ++k)
    require(step_degree(k) == 2, "square roots need a tower of quadratic steps");

  // Write the top step as delta^2 = m with delta = gen + c1/2, and descend:
  // (a + b delta)^2 = (a^2 + b^2 m) + 2ab delta.
  const auto& step = steps_.back();
  mpq_class c1 = step[1], c0 = step[0];
  mpq_class m = c1 * c1 / 4 - c0;
  const FieldPtr& P = parent_;
  const std::size_t half = P->dim();
  auto sub = [&](std::size_t block) {
    std::vector<mpq_class> c(x.coeffs().begin() + block * half,
                             x.coeffs().begin() + (block + 1) * half);
    return FElem(P, std::move(c));
  };
  FElem x0 = sub(0), x1 = sub(1);
  FElem u = x0 - P->from_rational(c1 / 2) * x1;
  FElem v = x1;
  FElem mP = P->from_rational(m);
  FElem delta = gen(num_steps() - 1) + from_rational(c1 / 2);

  auto lift_pair = [&](const FElem& a, const FElem& b) {
    return embed(a) + embed(b) * delta;
  };
  if (v.is_zero()) {
    if (auto r = P->sqrt(u)) return embed(*r);
    if (!mP.is_zero()) {
      if (auto r = P->sqrt(u / mP)) return lift_pair(P->zero(), *r);
    }
    return std::nullopt;
  }
  auto s = P->sqrt(u * u - v * v * mP);
  if (!s) return std::nullopt;
  for (const FElem& w : {*s, -*s}) {
    FElem h = (u + w) / P->from_int(2);
    if (auto a = P->sqrt(h)) {
      if (!a->is_zero()) {
        FElem b = v / (P->from_int(2) * *a);
        FElem root = lift_pair(*a, b);
        if (root * root == x) return root;
      }
    }
  }
  return std::nullopt;
}

std::string Field::describe() const {
  std::ostringstream os;
  if (p_ == 0)
    os << "Q";
  else
    os << "F_" << p_;
  for (std::size_t k = 0; k < num_steps(); ++k) {
    os << "[g" << k << ": " << poly_row_str(steps_[k], "g" + std::to_string(k)) << " = 0]";
  }
  return os.str();
}

// ---- FElem ----

namespace {
const Field& owner(const FElem& x) {
  if (!x.valid()) throw FieldError("operation on uninitialized field element");
  return *x.field();
}
void check_same(const FElem& a, const FElem& b) {
  if (owner(a).same(owner(b))) return;
  throw FieldError("field mismatch between operands");
}
}  // namespace

bool FElem::is_zero() const {
  owner(*this);
  return std::all_of(c_.begin(), c_.end(), [](const mpq_class& q) { return q == 0; });
}

bool FElem::is_one() const {
  owner(*this);
  if (c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](const mpq_class& q) { return q == 0; });
}

mpq_class FElem::base_value() const {
  owner(*this);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) throw FieldError("element does not lie in the base field");
  }
  return c_[0];
}

FElem FElem::operator-() const {
  const Field& F = owner(*this);
  std::vector<mpq_class> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = F.norm_scalar(-c_[i]);
  return FElem(F_, std::move(c));
}

FElem& FElem::operator+=(const FElem& o) {
  const Field& F = owner(*this);
  check_same(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = F.norm_scalar(c_[i] + o.c_[i]);
  return *this;
}

FElem& FElem::operator-=(const FElem& o) {
  const Field& F = owner(*this);
  check_same(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = F.norm_scalar(c_[i] - o.c_[i]);
  return *this;
}

FElem& FElem::operator*=(const FElem& o) {
  const Field& F = owner(*this);
  check_same(*this, o);
  c_ = F.mul_raw(c_, o.c_);
  return *this;
}

FElem& FElem::operator/=(const FElem& o) { return *this *= o.inverse(); }

FElem FElem::inverse() const {
  const Field& F = owner(*this);
  if (is_zero()) throw FieldError("division by zero");
  const std::size_t n = F.dim();
  // Solve (this) * y = 1 via the multiplication matrix in the tower basis.
  std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<mpq_class> ej(n, 0);
    ej[j] = 1;
    std::vector<mpq_class> col = F.mul_raw(c_, ej);
    for (std::size_t i = 0; i < n; ++i) M[i][j] = col[i];
  }
  std::vector<mpq_class> rhs(n, 0), sol;
  rhs[0] = 1;
  if (!solve_base_linear(std::move(M), std::move(rhs), F.characteristic(), sol)) {
    throw FieldError("element is not invertible (internal inconsistency)");
  }
  for (auto& q : sol) q = F.norm_scalar(q);
  return FElem(F_, std::move(sol));
}

FElem FElem::pow(long e) const {
  const Field& F = owner(*this);
  if (e < 0) return inverse().pow(-e);
  FElem acc = F.one(), b = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

bool FElem::operator==(const FElem& o) const {
  check_same(*this, o);
  return c_ == o.c_;
}

std::string FElem::str() const {
  owner(*this);
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << rational_str(c_[i]);
  }
  os << "]";
  return os.str();
}

}  // namespace cremona
