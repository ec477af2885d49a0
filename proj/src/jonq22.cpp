#include "cremona/jonq22.hpp"

#include <utility>

namespace cremona {
namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw FieldError(msg);
}

// Root of t^2 + m1 t + m0 inside F, when one exists there.
std::optional<FElem> quad_root(const FieldPtr& F, const FElem& m0, const FElem& m1) {
  if (F->finite()) {
    require(F->order() <= 100000, "finite field too large for a root search");
    for (std::uint64_t i = 0; i < F->order(); ++i) {
      FElem r = F->nth(i);
      if ((r * r + m1 * r + m0).is_zero()) return r;
    }
    return std::nullopt;
  }
  FElem half = F->from_rational(mpq_class(1, 2));
  auto s = F->sqrt(m1 * m1 * half * half - m0);
  if (!s) return std::nullopt;
  return *s - m1 * half;
}

const std::vector<std::string>& xvar() {
  static const std::vector<std::string> v = {"x"};
  return v;
}

RatFunc cst_x(const FieldPtr& K, const FElem& c) { return RatFunc::constant(K, xvar(), c); }

Mat<FElem> base2(const FieldPtr& K, const FElem& a, const FElem& b, const FElem& c,
                 const FElem& d) {
  Mat<FElem> m(2, 2, K->zero());
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

Mat<RatFunc> fiber2(const FieldPtr& K, const RatFunc& A, const RatFunc& B, const RatFunc& C,
                    const RatFunc& D) {
  Mat<RatFunc> m(2, 2, RatFunc::zero(K, xvar()));
  m.at(0, 0) = A;
  m.at(0, 1) = B;
  m.at(1, 0) = C;
  m.at(1, 1) = D;
  return m;
}

void check_inverse_pair(const AffinePairMap& f, const AffinePairMap& f_inv,
                        const std::string& which) {
  AffinePairMap id = AffinePairMap::identity(f.fx.field());
  require(compose(f, f_inv) == id && compose(f_inv, f) == id,
          "internal: " + which + " does not invert as displayed");
}

}  // namespace

FElem conjugate(const ChartConjugation& s, const FElem& x) {
  FElem r = x;
  for (const auto& g : s.gens) r = r.field()->apply(g, r);
  return r;
}

Poly conjugate(const ChartConjugation& s, const Poly& p) {
  Poly r = p;
  for (const auto& g : s.gens) r = r.apply_galois(g);
  return r;
}

RatFunc conjugate(const ChartConjugation& s, const RatFunc& f) {
  RatFunc r = f;
  for (const auto& g : s.gens) r = r.apply_galois(g);
  return r;
}

AffinePairMap conjugate(const ChartConjugation& s, const AffinePairMap& m) {
  return {conjugate(s, m.fx), conjugate(s, m.fy)};
}

AffinePairMap semilinear_square(const GaloisActionOnChart& a) {
  return compose(a.plain, conjugate(a.sigma, a.plain));
}

GaloisActionOnChart semilinear_compose(const GaloisActionOnChart& f,
                                       const GaloisActionOnChart& s) {
  GaloisActionOnChart r;
  r.name = f.name + s.name;
  r.plain = compose(f.plain, conjugate(f.sigma, s.plain));
  // Coefficients see s first, then f; gens apply left to right.
  r.sigma.name = r.name;
  r.sigma.gens = s.sigma.gens;
  r.sigma.gens.insert(r.sigma.gens.end(), f.sigma.gens.begin(), f.sigma.gens.end());
  return r;
}

ExorcistData exorcist_maps(const FieldPtr& k, const std::array<FElem, 2>& theta_min,
                           const std::array<FElem, 2>& theta_prime_min) {
  require(k != nullptr && k->num_steps() == 0,
          "ground field must be the rationals or a prime field");
  for (const auto& c : {theta_min[0], theta_min[1], theta_prime_min[0], theta_prime_min[1]})
    require(c.valid() && c.field()->same(*k),
            "minimal polynomial coefficients must live in the ground field");
  require(!quad_root(k, theta_min[0], theta_min[1]).has_value(),
          "the first quadratic is reducible over the ground field");
  require(!quad_root(k, theta_prime_min[0], theta_prime_min[1]).has_value(),
          "the second quadratic is reducible over the ground field");

  ExorcistData ex;
  ex.k = k;
  ex.theta_min = theta_min;
  ex.theta_prime_min = theta_prime_min;

  FieldSpec spec;
  spec.characteristic = k->characteristic();
  spec.steps.push_back({theta_min[0].base_value(), theta_min[1].base_value(), mpq_class(1)});
  FieldPtr L = Field::make(spec);

  auto inside = quad_root(L, L->embed(theta_prime_min[0]), L->embed(theta_prime_min[1]));
  if (inside) {
    ex.K = L;
    ex.same_extension = true;
    ex.theta = ex.K->gen(0);
    ex.theta_prime = *inside;
  } else {
    spec.steps.push_back(
        {theta_prime_min[0].base_value(), theta_prime_min[1].base_value(), mpq_class(1)});
    ex.K = Field::make(spec);
    ex.same_extension = false;
    ex.theta = ex.K->gen(0);
    ex.theta_prime = ex.K->gen(1);
  }
  const FieldPtr& K = ex.K;

  // The other root of each quadratic: the roots of t^2 + c1 t + c0 sum to -c1.
  ex.theta_conj = -K->embed(theta_min[1]) - ex.theta;
  ex.theta_prime_conj = -K->embed(theta_prime_min[1]) - ex.theta_prime;
  require(ex.theta_conj != ex.theta, "first generator equals its conjugate; degenerate data");
  require(ex.theta_prime_conj != ex.theta_prime,
          "second generator equals its conjugate; degenerate data");

  const auto& gens = K->galois_generators();
  require(K->galois_complete(), "internal: tower is missing Galois generators");
  if (ex.same_extension) {
    require(gens.size() == 1, "internal: one quadratic step should give one generator");
    ex.g = {"g", {gens[0]}};
  } else {
    require(gens.size() == 2, "internal: two quadratic steps should give two generators");
    // gens[0] flips theta and fixes theta'; together they give the full flip.
    ex.h = ChartConjugation{"h", {gens[0]}};
    ex.g = {"g", {gens[0], gens[1]}};
    require(conjugate(*ex.h, ex.theta) == ex.theta_conj &&
                conjugate(*ex.h, ex.theta_prime) == ex.theta_prime,
            "internal: h does not act as the first-step conjugation");
  }
  require(conjugate(ex.g, ex.theta) == ex.theta_conj &&
              conjugate(ex.g, ex.theta_prime) == ex.theta_prime_conj,
          "internal: g does not flip both generators");

  const auto& xy = AffinePairMap::coords();
  RatFunc X = RatFunc::variable(K, xy, "x");
  RatFunc Y = RatFunc::variable(K, xy, "y");
  auto cst = [&](const FElem& c) { return RatFunc::constant(K, xy, c); };

  RatFunc tp = cst(ex.theta_prime), tpc = cst(ex.theta_prime_conj);
  RatFunc t = cst(ex.theta), tc = cst(ex.theta_conj);

  ex.alpha = {X - tp * Y, X - tpc * Y};
  ex.alpha_inv = {(tpc * X - tp * Y) / (tpc - tp), (X - Y) / (tpc - tp)};
  ex.beta = {(X - t) / (tc - X), (Y - tc) / (t - Y)};
  ex.beta_inv = {(tc * X + t) / (X + cst(K->one())), (t * Y + tc) / (Y + cst(K->one()))};
  ex.gamma = {X * Y, Y};
  ex.gamma_inv = {X / Y, Y};
  ex.eps = compose(ex.gamma, compose(ex.beta, ex.alpha));
  ex.eps_inv = compose(ex.alpha_inv, compose(ex.beta_inv, ex.gamma_inv));

  check_inverse_pair(ex.alpha, ex.alpha_inv, "alpha");
  check_inverse_pair(ex.beta, ex.beta_inv, "beta");
  check_inverse_pair(ex.gamma, ex.gamma_inv, "gamma");
  check_inverse_pair(ex.eps, ex.eps_inv, "eps");

  ex.pencil = build_twin_pairs_fibration(k, {theta_prime_min[0], theta_prime_min[1]},
                                         {theta_min[0], theta_min[1]});
  return ex;
}

GaloisActionOnChart conjugated_galois_action(const ExorcistData& ex, const std::string& which) {
  require(which == "g" || which == "h", "the action name must be g or h");
  GaloisActionOnChart act;
  act.name = which;
  if (which == "g") {
    act.sigma = ex.g;
  } else {
    require(ex.h.has_value(), "the h action needs two distinct extensions");
    act.sigma = *ex.h;
  }

  const FieldPtr& K = ex.K;
  const auto& xy = AffinePairMap::coords();
  RatFunc X = RatFunc::variable(K, xy, "x");
  RatFunc Y = RatFunc::variable(K, xy, "y");
  act.plain = which == "g" ? AffinePairMap{X, X / Y}
                           : AffinePairMap{X.reciprocal(), Y.reciprocal()};

  // Transport the raw conjugation through eps and compare with the closed
  // form: eps . sigma . eps^{-1} has plain part eps . (eps^{-1})^sigma.
  AffinePairMap transported = compose(ex.eps, conjugate(act.sigma, ex.eps_inv));
  require(transported == act.plain, "transported action does not match its closed form");
  require(semilinear_square(act) == AffinePairMap::identity(K),
          "transported action does not square to the identity");
  return act;
}

InvarianceReport invariance_check(const JonqElement& j, const ExorcistData& ex) {
  const FieldPtr& K = ex.K;
  require(j.base.at(0, 0).field()->same(*K), "base action must live over the composite field");
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t l = 0; l < 2; ++l)
      require(j.fiber.at(i, l).field()->same(*K) && j.fiber.at(i, l).vars() == xvar(),
              "fiber action must be univariate in x over the composite field");

  RatFunc x = RatFunc::variable(K, xvar(), "x");
  const FElem &a = j.base.at(0, 0), &b = j.base.at(0, 1);
  const FElem &c = j.base.at(1, 0), &d = j.base.at(1, 1);
  const RatFunc &A = j.fiber.at(0, 0), &B = j.fiber.at(0, 1);
  const RatFunc &C = j.fiber.at(1, 0), &D = j.fiber.at(1, 1);

  InvarianceReport rep;

  auto cg = [&](const FElem& e) { return conjugate(ex.g, e); };
  Mat<FElem> mg = base2(K, cg(a), cg(b), cg(c), cg(d));
  rep.base_g = pgl_equal(j.base, mg);

  // In the straightened chart, commuting with the transported g twists the
  // fiber matrix by x on one side and by the base Moebius rows on the other.
  RatFunc l1 = cst_x(K, cg(a)) * x + cst_x(K, cg(b));
  RatFunc l2 = cst_x(K, cg(c)) * x + cst_x(K, cg(d));
  auto fg = [&](const RatFunc& f) { return conjugate(ex.g, f); };
  Mat<RatFunc> lhs_g = fiber2(K, A * x, B, C * x, D);
  Mat<RatFunc> rhs_g = fiber2(K, fg(D) * l1, fg(C) * l1, fg(B) * l2, fg(A) * l2);
  rep.fiber_g = pgl_equal(lhs_g, rhs_g);

  if (ex.h) {
    auto ch = [&](const FElem& e) { return conjugate(*ex.h, e); };
    rep.base_h = pgl_equal(j.base, base2(K, ch(d), ch(c), ch(b), ch(a)));

    std::vector<RatFunc> inv = {x.reciprocal()};
    auto fh = [&](const RatFunc& f) { return conjugate(*ex.h, f); };
    Mat<RatFunc> lhs_h =
        fiber2(K, A.subst(inv), B.subst(inv), C.subst(inv), D.subst(inv));
    Mat<RatFunc> rhs_h = fiber2(K, fh(D), fh(C), fh(B), fh(A));
    rep.fiber_h = pgl_equal(lhs_h, rhs_h);
  }
  return rep;
}

HFamilyInvolution h_family_involution(const ExorcistData& ex, const FElem& lambda) {
  const FieldPtr& K = ex.K;
  require(lambda.valid() && lambda.field()->same(*K), "lambda must live in the composite field");
  require(!lambda.is_zero(), "lambda must be nonzero");
  if (ex.h)
    require((lambda * conjugate(*ex.h, lambda)).is_one(),
            "lambda times its h conjugate must be 1 when the extensions differ");

  HFamilyInvolution out;
  out.lambda = lambda;
  out.mu = lambda * conjugate(ex.g, lambda);

  const auto& xy = AffinePairMap::coords();
  RatFunc X = RatFunc::variable(K, xy, "x");
  RatFunc Y = RatFunc::variable(K, xy, "y");
  out.iota = {(RatFunc::constant(K, xy, out.mu) * X).reciprocal(),
              (RatFunc::constant(K, xy, lambda) * Y).reciprocal()};
  require(is_involution(out.iota), "internal: chart map is not an involution");

  RatFunc one_x = RatFunc::one(K, xvar());
  JonqElement pair(base2(K, K->zero(), K->one(), out.mu, K->zero()),
                   fiber2(K, RatFunc::zero(K, xvar()), one_x, cst_x(K, lambda),
                          RatFunc::zero(K, xvar())));
  require(invariance_check(pair, ex).ok(), "chart involution fails Galois invariance");

  AffinePairMap chart = compose(ex.eps_inv, compose(out.iota, ex.eps));
  ProjectiveMap over_K = to_projective(chart);

  // Descent: a map fixed by every generator of the Galois group has its
  // normalized coefficients in the ground field, coordinate by coordinate.
  const auto& comps = over_K.components();
  for (const auto& gg : K->galois_generators())
    for (const auto& comp : comps)
      require(comp.apply_galois(gg) == comp,
              "conjugated involution does not descend to the ground field");

  std::array<Poly, 3> down;
  for (int i = 0; i < 3; ++i) {
    Poly acc = Poly::zero(ex.k, ProjectiveMap::coords());
    for (const auto& [exps, coeff] : comps[i].terms())
      acc += Poly::monomial(ex.k, ProjectiveMap::coords(), exps,
                            ex.k->from_rational(coeff.base_value()));
    down[i] = acc;
  }
  out.plane = ProjectiveMap(down[0], down[1], down[2]);
  require(is_involution(out.plane), "internal: descended map is not an involution");
  require(preserves_fibration(out.plane, ex.pencil).has_value(),
          "internal: descended map does not preserve the pencil");
  return out;
}

NormalizedPair diag_antidiag_normalize(const JonqElement& j, const ExorcistData& ex) {
  require(invariance_check(j, ex).ok(), "pair is not Galois invariant");
  const FieldPtr& K = ex.K;
  RatFunc x = RatFunc::variable(K, xvar(), "x");
  RatFunc zero = RatFunc::zero(K, xvar());

  auto reverified = [&](Mat<FElem> base, Mat<RatFunc> fiber) {
    JonqElement out(std::move(base), std::move(fiber));
    require(invariance_check(out, ex).ok(), "internal: normalization move broke invariance");
    return out;
  };

  const bool diag_m = j.base.at(0, 1).is_zero() && j.base.at(1, 0).is_zero();
  const bool anti_m = j.base.at(0, 0).is_zero() && j.base.at(1, 1).is_zero();
  require(diag_m || anti_m, "internal: invariant pair has a mixed base matrix");

  JonqElement cur = j;
  if (!cur.fiber.at(0, 0).is_zero() && !cur.fiber.at(0, 1).is_zero()) {
    // Full fiber matrix: either half of it already commutes on its own.
    // Keep the half matching the base shape so one move suffices.
    if (anti_m)
      cur = reverified(cur.base, fiber2(K, zero, cur.fiber.at(0, 1), cur.fiber.at(1, 0), zero));
    else
      cur = reverified(cur.base, fiber2(K, cur.fiber.at(0, 0), zero, zero, cur.fiber.at(1, 1)));
  }

  const bool diag_mp = cur.fiber.at(0, 1).is_zero();
  if (diag_mp == diag_m) return {diag_m ? PairShape::Diagonal : PairShape::Antidiagonal, cur};

  if (diag_mp) {
    // Base antidiagonal, fiber diagonal: multiply the fiber by x crosswise.
    JonqElement out = reverified(
        cur.base, fiber2(K, zero, x * cur.fiber.at(0, 0), cur.fiber.at(1, 1), zero));
    return {PairShape::Antidiagonal, std::move(out)};
  }
  // Base diagonal, fiber antidiagonal: swap the base rows and twist by x.
  JonqElement out = reverified(
      base2(K, K->zero(), cur.base.at(1, 1), cur.base.at(0, 0), K->zero()),
      fiber2(K, zero, x * cur.fiber.at(1, 0), cur.fiber.at(0, 1), zero));
  return {PairShape::Antidiagonal, std::move(out)};
}

}  // namespace cremona
