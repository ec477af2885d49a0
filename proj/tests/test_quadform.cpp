#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cremona/quadform.hpp"
#include "test_util.hpp"

using namespace cremona;

namespace {

SpacePtr<FElem> diag_space(const FieldPtr& K, const std::vector<long>& ds) {
  Mat<FElem> U(ds.size(), ds.size(), K->zero());
  for (std::size_t i = 0; i < ds.size(); ++i) U.at(i, i) = K->from_int(ds[i]);
  return std::make_shared<const QuadSpace<FElem>>(QuadSpace<FElem>::from_upper(U));
}

// x1^2 + x0*x2 over the given field.
SpacePtr<FElem> conic_x1sq_x0x2(const FieldPtr& K) {
  Mat<FElem> U(3, 3, K->zero());
  U.at(1, 1) = K->one();
  U.at(0, 2) = K->one();
  return std::make_shared<const QuadSpace<FElem>>(QuadSpace<FElem>::from_upper(U));
}

std::vector<FElem> rand_vec(const FieldPtr& K, std::size_t n, std::mt19937& rng) {
  std::vector<FElem> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(testutil::random_element(K, rng));
  return v;
}

// A vector usable as a reflection axis: anisotropic and outside the radical.
std::vector<FElem> rand_axis(const SpacePtr<FElem>& sp, std::mt19937& rng) {
  const FieldPtr& K = sp->upper().at(0, 0).field();
  while (true) {
    auto v = rand_vec(K, sp->dim(), rng);
    if (sp->eval(v).is_zero()) continue;
    auto gv = sp->gram().mul_vec(v);
    bool rad = true;
    for (const auto& x : gv)
      if (!x.is_zero()) rad = false;
    if (!rad) return v;
  }
}

OrthMap<FElem> random_reflection_product(const SpacePtr<FElem>& sp, int count, std::mt19937& rng) {
  Mat<FElem> M = Mat<FElem>::identity(sp->dim(), sp->zero());
  for (int i = 0; i < count; ++i) M = reflection(sp, rand_axis(sp, rng)).matrix * M;
  return make_isometry(sp, M);
}

FElem nonsquare_of(const FieldPtr& K) {
  for (std::uint64_t i = 0; i < K->order(); ++i) {
    FElem c = K->nth(i);
    if (!c.is_zero() && !K->sqrt(c)) return c;
  }
  throw std::runtime_error("field has no nonsquare");
}

}  // namespace

TEST_CASE("polar form matches its definition and the gram matrix is symmetric") {
  std::mt19937 rng(7001);
  auto check_space = [&](const SpacePtr<FElem>& sp) {
    const FieldPtr& K = sp->upper().at(0, 0).field();
    FElem delta = K->from_int(sp->delta());
    FElem two = K->from_int(2);
    for (std::size_t i = 0; i < sp->dim(); ++i)
      for (std::size_t j = 0; j < sp->dim(); ++j)
        CHECK(sp->gram().at(i, j) == sp->gram().at(j, i));
    for (int trial = 0; trial < 25; ++trial) {
      auto x = rand_vec(K, sp->dim(), rng);
      auto y = rand_vec(K, sp->dim(), rng);
      // b against its defining formula
      std::vector<FElem> xy;
      for (std::size_t i = 0; i < sp->dim(); ++i) xy.push_back(x[i] + y[i]);
      FElem lhs = delta * sp->polar(x, y);
      FElem rhs = sp->eval(xy) - sp->eval(x) - sp->eval(y);
      CHECK(lhs == rhs);
      CHECK(delta * sp->polar(x, x) == two * sp->eval(x));
    }
  };
  check_space(diag_space(Field::rationals(), {1, 1, 1}));
  check_space(diag_space(Field::prime_field(3), {1, 1}));
  check_space(conic_x1sq_x0x2(Field::prime_field(2)));
}

TEST_CASE("radical and defect classification") {
  auto F2 = Field::prime_field(2);
  auto Q = Field::rationals();

  SUBCASE("x1^2 + x0 x2 in characteristic 2 has a one-dimensional anisotropic radical") {
    auto sp = conic_x1sq_x0x2(F2);
    auto rep = radical_and_defect(*sp);
    REQUIRE(rep.radical_basis.size() == 1);
    CHECK(rep.kind == SpaceKind::Defect);
    CHECK(rep.defect == 1);
    CHECK(rep.radical_basis[0][0].is_zero());
    CHECK(rep.radical_basis[0][1].is_one());
    CHECK(rep.radical_basis[0][2].is_zero());
  }

  SUBCASE("the same form over the rationals is non-degenerate") {
    auto rep = radical_and_defect(*conic_x1sq_x0x2(Q));
    CHECK(rep.kind == SpaceKind::NonDegenerate);
    CHECK(rep.radical_basis.empty());
  }

  SUBCASE("x0^2 in one variable over F2 is totally defective yet anisotropic") {
    auto rep = radical_and_defect(*diag_space(F2, {1}));
    CHECK(rep.kind == SpaceKind::Defect);
    CHECK(rep.defect == 1);
    CHECK(rep.radical_basis.size() == 1);
  }

  SUBCASE("a radical on which the form vanishes is plain degeneracy") {
    // q = x0 x1 in three variables: e2 spans the radical and q(e2) = 0.
    Mat<FElem> U(3, 3, F2->zero());
    U.at(0, 1) = F2->one();
    auto sp = QuadSpace<FElem>::from_upper(U);
    auto rep = radical_and_defect(sp);
    CHECK(rep.kind == SpaceKind::Degenerate);
    CHECK(rep.radical_basis.size() == 1);
  }
}

TEST_CASE("tangent concurrency point of a characteristic-2 conic") {
  auto F2 = Field::prime_field(2);

  SUBCASE("gram (0,1,0;1,0,0;0,0,0) gives [0:0:1]") {
    // q = x0 x1: a = 1, b = 0, c = 0.
    Mat<FElem> U(3, 3, F2->zero());
    U.at(0, 1) = F2->one();
    auto pt = tangent_concurrency_point(QuadSpace<FElem>::from_upper(U));
    CHECK(pt[0].is_zero());
    CHECK(pt[1].is_zero());
    CHECK(pt[2].is_one());
  }

  SUBCASE("x1^2 + x0 x2 gives [0:1:0]") {
    auto pt = tangent_concurrency_point(*conic_x1sq_x0x2(F2));
    CHECK(pt[0].is_zero());
    CHECK(pt[1].is_one());
    CHECK(pt[2].is_zero());
  }

  SUBCASE("x0 x1 + x1 x2 + x0 x2 gives [1:1:1]") {
    Mat<FElem> U(3, 3, F2->zero());
    U.at(0, 1) = F2->one();
    U.at(1, 2) = F2->one();
    U.at(0, 2) = F2->one();
    auto pt = tangent_concurrency_point(QuadSpace<FElem>::from_upper(U));
    CHECK(pt[0].is_one());
    CHECK(pt[1].is_one());
    CHECK(pt[2].is_one());
  }

  SUBCASE("a diagonal form has zero polar and is rejected") {
    auto sp = diag_space(F2, {1, 1, 1});
    CHECK_THROWS_WITH_AS(tangent_concurrency_point(*sp),
                         doctest::Contains("reducible over the closure"), FieldError);
  }

  SUBCASE("characteristic must be 2") {
    CHECK_THROWS_AS(tangent_concurrency_point(*conic_x1sq_x0x2(Field::rationals())), FieldError);
  }
}

TEST_CASE("reflections are involutive isometries that negate their axis") {
  auto F3 = Field::prime_field(3);
  auto sp = diag_space(F3, {1, 1});

  SUBCASE("the difference reflection swaps the standard basis vectors") {
    std::vector<FElem> w = {F3->one(), F3->from_int(-1)};
    auto tau = reflection(sp, w);
    CHECK(tau.kind == MapKind::Reflection);
    auto img = tau.matrix.mul_vec({F3->one(), F3->zero()});
    CHECK(img[0].is_zero());
    CHECK(img[1].is_one());
    CHECK(tau.det() == F3->from_int(-1));
  }

  SUBCASE("axis goes to its negative and the square is the identity") {
    std::mt19937 rng(7002);
    auto QQ = diag_space(Field::rationals(), {1, 1, 1});
    for (int trial = 0; trial < 10; ++trial) {
      auto a = rand_axis(QQ, rng);
      auto tau = reflection(QQ, a);
      auto img = tau.matrix.mul_vec(a);
      for (std::size_t i = 0; i < 3; ++i) CHECK(img[i] == -a[i]);
      CHECK(tau.matrix * tau.matrix == Mat<FElem>::identity(3, QQ->zero()));
      CHECK(tau.det() == Field::rationals()->from_int(-1));
      // a vector in the polar hyperplane of the axis stays put
      std::vector<FElem> h = {a[1], -a[0], QQ->zero()};
      bool is_zero_vec = true;
      for (const auto& x : h)
        if (!x.is_zero()) is_zero_vec = false;
      if (!is_zero_vec) {
        auto fixed = tau.matrix.mul_vec(h);
        for (std::size_t i = 0; i < 3; ++i) CHECK(fixed[i] == h[i]);
      }
    }
  }

  SUBCASE("isotropic and radical axes are rejected") {
    auto F5 = Field::prime_field(5);
    auto iso = diag_space(F5, {1, 1});
    CHECK_THROWS_WITH_AS(reflection(iso, {F5->from_int(2), F5->one()}),
                         doctest::Contains("isotropic"), FieldError);
    auto F2 = Field::prime_field(2);
    // x0^2 + x0 x1 + x1^2 + x2^2: e2 has q = 1 but zero polar pairing.
    Mat<FElem> U(3, 3, F2->zero());
    U.at(0, 0) = F2->one();
    U.at(0, 1) = F2->one();
    U.at(1, 1) = F2->one();
    U.at(2, 2) = F2->one();
    auto def = std::make_shared<const QuadSpace<FElem>>(QuadSpace<FElem>::from_upper(U));
    CHECK_THROWS_WITH_AS(reflection(def, {F2->zero(), F2->zero(), F2->one()}),
                         doctest::Contains("identity transvection"), FieldError);
  }
}

TEST_CASE("characteristic-2 transvections have determinant one") {
  auto F2 = Field::prime_field(2);
  Mat<FElem> U(2, 2, F2->zero());
  U.at(0, 0) = F2->one();
  U.at(0, 1) = F2->one();
  U.at(1, 1) = F2->one();
  auto sp = std::make_shared<const QuadSpace<FElem>>(QuadSpace<FElem>::from_upper(U));
  for (auto a : {std::vector<FElem>{F2->one(), F2->zero()},
                 std::vector<FElem>{F2->zero(), F2->one()},
                 std::vector<FElem>{F2->one(), F2->one()}}) {
    auto tau = reflection(sp, a);
    CHECK(tau.kind == MapKind::Transvection);
    CHECK(tau.det().is_one());
    CHECK(tau.matrix * tau.matrix == Mat<FElem>::identity(2, F2->zero()));
  }
}

TEST_CASE("vectors of equal nonzero norm are exchanged by the difference reflection") {
  // On an anisotropic space, x != y with q(x) = q(y) != 0 forces
  // q(x - y) != 0, and the reflection in x - y maps x to y.
  for (long p : {3L, 5L}) {
    auto K = Field::prime_field(p);
    auto sp = p == 3 ? diag_space(K, {1, 1}) : diag_space(K, {1, 2});
    REQUIRE(isotropy_search(*sp).status == IsotropyStatus::AnisotropicProved);
    for (long i = 0; i < p * p; ++i)
      for (long j = 0; j < p * p; ++j) {
        if (i == j) continue;
        std::vector<FElem> x = {K->nth(i % p), K->nth(i / p)};
        std::vector<FElem> y = {K->nth(j % p), K->nth(j / p)};
        FElem qx = sp->eval(x);
        if (qx.is_zero() || !(qx == sp->eval(y))) continue;
        std::vector<FElem> w = {x[0] - y[0], x[1] - y[1]};
        REQUIRE_FALSE(sp->eval(w).is_zero());
        auto tau = reflection(sp, w);
        auto img = tau.matrix.mul_vec(x);
        CHECK(img[0] == y[0]);
        CHECK(img[1] == y[1]);
      }
  }
}

TEST_CASE("isotropy search decides finite fields and certifies definite rational forms") {
  SUBCASE("x^2 + y^2 over F3 is anisotropic") {
    auto cert = isotropy_search(*diag_space(Field::prime_field(3), {1, 1}));
    CHECK(cert.status == IsotropyStatus::AnisotropicProved);
  }
  SUBCASE("x^2 + y^2 over F5 has a witness") {
    auto sp = diag_space(Field::prime_field(5), {1, 1});
    auto cert = isotropy_search(*sp);
    REQUIRE(cert.status == IsotropyStatus::IsotropicWitness);
    CHECK(sp->eval(cert.witness).is_zero());
    bool nonzero = false;
    for (const auto& x : cert.witness)
      if (!x.is_zero()) nonzero = true;
    CHECK(nonzero);
  }
  SUBCASE("every ternary form over a finite field is isotropic") {
    auto sp = diag_space(Field::prime_field(3), {1, 1, 1});
    auto cert = isotropy_search(*sp);
    REQUIRE(cert.status == IsotropyStatus::IsotropicWitness);
    CHECK(sp->eval(cert.witness).is_zero());
  }
  SUBCASE("an indefinite rational form yields a witness") {
    auto sp = diag_space(Field::rationals(), {1, 1, -1});
    auto cert = isotropy_search(*sp);
    REQUIRE(cert.status == IsotropyStatus::IsotropicWitness);
    CHECK(sp->eval(cert.witness).is_zero());
  }
  SUBCASE("a definite rational form is certified without search") {
    CHECK(isotropy_search(*diag_space(Field::rationals(), {1, 1, 1})).status ==
          IsotropyStatus::AnisotropicProved);
    CHECK(isotropy_search(*diag_space(Field::rationals(), {-1, -2, -3})).status ==
          IsotropyStatus::AnisotropicProved);
  }
  SUBCASE("an anisotropic indefinite form stays unknown rather than claiming a proof") {
    // x^2 + y^2 - 3 z^2 has no rational zero, but the search cannot see that.
    SearchBudget small;
    small.height_bound = 6;
    auto cert = isotropy_search(*diag_space(Field::rationals(), {1, 1, -3}), small);
    CHECK(cert.status == IsotropyStatus::Unknown);
  }
}

TEST_CASE("factorization into reflections tracks the fixed-space codimension") {
  std::mt19937 rng(7003);
  auto F9spec = FieldSpec{};  // F9 = F3 with a square root of -1 adjoined
  F9spec.characteristic = 3;
  F9spec.steps = {{mpq_class(1), mpq_class(0), mpq_class(1)}};
  auto F9 = Field::make(F9spec);

  std::vector<SpacePtr<FElem>> spaces;
  spaces.push_back(diag_space(Field::prime_field(3), {1, 1}));
  spaces.push_back(diag_space(Field::prime_field(5), {1, 2}));
  {
    Mat<FElem> U(2, 2, F9->zero());
    U.at(0, 0) = F9->one();
    U.at(1, 1) = -nonsquare_of(F9);
    spaces.push_back(std::make_shared<const QuadSpace<FElem>>(QuadSpace<FElem>::from_upper(U)));
  }
  spaces.push_back(diag_space(Field::rationals(), {1, 1, 1}));

  for (const auto& sp : spaces) {
    auto cert = isotropy_search(*sp);
    REQUIRE(cert.status == IsotropyStatus::AnisotropicProved);

    SUBCASE("identity factors as the empty product") {
      auto id = make_isometry(sp, Mat<FElem>::identity(sp->dim(), sp->zero()));
      CHECK(cartan_dieudonne(sp, id, cert).empty());
    }

    for (int trial = 0; trial < 12; ++trial) {
      auto phi = random_reflection_product(sp, 1 + int(rng() % 4), rng);
      auto taus = cartan_dieudonne(sp, phi, cert);
      CHECK(taus.size() <= sp->dim());
      CHECK(taus.size() == fixed_space_codim(*sp, phi.matrix));
      Mat<FElem> prod = Mat<FElem>::identity(sp->dim(), sp->zero());
      for (const auto& t : taus) {
        CHECK(t.matrix * t.matrix == Mat<FElem>::identity(sp->dim(), sp->zero()));
        CHECK(t.det() == sp->upper().at(0, 0).field()->from_int(-1));
        prod = prod * t.matrix;
      }
      CHECK(prod == phi.matrix);
    }
  }
}

TEST_CASE("negating the identity on a definite rational space takes three reflections") {
  auto sp = diag_space(Field::rationals(), {1, 1, 1});
  auto cert = isotropy_search(*sp);
  Mat<FElem> mid = Mat<FElem>(3, 3, sp->zero()) - Mat<FElem>::identity(3, sp->zero());
  auto phi = make_isometry(sp, mid);
  auto taus = cartan_dieudonne(sp, phi, cert);
  REQUIRE(taus.size() == 3);
  Mat<FElem> prod = Mat<FElem>::identity(3, sp->zero());
  for (const auto& t : taus) prod = prod * t.matrix;
  CHECK(prod == phi.matrix);
}

TEST_CASE("special orthogonal maps factor into involutions that are themselves special") {
  std::mt19937 rng(7004);

  SUBCASE("rotations of a definite rational space") {
    auto sp = diag_space(Field::rationals(), {1, 1, 1});
    auto cert = isotropy_search(*sp);
    for (int trial = 0; trial < 8; ++trial) {
      auto phi = random_reflection_product(sp, 2, rng);
      REQUIRE(phi.det().is_one());
      auto facs = so_involution_factorization(sp, phi, cert);
      CHECK(facs.size() <= sp->dim() - 1);
      Mat<FElem> prod = Mat<FElem>::identity(3, sp->zero());
      for (const auto& f : facs) {
        CHECK(f.kind == MapKind::NegatedReflection);
        CHECK(f.det().is_one());
        CHECK(f.matrix * f.matrix == Mat<FElem>::identity(3, sp->zero()));
        CHECK(make_isometry(sp, f.matrix).is_isometry());
        prod = prod * f.matrix;
      }
      CHECK(prod == phi.matrix);
    }
  }

  SUBCASE("a single reflection has determinant -1 and is rejected") {
    auto sp = diag_space(Field::rationals(), {1, 1, 1});
    auto cert = isotropy_search(*sp);
    auto tau = random_reflection_product(sp, 1, rng);
    CHECK_THROWS_WITH_AS(so_involution_factorization(sp, tau, cert),
                         doctest::Contains("determinant"), FieldError);
  }

  SUBCASE("even dimension is rejected") {
    auto sp = diag_space(Field::prime_field(3), {1, 1});
    auto cert = isotropy_search(*sp);
    auto id = make_isometry(sp, Mat<FElem>::identity(2, sp->zero()));
    CHECK_THROWS_WITH_AS(so_involution_factorization(sp, id, cert),
                         doctest::Contains("odd dimension"), FieldError);
  }
}

TEST_CASE("the characteristic-2 pipeline over a rational function field") {
  // q = x^2 + xy + y^2 + t z^2 over F2(t): the binary part is the norm form
  // of the quadratic extension and the t coefficient blocks any cancellation
  // on degree grounds, so the space is anisotropic with defect one.
  auto F2 = Field::prime_field(2);
  std::vector<std::string> tv = {"t"};
  auto t = RatFunc::variable(F2, tv, "t");
  auto c1 = RatFunc::one(F2, tv);
  auto c0 = RatFunc::zero(F2, tv);

  Mat<RatFunc> U(3, 3, c0);
  U.at(0, 0) = c1;
  U.at(0, 1) = c1;
  U.at(1, 1) = c1;
  U.at(2, 2) = t;
  auto sp = std::make_shared<const QuadSpace<RatFunc>>(QuadSpace<RatFunc>::from_upper(U));
  CHECK(sp->delta() == 1);

  auto rep = radical_and_defect(*sp);
  CHECK(rep.kind == SpaceKind::Defect);
  CHECK(rep.defect == 1);

  IsotropyCertificate<RatFunc> cert;
  cert.status = IsotropyStatus::AnisotropicByTheorem;

  std::vector<std::vector<RatFunc>> axes = {
      {c1, c0, c0}, {c0, c1, c0}, {c1, c1, c0}, {c0, c1, c1}, {t, c1, c0}};
  Mat<RatFunc> M = Mat<RatFunc>::identity(3, c0);
  for (const auto& a : axes) M = reflection(sp, a).matrix * M;
  auto phi = make_isometry(sp, M);
  REQUIRE(phi.det().is_one());

  auto facs = so_involution_factorization(sp, phi, cert);
  CHECK(facs.size() <= 3);
  Mat<RatFunc> prod = Mat<RatFunc>::identity(3, c0);
  for (const auto& f : facs) {
    CHECK(f.kind == MapKind::Transvection);
    CHECK(f.det().is_one());
    CHECK(f.matrix * f.matrix == Mat<RatFunc>::identity(3, c0));
    prod = prod * f.matrix;
  }
  CHECK(prod == phi.matrix);
}

TEST_CASE("similitudes of odd-dimensional spaces split as scalar times special") {
  std::mt19937 rng(7005);
  auto Q = Field::rationals();
  auto sp = diag_space(Q, {1, 1, 1});

  SUBCASE("a scaled rotation recovers its scale") {
    auto R = random_reflection_product(sp, 2, rng);
    auto A = make_similitude(sp, R.matrix.scale(Q->from_int(2)));
    CHECK(A.multiplier == Q->from_int(4));
    auto [c, S] = go_to_so_split(sp, A);
    CHECK(c == Q->from_int(2));
    CHECK(S.matrix == R.matrix);
    CHECK(S.det().is_one());
    CHECK(S.is_isometry());
  }

  SUBCASE("a scalar matrix splits off entirely") {
    auto A = make_similitude(sp, Mat<FElem>::identity(3, sp->zero()).scale(Q->from_int(3)));
    auto [c, S] = go_to_so_split(sp, A);
    CHECK(c == Q->from_int(3));
    CHECK(S.matrix == Mat<FElem>::identity(3, sp->zero()));
  }

  SUBCASE("non-similitudes are rejected at wrap time") {
    Mat<FElem> M = Mat<FElem>::identity(3, sp->zero());
    M.at(0, 1) = Q->one();
    CHECK_THROWS_WITH_AS(make_similitude(sp, M), doctest::Contains("not a similitude"),
                         FieldError);
  }

  SUBCASE("even dimension is rejected") {
    auto sp2 = diag_space(Q, {1, 1});
    auto A = make_isometry(sp2, Mat<FElem>::identity(2, sp2->zero()));
    CHECK_THROWS_WITH_AS(go_to_so_split(sp2, A), doctest::Contains("odd dimension"), FieldError);
  }
}
