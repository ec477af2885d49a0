#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cremona/matrix.hpp"
#include "test_util.hpp"

using namespace cremona;

namespace {

Mat<FElem> rand_mat(const FieldPtr& F, std::size_t n, std::mt19937& rng) {
  Mat<FElem> m(n, n, F->zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = testutil::random_element(F, rng);
  return m;
}

Mat<FElem> from_ints(const FieldPtr& F, const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<FElem>> conv;
  for (const auto& r : rows) {
    std::vector<FElem> row;
    for (long v : r) row.push_back(F->from_int(v));
    conv.push_back(std::move(row));
  }
  return Mat<FElem>::from(conv);
}

}  // namespace

TEST_CASE("determinants and inverses") {
  auto Q = Field::rationals();
  auto A = from_ints(Q, {{1, 2}, {3, 4}});
  CHECK(A.det() == Q->from_int(-2));
  auto B = from_ints(Q, {{2, 0, 1}, {1, 1, 0}, {0, 3, 1}});
  CHECK(B.det() == Q->from_int(5));

  auto I = Mat<FElem>::identity(3, Q->one());
  CHECK(B * B.inverse() == I);
  CHECK(B.inverse() * B == I);

  auto F7 = Field::prime_field(7);
  std::mt19937 rng(31);
  for (int it = 0; it < 20; ++it) {
    auto M = rand_mat(F7, 3, rng);
    if (M.det().is_zero()) continue;
    CHECK(M * M.inverse() == Mat<FElem>::identity(3, F7->one()));
  }
  auto S = from_ints(Q, {{1, 2}, {2, 4}});
  CHECK_THROWS_AS((void)S.inverse(), std::invalid_argument);
}

TEST_CASE("rank and kernel") {
  auto Q = Field::rationals();
  auto M = from_ints(Q, {{1, 2, 3}, {2, 4, 6}, {1, 1, 1}});
  CHECK(M.rank() == 2);
  auto ker = M.kernel();
  REQUIRE(ker.size() == 1);
  // Every kernel vector is annihilated.
  auto img = M.mul_vec(ker[0]);
  for (const auto& x : img) CHECK(x.is_zero());

  CHECK(Mat<FElem>::identity(3, Q->one()).kernel().empty());
}

TEST_CASE("kernel over a finite field of characteristic 2") {
  auto F2 = Field::prime_field(2);
  auto M = from_ints(F2, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  CHECK(M.rank() == 2);
  auto ker = M.kernel();
  REQUIRE(ker.size() == 1);
  for (const auto& x : M.mul_vec(ker[0])) CHECK(x.is_zero());
}

TEST_CASE("projective equality by cross products") {
  auto Q = Field::rationals();
  CHECK(pgl_equal(from_ints(Q, {{1, 2}, {3, 4}}), from_ints(Q, {{2, 4}, {6, 8}})));
  CHECK_FALSE(pgl_equal(from_ints(Q, {{1, 0}, {0, 1}}), from_ints(Q, {{1, 0}, {0, 2}})));

  // Antidiagonal pair over a rational function field, scaled by c.
  auto F5 = Field::prime_field(5);
  std::vector<std::string> X = {"x"};
  RatFunc x = RatFunc::variable(F5, X, "x");
  RatFunc zero = RatFunc::zero(F5, X), one = RatFunc::one(F5, X);
  RatFunc a = x + one;
  RatFunc c = x * x + RatFunc::constant(F5, X, 3);
  Mat<RatFunc> M = Mat<RatFunc>::from({{zero, one}, {a, zero}});
  Mat<RatFunc> N = Mat<RatFunc>::from({{zero, c}, {c * a, zero}});
  CHECK(pgl_equal(M, N));
  Mat<RatFunc> P = Mat<RatFunc>::from({{zero, one}, {a + one, zero}});
  CHECK_FALSE(pgl_equal(M, P));
}

TEST_CASE("pgl_equal is an equivalence, invariant under scaling") {
  auto F7 = Field::prime_field(7);
  std::mt19937 rng(8);
  for (int it = 0; it < 25; ++it) {
    auto A = rand_mat(F7, 2, rng);
    if (A.is_zero()) continue;
    CHECK(pgl_equal(A, A));
    FElem c = testutil::random_nonzero(F7, rng);
    CHECK(pgl_equal(A, A.scale(c)));
    CHECK(pgl_equal(A.scale(c), A));
    auto B = rand_mat(F7, 2, rng);
    if (!pgl_equal(A, B)) continue;
    // Symmetry plus transitivity through a scaled copy.
    CHECK(pgl_equal(B, A));
    CHECK(pgl_equal(B, A.scale(c)));
  }
  // Zero matrices are only equivalent to each other.
  Mat<FElem> Z(2, 2, F7->zero());
  CHECK(pgl_equal(Z, Z));
  CHECK_FALSE(pgl_equal(Z, Mat<FElem>::identity(2, F7->one())));
}

TEST_CASE("matrices over polynomials") {
  auto Q = Field::rationals();
  std::vector<std::string> X = {"x"};
  Poly x = Poly::variable(Q, X, "x");
  Poly one = Poly::constant(Q, X, 1);
  Mat<Poly> M = Mat<Poly>::from({{x, one}, {Poly::zero(Q, X), x}});
  CHECK(M.det() == x * x);
  Mat<Poly> M2 = M * M;
  CHECK(M2.at(0, 1) == x + x);
}
