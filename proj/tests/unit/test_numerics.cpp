#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chiralg2/numerics.hpp"
#include "support.hpp"

using namespace chiralg2;
using testsupport::random_matrix;

namespace {

const ComplexMatrix kLower{{0, 1}, {0, 0}};

ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

}  // namespace

TEST_CASE("matmul") {
  CHECK(matmul(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) ==
        ComplexMatrix::identity(2));
  CHECK(matmul(kLower, kLower) == ComplexMatrix(2, 2));

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_matrix(5, 5, rng);
    const auto b = random_matrix(5, 5, rng);
    CHECK(max_abs_diff(matmul(a, b), naive_matmul(a, b)) < 1e-12);
  }
  const auto rect = random_matrix(3, 4, rng);
  const auto other = random_matrix(4, 2, rng);
  CHECK(max_abs_diff(matmul(rect, other), naive_matmul(rect, other)) < 1e-12);
  CHECK_THROWS_AS(matmul(rect, rect), DimensionError);
}

TEST_CASE("dagger") {
  CHECK(dagger(ComplexMatrix::identity(2)) == ComplexMatrix::identity(2));
  CHECK(dagger(kLower) == ComplexMatrix{{0, 0}, {1, 0}});
  std::mt19937_64 rng(2);
  const auto a = random_matrix(4, 3, rng);
  const auto b = random_matrix(3, 5, rng);
  CHECK(dagger(dagger(a)) == a);
  CHECK(max_abs_diff(dagger(matmul(a, b)), matmul(dagger(b), dagger(a))) < 1e-12);
  CHECK(dagger(ComplexMatrix{{cplx(1, 2)}})(0, 0) == cplx(1, -2));
}

TEST_CASE("kron") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3)) ==
        ComplexMatrix::identity(6));

  const ComplexMatrix k = kron(kLower, ComplexMatrix::identity(2));
  REQUIRE(k.rows() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const bool one = (i == 0 && j == 2) || (i == 1 && j == 3);
      CHECK(k(i, j) == cplx(one ? 1.0 : 0.0));
    }
  }

  std::mt19937_64 rng(3);
  const auto a = random_matrix(2, 2, rng), c = random_matrix(2, 2, rng);
  const auto b = random_matrix(3, 3, rng), d = random_matrix(3, 3, rng);
  CHECK(max_abs_diff(matmul(kron(a, b), kron(c, d)), kron(matmul(a, c), matmul(b, d))) < 1e-12);

  const auto r = random_matrix(2, 3, rng), s = random_matrix(4, 1, rng);
  const ComplexMatrix rs = kron(r, s);
  CHECK(rs.rows() == 8);
  CHECK(rs.cols() == 3);
  CHECK(rs(5, 2) == r(1, 2) * s(1, 0));
}

TEST_CASE("kron_accumulate adds a scaled product") {
  std::mt19937_64 rng(4);
  const auto a = random_matrix(2, 3, rng), b = random_matrix(2, 2, rng);
  ComplexMatrix out = random_matrix(4, 6, rng);
  const ComplexMatrix before = out;
  const cplx alpha(0.5, -2.0);
  kron_accumulate(out, alpha, a, b);
  CHECK(max_abs_diff(out, before + alpha * kron(a, b)) < 1e-12);
  ComplexMatrix wrong(3, 3);
  CHECK_THROWS_AS(kron_accumulate(wrong, 1.0, a, b), DimensionError);
}

TEST_CASE("trace") {
  CHECK(trace(ComplexMatrix::identity(4)) == cplx(4.0));
  CHECK(trace(kLower) == cplx(0.0));
  std::mt19937_64 rng(5);
  const auto a = random_matrix(6, 6, rng), b = random_matrix(6, 6, rng);
  CHECK(std::abs(trace(matmul(a, b)) - trace(matmul(b, a))) < 1e-12);
  CHECK_THROWS_AS(trace(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("elementwise ops check shapes") {
  ComplexMatrix a(2, 2);
  CHECK_THROWS_AS(a += ComplexMatrix(2, 3), DimensionError);
  CHECK_THROWS_AS((Matrix<cplx>{{1, 2}, {3}}), DimensionError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<cplx>(3)), DimensionError);
}

TEST_CASE("solve_least_squares") {
  SUBCASE("identity") {
    const std::vector<cplx> b{1.0, 2.0, 3.0};
    const auto x = solve_least_squares(ComplexMatrix::identity(3), b);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(x[i] - b[i]) < 1e-14);
  }
  SUBCASE("overdetermined mean") {
    const std::vector<cplx> b{0.0, 2.0};
    const auto x = solve_least_squares(ComplexMatrix{{1}, {1}}, b);
    REQUIRE(x.size() == 1);
    CHECK(std::abs(x[0] - 1.0) < 1e-14);
  }
  SUBCASE("normal-equation residual") {
    std::mt19937_64 rng(6);
    const auto a = random_matrix(20, 10, rng);
    const auto bm = random_matrix(20, 1, rng);
    const std::vector<cplx> b(bm.data().begin(), bm.data().end());
    const auto x = solve_least_squares(a, b);
    const ComplexMatrix ah = dagger(a);
    const auto lhs = matvec(ah, matvec(a, x));
    const auto rhs = matvec(ah, b);
    std::vector<cplx> diff(lhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) diff[i] = lhs[i] - rhs[i];
    CHECK(norm2(diff) < 1e-10);
  }
  SUBCASE("square well-conditioned is exact") {
    std::mt19937_64 rng(7);
    auto a = random_matrix(12, 12, rng);
    a += 10.0 * ComplexMatrix::identity(12);
    const auto bm = random_matrix(12, 1, rng);
    const std::vector<cplx> b(bm.data().begin(), bm.data().end());
    const auto x = solve_least_squares(a, b);
    const auto ax = matvec(a, x);
    std::vector<cplx> r(12);
    for (std::size_t i = 0; i < 12; ++i) r[i] = ax[i] - b[i];
    CHECK(norm2(r) < 1e-10 * norm2(b));
  }
  SUBCASE("real overload agrees with normal equations") {
    std::mt19937_64 rng(8);
    const auto a = testsupport::random_real(30, 7, rng);
    std::vector<double> b(30);
    std::normal_distribution<double> n;
    for (auto& v : b) v = n(rng);
    const auto x = solve_least_squares(a, b);
    const auto ax = matvec(a, x);
    for (std::size_t j = 0; j < 7; ++j) {
      double g = 0.0;
      for (std::size_t i = 0; i < 30; ++i) g += a(i, j) * (ax[i] - b[i]);
      CHECK(std::abs(g) < 1e-10);
    }
  }
  SUBCASE("rank deficiency reports the effective rank") {
    ComplexMatrix a{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}, {0, 1, 1}};  // col3 = col1 + col2
    const std::vector<cplx> b(4, 1.0);
    try {
      solve_least_squares(a, b);
      FAIL("expected RankDeficientError");
    } catch (const RankDeficientError& e) {
      CHECK(e.effective_rank() == 2);
    }
  }
  SUBCASE("deterministic") {
    std::mt19937_64 rng(9);
    const auto a = random_matrix(15, 8, rng);
    const std::vector<cplx> b(15, cplx(1.0, -1.0));
    CHECK(solve_least_squares(a, b) == solve_least_squares(a, b));
  }
  SUBCASE("shape errors") {
    CHECK_THROWS_AS(solve_least_squares(ComplexMatrix(2, 3), std::vector<cplx>(2)),
                    DimensionError);
    CHECK_THROWS_AS(solve_least_squares(ComplexMatrix(3, 2), std::vector<cplx>(2)),
                    DimensionError);
  }
}

TEST_CASE("hermitian_eigenvalues") {
  const ComplexMatrix pauli_y{{0, cplx(0, -1)}, {cplx(0, 1), 0}};
  const auto ev = hermitian_eigenvalues(pauli_y);
  CHECK(ev[0] == doctest::Approx(-1.0));
  CHECK(ev[1] == doctest::Approx(1.0));

  std::mt19937_64 rng(10);
  const auto a = random_matrix(6, 6, rng);
  const ComplexMatrix h = a + dagger(a);
  const auto eh = hermitian_eigenvalues(h);
  double sum = 0.0;
  for (double e : eh) sum += e;
  CHECK(std::abs(sum - trace(h).real()) < 1e-10);
  CHECK(std::is_sorted(eh.begin(), eh.end()));
}
