#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "entrolab/qlinalg.hpp"

using namespace entrolab;

namespace {

std::vector<double> eigen_oracle(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e);
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.rbegin(), out.rend());
  return out;
}

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return g + g.adjoint();
}

}  // namespace

TEST_CASE("matrix arithmetic") {
  ComplexMatrix a(2, 2, {1.0, Complex(0, 1), 2.0, 3.0});
  CHECK(a.trace() == Complex(4.0, 0.0));
  CHECK(a.adjoint()(0, 1) == Complex(2.0, 0.0));
  CHECK(a.adjoint()(1, 0) == Complex(0.0, -1.0));
  const ComplexMatrix id = ComplexMatrix::identity(2);
  CHECK(a * id == a);
  CHECK(max_abs_diff(a - a, ComplexMatrix(2, 2)) == 0.0);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0}), DimensionError);
  CHECK_THROWS_AS(a * ComplexMatrix(3, 3), DimensionError);
}

TEST_CASE("jacobi eigenvalues agree with an independent solver") {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ComplexMatrix h = random_hermitian(n, 1000 * n + seed);
      const Spectrum s = hermitian_spectrum(h);
      const auto oracle = eigen_oracle(h);
      REQUIRE(s.eigenvalues.size() == n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s.eigenvalues[i] - oracle[i]) < 1e-10);
      // Reconstruction V diag(l) V^dagger = H
      const ComplexMatrix rebuilt =
          s.eigenvectors * ComplexMatrix::diagonal(s.eigenvalues) * s.eigenvectors.adjoint();
      CHECK(max_abs_diff(rebuilt, h) < 1e-10);
      CHECK(unitarity_defect(s.eigenvectors) < 1e-10);
    }
  }
  CHECK_THROWS_AS(hermitian_spectrum(ComplexMatrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(hermitian_spectrum(ComplexMatrix(2, 2, {0.0, 1.0, 0.0, 0.0})), InvariantError);
}

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix::maximally_mixed(3));
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix(2, 3)), DimensionError);
  try {
    DensityMatrix(ComplexMatrix(2, 2, {0.5, 0.3, 0.0, 0.5}));
    FAIL("expected InvariantError");
  } catch (const InvariantError& e) {
    CHECK(e.invariant() == "hermitian");
    CHECK(e.magnitude() == doctest::Approx(0.3));
  }
  try {
    DensityMatrix(ComplexMatrix::diagonal(std::vector<double>{0.5, 0.6}));
    FAIL("expected InvariantError");
  } catch (const InvariantError& e) {
    CHECK(e.invariant() == "unit_trace");
  }
  try {
    DensityMatrix(ComplexMatrix::diagonal(std::vector<double>{1.2, -0.2}));
    FAIL("expected InvariantError");
  } catch (const InvariantError& e) {
    CHECK(e.invariant() == "positive_semidefinite");
    CHECK(e.magnitude() == doctest::Approx(0.2));
  }
  // Tiny negative eigenvalues are clipped.
  const DensityMatrix clipped(ComplexMatrix::diagonal(std::vector<double>{1.0 + 5e-11, -5e-11}));
  CHECK(clipped.eigenvalues()[1] == 0.0);
  CHECK(clipped.eigenvalues()[0] == doctest::Approx(1.0));
}

TEST_CASE("tensor product and partial trace") {
  const DensityMatrix a = DensityMatrix::diagonal(std::vector<double>{0.7, 0.3});
  const DensityMatrix b = random_density(3, 2, 7);
  const DensityMatrix ab = tensor(a, b);
  CHECK(ab.dim() == 6);
  // (i_a, i_b) -> i_a * dim_b + i_b
  CHECK(std::abs(ab.matrix()(4, 5) - 0.3 * b.matrix()(1, 2)) < 1e-15);
  CHECK(max_abs_diff(partial_trace(ab, {2, 3}, Subsystem::A).matrix(), a.matrix()) < 1e-14);
  CHECK(max_abs_diff(partial_trace(ab, {2, 3}, Subsystem::B).matrix(), b.matrix()) < 1e-14);
  CHECK_THROWS_AS(partial_trace(ab, {2, 2}, Subsystem::A), DimensionError);

  // Bell state marginals are maximally mixed.
  ComplexMatrix bell(4, 4);
  for (std::size_t i : {0u, 3u})
    for (std::size_t j : {0u, 3u}) bell(i, j) = 0.5;
  const DensityMatrix reduced = partial_trace(DensityMatrix(bell), {2, 2}, Subsystem::A);
  CHECK(max_abs_diff(reduced.matrix(), DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);
}

TEST_CASE("random generators") {
  for (std::size_t d = 1; d <= 5; ++d) {
    const ComplexMatrix u = random_unitary(d, 11 + d);
    CHECK(unitarity_defect(u) < 1e-12);
    for (std::size_t r = 1; r <= d; ++r) {
      const DensityMatrix rho = random_density(d, r, 100 * d + r);
      const auto& l = rho.eigenvalues();
      const auto positive = std::count_if(l.begin(), l.end(), [](double x) { return x > 1e-9; });
      CHECK(static_cast<std::size_t>(positive) == r);
    }
  }
  CHECK_THROWS_AS(random_density(3, 4, 1), InvariantError);
  CHECK_THROWS_AS(random_density(3, 0, 1), InvariantError);
  CHECK(random_density(3, 2, 5).matrix() == random_density(3, 2, 5).matrix());

  const DensityMatrix rho = random_density(3, 3, 9);
  CHECK_THROWS_AS(conjugate_by_unitary(rho, ComplexMatrix::identity(3) * Complex(2.0)),
                  InvariantError);
}

TEST_CASE("portable rng stream") {
  Rng a(123);
  Rng b(123);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  // First raw draw of mt19937_64 seeded with 5489 is 14514284786278117030.
  Rng d(5489);
  CHECK(d.uniform() == static_cast<double>(14514284786278117030ULL >> 11) * 0x1.0p-53);
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}
