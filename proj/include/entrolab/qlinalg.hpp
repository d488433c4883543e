#pragma once

// Dense complex linear algebra sized for desk-scale quantum states
// (dimension up to ~64): Hermitian eigendecomposition by cyclic Jacobi
// rotations, Kronecker products, partial traces and seeded generators.
//
// Bipartite index convention: basis state (i_A, i_B) is row i_A * dim_b + i_B.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "entrolab/core.hpp"

namespace entrolab {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major entries; throws DimensionError when the count is wrong.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> diag);
  /// |v><v|.
  static ComplexMatrix projector(std::span<const Complex> ket);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Largest entrywise modulus of a - b; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |M - M^dagger| over entries; M must be square.
double hermiticity_defect(const ComplexMatrix& m);

/// max |U^dagger U - I| over entries.
double unitarity_defect(const ComplexMatrix& u);

/// Tr(a b) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-9;

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]

  /// V diag(f(lambda)) V^dagger.
  ComplexMatrix apply(const std::function<double(double)>& f) const;
};

/// Cyclic complex Jacobi eigensolver. Throws DimensionError for non-square
/// input and InvariantError when the input is not Hermitian within 1e-10.
Spectrum hermitian_spectrum(const ComplexMatrix& m);

/// Jacobi sweep limits; exposed for tests.
inline constexpr double kJacobiOffDiagonalThreshold = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;

/// A validated quantum state: Hermitian, unit trace, positive semidefinite.
/// Eigenvalues in [-1e-10, 0) are clipped to zero and the cached spectrum is
/// renormalized; anything more negative is rejected.
class DensityMatrix {
 public:
  /// Throws DimensionError (non-square) or InvariantError naming the failed
  /// invariant ("hermitian", "unit_trace", "positive_semidefinite").
  explicit DensityMatrix(const ComplexMatrix& m);

  static DensityMatrix maximally_mixed(std::size_t dim);
  static DensityMatrix pure(std::span<const Complex> ket);
  static DensityMatrix diagonal(std::span<const double> probs);

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  std::span<const double> eigenvalues() const noexcept { return spectrum_.eigenvalues; }

 private:
  ComplexMatrix matrix_;
  Spectrum spectrum_;
};

struct BipartiteDims {
  std::size_t dim_a = 1;
  std::size_t dim_b = 1;
  std::size_t total() const noexcept { return dim_a * dim_b; }
};

/// Tripartite operations reuse the bipartite ones by grouping subsystems.
struct TripartiteDims {
  std::size_t dim_a = 1;
  std::size_t dim_b = 1;
  std::size_t dim_c = 1;
  std::size_t total() const noexcept { return dim_a * dim_b * dim_c; }
  BipartiteDims ab_c() const noexcept { return {dim_a * dim_b, dim_c}; }
  BipartiteDims a_bc() const noexcept { return {dim_a, dim_b * dim_c}; }
};

enum class Subsystem { A, B };

/// Kronecker product.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on `keep`. Throws DimensionError when dims do not factor rho.
DensityMatrix partial_trace(const DensityMatrix& rho, BipartiteDims dims, Subsystem keep);

/// U rho U^dagger. Throws InvariantError when U^dagger U differs from I by
/// more than 1e-9, DimensionError on a size mismatch.
DensityMatrix conjugate_by_unitary(const DensityMatrix& rho, const ComplexMatrix& u);

/// Seedable generator with portable output: mt19937_64 drives hand-written
/// uniform, Box-Muller normal and exponential transforms, so a seed means
/// the same numbers on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double normal();
  double exponential();
  /// Uniform integer in [lo, hi].
  std::size_t integer(std::size_t lo, std::size_t hi);
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Mixes two 64-bit words into a new seed (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// G G^dagger / Tr(G G^dagger) for a dim x rank complex Ginibre matrix G.
/// Throws InvariantError unless 1 <= rank <= dim.
DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);

/// Haar unitary: Gram-Schmidt on a complex Ginibre matrix, which fixes the
/// phases of R's diagonal to be positive.
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);

/// Uniformly random unit vector in C^dim.
std::vector<Complex> random_ket(std::size_t dim, std::uint64_t seed);

}  // namespace entrolab
