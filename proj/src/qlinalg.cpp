#include "entrolab/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace entrolab {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("matrix: entry count does not match rows * cols");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> ket) {
  const std::size_t n = ket.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = ket[i] * std::conj(ket[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("matrix sum: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionError("matrix difference: shape mismatch");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermiticity check: matrix is not square");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (!u.is_square()) throw DimensionError("unitarity check: matrix is not square");
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace of product: shape mismatch");
  }
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

ComplexMatrix Spectrum::apply(const std::function<double(double)>& f) const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eigenvectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eigenvectors(j, k));
    }
  }
  return out;
}

Spectrum hermitian_spectrum(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("eigensolver: matrix is not square");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTolerance) {
    std::ostringstream msg;
    msg << "eigensolver: matrix is not Hermitian (max |M - M^dagger| = " << defect << ")";
    throw InvariantError("hermitian", defect, msg.str());
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = (m + m.adjoint()) * Complex(0.5);
  ComplexMatrix v = ComplexMatrix::identity(n);

  double frobenius = 0.0;
  for (const auto& x : a.entries()) frobenius += std::norm(x);
  const double threshold = kJacobiOffDiagonalThreshold * std::max(1.0, std::sqrt(frobenius));

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= threshold) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        // Phase rotation makes the pivot real, then a real Jacobi rotation
        // annihilates it: G = diag(1, conj(phase)) * [[c, s], [-s, c]].
        const Complex phase_conj = std::conj(apq / r);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * phase_conj;
        const Complex gqq = c * phase_conj;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  Spectrum out;
  out.eigenvalues.reserve(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues.push_back(a(order[k], order[k]).real());
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
  if (!m.is_square() || m.rows() == 0) {
    throw DimensionError("density matrix: matrix must be square and non-empty");
  }
  for (const auto& x : m.entries()) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw InvariantError("finite", 0.0, "density matrix: non-finite entry");
    }
  }
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTolerance) {
    std::ostringstream msg;
    msg << "density matrix: not Hermitian (max |M - M^dagger| = " << defect << ")";
    throw InvariantError("hermitian", defect, msg.str());
  }
  matrix_ = (m + m.adjoint()) * Complex(0.5);
  const double trace_error = std::abs(matrix_.trace() - 1.0);
  if (trace_error > kTraceTolerance) {
    std::ostringstream msg;
    msg << "density matrix: trace differs from 1 by " << trace_error;
    throw InvariantError("unit_trace", trace_error, msg.str());
  }
  spectrum_ = hermitian_spectrum(matrix_);
  const double lowest = spectrum_.eigenvalues.back();
  if (lowest < -kPsdTolerance) {
    std::ostringstream msg;
    msg << "density matrix: not positive semidefinite (min eigenvalue " << lowest << ")";
    throw InvariantError("positive_semidefinite", -lowest, msg.str());
  }
  for (double& l : spectrum_.eigenvalues) l = std::max(l, 0.0);
  const double total =
      std::accumulate(spectrum_.eigenvalues.begin(), spectrum_.eigenvalues.end(), 0.0);
  for (double& l : spectrum_.eigenvalues) l /= total;
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> ket) {
  double norm = 0.0;
  for (const auto& x : ket) norm += std::norm(x);
  ComplexMatrix p = ComplexMatrix::projector(ket);
  return DensityMatrix(p * Complex(1.0 / norm));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probs) {
  return DensityMatrix(ComplexMatrix::diagonal(probs));
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, BipartiteDims dims, Subsystem keep) {
  if (dims.dim_a == 0 || dims.dim_b == 0 || dims.total() != rho.dim()) {
    std::ostringstream msg;
    msg << "partial trace: dims " << dims.dim_a << "x" << dims.dim_b
        << " do not factor a state of dimension " << rho.dim();
    throw DimensionError(msg.str());
  }
  const auto& m = rho.matrix();
  const std::size_t da = dims.dim_a;
  const std::size_t db = dims.dim_b;
  if (keep == Subsystem::A) {
    ComplexMatrix out(da, da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t k = 0; k < da; ++k)
        for (std::size_t j = 0; j < db; ++j) out(i, k) += m(i * db + j, k * db + j);
    return DensityMatrix(out);
  }
  ComplexMatrix out(db, db);
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t l = 0; l < db; ++l)
      for (std::size_t i = 0; i < da; ++i) out(j, l) += m(i * db + j, i * db + l);
  return DensityMatrix(out);
}

DensityMatrix conjugate_by_unitary(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (!u.is_square() || u.rows() != rho.dim()) {
    throw DimensionError("conjugation: unitary size does not match the state");
  }
  const double defect = unitarity_defect(u);
  if (defect > kUnitaryTolerance) {
    std::ostringstream msg;
    msg << "conjugation: matrix is not unitary (max |U^dagger U - I| = " << defect << ")";
    throw InvariantError("unitary", defect, msg.str());
  }
  return DensityMatrix(u * rho.matrix() * u.adjoint());
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double Rng::exponential() { return -std::log(1.0 - uniform()); }

std::size_t Rng::integer(std::size_t lo, std::size_t hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  const auto offset = static_cast<std::size_t>(uniform() * span);
  return lo + std::min(offset, hi - lo);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  if (dim == 0 || rank == 0 || rank > dim) {
    std::ostringstream msg;
    msg << "random_density: rank " << rank << " outside [1, " << dim << "]";
    throw InvariantError("rank_range", 0.0, msg.str());
  }
  Rng rng(seed);
  ComplexMatrix g(dim, rank);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < rank; ++k) g(i, k) = rng.complex_normal();
  ComplexMatrix w = g * g.adjoint();
  const double tr = w.trace().real();
  return DensityMatrix(w * Complex(1.0 / tr));
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix q(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) q(i, j) = rng.complex_normal();

  // Modified Gram-Schmidt with one re-orthogonalization pass per column.
  for (std::size_t k = 0; k < dim; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        Complex overlap = 0.0;
        for (std::size_t i = 0; i < dim; ++i) overlap += std::conj(q(i, j)) * q(i, k);
        for (std::size_t i = 0; i < dim; ++i) q(i, k) -= overlap * q(i, j);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) norm += std::norm(q(i, k));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < dim; ++i) q(i, k) /= norm;
  }
  return q;
}

std::vector<Complex> random_ket(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> ket(dim);
  double norm = 0.0;
  for (auto& x : ket) {
    x = rng.complex_normal();
    norm += std::norm(x);
  }
  norm = std::sqrt(norm);
  for (auto& x : ket) x /= norm;
  return ket;
}

}  // namespace entrolab
