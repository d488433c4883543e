#pragma once

// Quantum entropies and the bounds that relate them: von Neumann entropy,
// subentropy, conditional and mutual entropies of bipartite states, quantum
// relative entropy, Holevo chi and measured mutual information.
//
// Quantum quantities default to nats; pass LogBase::bits to convert.

#include <cstdint>
#include <vector>

#include "entrolab/probdist.hpp"
#include "entrolab/qlinalg.hpp"

namespace entrolab {

/// Classical mixture {p_i, rho_i} of equal-dimension states.
class Ensemble {
 public:
  /// Throws DimensionError when the lists differ in length or the states in
  /// dimension.
  Ensemble(Distribution probs, std::vector<DensityMatrix> states);

  std::size_t size() const noexcept { return states_.size(); }
  std::size_t dim() const noexcept { return states_.front().dim(); }
  const Distribution& probs() const noexcept { return probs_; }
  const std::vector<DensityMatrix>& states() const noexcept { return states_; }

  /// sum_i p_i rho_i.
  const DensityMatrix& average() const noexcept { return average_; }

 private:
  Distribution probs_;
  std::vector<DensityMatrix> states_;
  DensityMatrix average_;
};

inline constexpr double kPovmCompletenessTolerance = 1e-9;

/// Positive operators summing to the identity; may have more outcomes than
/// the Hilbert-space dimension.
class Povm {
 public:
  /// Throws DimensionError on unequal or non-square elements and
  /// InvariantError ("povm_hermitian", "povm_positive", "povm_complete").
  explicit Povm(std::vector<ComplexMatrix> elements);

  std::size_t outcomes() const noexcept { return elements_.size(); }
  std::size_t dim() const noexcept { return elements_.front().rows(); }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }

 private:
  std::vector<ComplexMatrix> elements_;
};

/// -sum lambda log lambda over the clipped spectrum.
double von_neumann(const DensityMatrix& rho, LogBase base = LogBase::nats);

/// Eigenvalue gap below which subentropy evaluation spreads a cluster.
inline constexpr double kSubentropySpread = 1e-7;

/// Q(rho) = -sum_j (prod_{k != j} l_j / (l_j - l_k)) l_j ln l_j over the full
/// spectrum, in nats.
///
/// The product form is singular on degenerate spectra. Eigenvalues whose
/// neighbouring gaps are below 1e-7 are grouped into clusters, and each
/// cluster is replaced by equally spaced values 1e-7 apart about its mean
/// (trace is preserved). The truncation error is O(eps ln(1/eps)). A cluster
/// at zero may step slightly negative; there the evaluation continues
/// x^n ln x as x^n ln|x|, whose divided differences stay continuous. The sum
/// itself cancels catastrophically for clustered spectra, so it is evaluated
/// in multiprecision arithmetic sized to the smallest gap.
double subentropy(const DensityMatrix& rho);

/// Same evaluation on a raw spectrum; exposed so tests can drive the
/// cluster-spreading path directly.
double subentropy_of_spectrum(std::vector<double> eigenvalues,
                              double spread = kSubentropySpread);

struct JointMarginals {
  double s_ab = 0.0;
  double s_a = 0.0;
  double s_b = 0.0;
};

JointMarginals quantum_joint_marginals(const DensityMatrix& rho_ab, BipartiteDims dims,
                                       LogBase base = LogBase::nats);

/// S(A|B) = S(A,B) - S(B). Negative values signal entanglement.
double s_conditional(const DensityMatrix& rho_ab, BipartiteDims dims,
                     LogBase base = LogBase::nats);

/// S(A:B) = S(A) + S(B) - S(A,B).
double s_mutual(const DensityMatrix& rho_ab, BipartiteDims dims, LogBase base = LogBase::nats);

/// Eigenvalues of sigma at or below this count as outside its support.
inline constexpr double kSupportThreshold = 1e-10;
/// <w|rho|w> above this for a kernel vector w of sigma means supp rho is not
/// contained in supp sigma.
inline constexpr double kSupportLeakTolerance = 1e-9;

/// S(rho || sigma) = Tr rho ln rho - Tr rho ln sigma, +infinity unless
/// supp rho is inside supp sigma.
ExtendedReal quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      LogBase base = LogBase::nats);

/// chi = S(sum p_i rho_i) - sum p_i S(rho_i).
double holevo_chi(const Ensemble& e, LogBase base = LogBase::nats);

/// Classical joint p(i, j) = p_i Tr(rho_i E_j) of preparation and outcome.
Joint2 measurement_joint(const Ensemble& e, const Povm& m);

/// Mutual information of measurement_joint.
double measured_mutual_info(const Ensemble& e, const Povm& m, LogBase base = LogBase::nats);

struct MixingBoundTerms {
  double s_avg = 0.0;  // S(sum p_i rho_i)
  double h_p = 0.0;    // H(p)
  double avg_s = 0.0;  // sum p_i S(rho_i)
};

MixingBoundTerms mixing_bound_terms(const Ensemble& e, LogBase base = LogBase::nats);

/// sum_i p_i |i><i| (x) rho_i on dimension n * d; the flag register is the
/// A factor.
DensityMatrix orthogonal_embedding(const Ensemble& e);

/// exp(-n S(rho || sigma)), 0 when the relative entropy is infinite. Clamped
/// to [0, 1]. Throws InvariantError for n < 1.
double sanov_confusion_probability(const DensityMatrix& rho, const DensityMatrix& sigma,
                                   std::int64_t n);

/// E_j = S^{-1/2} G_j S^{-1/2} with G_j Ginibre positive operators and
/// S = sum G_j. Any outcome count >= 1 is allowed.
Povm random_povm(std::size_t dim, std::size_t outcomes, std::uint64_t seed);

/// Rank-one projectors onto the eigenvectors of a state.
Povm eigenbasis_povm(const DensityMatrix& rho);

}  // namespace entrolab
