#include "entrolab/qentropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace entrolab {

namespace {

DensityMatrix average_state(const Distribution& probs, const std::vector<DensityMatrix>& states) {
  if (states.empty()) throw DimensionError("ensemble: no states");
  if (states.size() != probs.size()) {
    throw DimensionError("ensemble: probability count does not match state count");
  }
  const std::size_t dim = states.front().dim();
  ComplexMatrix avg(dim, dim);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != dim) throw DimensionError("ensemble: states differ in dimension");
    avg += states[i].matrix() * Complex(probs[i]);
  }
  return DensityMatrix(avg);
}

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << what << ": states have dimensions " << a.dim() << " and " << b.dim();
    throw DimensionError(msg.str());
  }
}

// Groups sorted (descending) eigenvalues into runs closer than `spread` and
// respaces each run about its mean. Runs that collide with a neighbour after
// respacing are merged and respaced again.
std::vector<double> spread_clusters(const std::vector<double>& sorted, double spread) {
  const std::size_t n = sorted.size();
  // Cluster k covers [starts[k], starts[k+1]).
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 1; i < n; ++i)
    if (sorted[i - 1] - sorted[i] >= spread) starts.push_back(i);
  starts.push_back(n);

  std::vector<double> out(n);
  const double collide = spread * (1.0 - 1e-6);
  for (;;) {
    for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
      const std::size_t lo = starts[k];
      const std::size_t hi = starts[k + 1];
      const std::size_t m = hi - lo;
      if (m == 1) {
        out[lo] = sorted[lo];
        continue;
      }
      const double mean = std::accumulate(sorted.begin() + lo, sorted.begin() + hi, 0.0) /
                          static_cast<double>(m);
      for (std::size_t i = 0; i < m; ++i) {
        const double offset = (static_cast<double>(m - 1) / 2.0 - static_cast<double>(i)) * spread;
        out[lo + i] = mean + offset;
      }
    }
    bool merged = false;
    for (std::size_t k = 1; k + 1 < starts.size();) {
      const std::size_t boundary = starts[k];
      if (out[boundary - 1] - out[boundary] < collide) {
        starts.erase(starts.begin() + static_cast<std::ptrdiff_t>(k));
        merged = true;
      } else {
        ++k;
      }
    }
    if (!merged) return out;
  }
}

template <class Real>
double subentropy_sum(const std::vector<double>& lambdas) {
  const std::size_t n = lambdas.size();
  std::vector<Real> l(lambdas.begin(), lambdas.end());
  Real total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (lambdas[j] == 0.0) continue;
    using boost::multiprecision::abs;
    using boost::multiprecision::log;
    using boost::multiprecision::pow;
    Real numer = pow(l[j], static_cast<int>(n)) * log(abs(l[j]));
    Real denom = 1;
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) denom *= l[j] - l[k];
    total += numer / denom;
  }
  return -static_cast<double>(total);
}

// Decimal digits lost to cancellation: log10 of the largest summand.
double cancellation_digits(const std::vector<double>& l) {
  const std::size_t n = l.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (l[j] == 0.0) continue;
    double lg = static_cast<double>(n) * std::log10(std::abs(l[j]));
    const double ln_abs = std::abs(std::log(std::abs(l[j])));
    if (ln_abs == 0.0) continue;
    lg += std::log10(ln_abs);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) lg -= std::log10(std::abs(l[j] - l[k]));
    worst = std::max(worst, lg);
  }
  return worst;
}

}  // namespace

Ensemble::Ensemble(Distribution probs, std::vector<DensityMatrix> states)
    : probs_(std::move(probs)),
      states_(std::move(states)),
      average_(average_state(probs_, states_)) {}

Povm::Povm(std::vector<ComplexMatrix> elements) {
  if (elements.empty()) throw DimensionError("POVM: no elements");
  const std::size_t dim = elements.front().rows();
  ComplexMatrix sum(dim, dim);
  elements_.reserve(elements.size());
  for (std::size_t j = 0; j < elements.size(); ++j) {
    const auto& e = elements[j];
    if (!e.is_square() || e.rows() != dim || dim == 0) {
      throw DimensionError("POVM: elements must be square and of equal dimension");
    }
    const double defect = hermiticity_defect(e);
    if (defect > kHermitianTolerance) {
      std::ostringstream msg;
      msg << "POVM: element " << j << " is not Hermitian (defect " << defect << ")";
      throw InvariantError("povm_hermitian", defect, msg.str());
    }
    ComplexMatrix h = (e + e.adjoint()) * Complex(0.5);
    const double lowest = hermitian_spectrum(h).eigenvalues.back();
    if (lowest < -kPsdTolerance) {
      std::ostringstream msg;
      msg << "POVM: element " << j << " has negative eigenvalue " << lowest;
      throw InvariantError("povm_positive", -lowest, msg.str());
    }
    sum += h;
    elements_.push_back(std::move(h));
  }
  const double gap = max_abs_diff(sum, ComplexMatrix::identity(dim));
  if (gap > kPovmCompletenessTolerance) {
    std::ostringstream msg;
    msg << "POVM: elements sum to identity only within " << gap;
    throw InvariantError("povm_complete", gap, msg.str());
  }
}

double von_neumann(const DensityMatrix& rho, LogBase base) {
  double s = 0.0;
  for (double l : rho.eigenvalues()) s += neg_x_log_x(l);
  return from_nats(s, base);
}

double subentropy_of_spectrum(std::vector<double> eigenvalues, double spread) {
  if (eigenvalues.empty()) return 0.0;
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  const std::vector<double> spaced = spread_clusters(eigenvalues, spread);

  namespace mp = boost::multiprecision;
  const double digits = cancellation_digits(spaced) + 30.0;
  double q = 0.0;
  if (digits <= 50.0) {
    q = subentropy_sum<mp::cpp_bin_float_50>(spaced);
  } else if (digits <= 100.0) {
    q = subentropy_sum<mp::cpp_bin_float_100>(spaced);
  } else if (digits <= 500.0) {
    q = subentropy_sum<mp::number<mp::cpp_bin_float<500>>>(spaced);
  } else if (digits <= 1500.0) {
    q = subentropy_sum<mp::number<mp::cpp_bin_float<1500>>>(spaced);
  } else {
    throw Error("subentropy: spectrum too degenerate for the supported precision");
  }
  return std::max(q, 0.0);
}

double subentropy(const DensityMatrix& rho) {
  const auto ev = rho.eigenvalues();
  return subentropy_of_spectrum(std::vector<double>(ev.begin(), ev.end()));
}

JointMarginals quantum_joint_marginals(const DensityMatrix& rho_ab, BipartiteDims dims,
                                       LogBase base) {
  const DensityMatrix rho_a = partial_trace(rho_ab, dims, Subsystem::A);
  const DensityMatrix rho_b = partial_trace(rho_ab, dims, Subsystem::B);
  return {von_neumann(rho_ab, base), von_neumann(rho_a, base), von_neumann(rho_b, base)};
}

double s_conditional(const DensityMatrix& rho_ab, BipartiteDims dims, LogBase base) {
  const auto m = quantum_joint_marginals(rho_ab, dims, base);
  return m.s_ab - m.s_b;
}

double s_mutual(const DensityMatrix& rho_ab, BipartiteDims dims, LogBase base) {
  const auto m = quantum_joint_marginals(rho_ab, dims, base);
  return m.s_a + m.s_b - m.s_ab;
}

ExtendedReal quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      LogBase base) {
  require_same_dim(rho, sigma, "relative entropy");
  const Spectrum& sp = sigma.spectrum();
  const ComplexMatrix& r = rho.matrix();
  const std::size_t n = rho.dim();

  double cross = 0.0;  // Tr(rho ln sigma) on supp sigma
  for (std::size_t k = 0; k < n; ++k) {
    Complex weight = 0.0;  // <v_k| rho |v_k>
    for (std::size_t i = 0; i < n; ++i) {
      Complex row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += r(i, j) * sp.eigenvectors(j, k);
      weight += std::conj(sp.eigenvectors(i, k)) * row;
    }
    const double mu = sp.eigenvalues[k];
    if (mu <= kSupportThreshold) {
      if (weight.real() > kSupportLeakTolerance) return ExtendedReal::infinity();
      continue;
    }
    cross += std::log(mu) * weight.real();
  }
  const double neg_entropy = -von_neumann(rho);
  return ExtendedReal::finite(from_nats(neg_entropy - cross, base));
}

double holevo_chi(const Ensemble& e, LogBase base) {
  const auto t = mixing_bound_terms(e, base);
  return t.s_avg - t.avg_s;
}

Joint2 measurement_joint(const Ensemble& e, const Povm& m) {
  if (e.dim() != m.dim()) {
    std::ostringstream msg;
    msg << "measurement: ensemble dimension " << e.dim() << " differs from POVM dimension "
        << m.dim();
    throw DimensionError(msg.str());
  }
  std::vector<double> cells;
  cells.reserve(e.size() * m.outcomes());
  double total = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (const auto& element : m.elements()) {
      const double born = trace_of_product(e.states()[i].matrix(), element).real();
      const double p = std::max(0.0, e.probs()[i] * born);
      cells.push_back(p);
      total += p;
    }
  }
  for (double& c : cells) c /= total;
  return Joint2(e.size(), m.outcomes(), std::move(cells));
}

double measured_mutual_info(const Ensemble& e, const Povm& m, LogBase base) {
  return mutual_information(measurement_joint(e, m), base);
}

MixingBoundTerms mixing_bound_terms(const Ensemble& e, LogBase base) {
  MixingBoundTerms t;
  t.s_avg = von_neumann(e.average(), base);
  t.h_p = from_nats(shannon_entropy(e.probs(), LogBase::nats), base);
  for (std::size_t i = 0; i < e.size(); ++i) {
    t.avg_s += e.probs()[i] * von_neumann(e.states()[i], base);
  }
  return t;
}

DensityMatrix orthogonal_embedding(const Ensemble& e) {
  const std::size_t n = e.size();
  const std::size_t d = e.dim();
  ComplexMatrix out(n * d, n * d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = e.states()[i].matrix();
    const double p = e.probs()[i];
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y) out(i * d + x, i * d + y) = p * s(x, y);
  }
  return DensityMatrix(out);
}

double sanov_confusion_probability(const DensityMatrix& rho, const DensityMatrix& sigma,
                                   std::int64_t n) {
  if (n < 1) {
    throw InvariantError("positive_count", 0.0, "sanov estimate: copy count must be >= 1");
  }
  const ExtendedReal d = quantum_relative_entropy(rho, sigma);
  if (d.is_infinite()) return 0.0;
  const double exponent = static_cast<double>(n) * std::max(d.value(), 0.0);
  return std::clamp(std::exp(-exponent), 0.0, 1.0);
}

Povm random_povm(std::size_t dim, std::size_t outcomes, std::uint64_t seed) {
  if (dim == 0 || outcomes == 0) {
    throw InvariantError("positive_count", 0.0, "random POVM: dimension and outcomes must be >= 1");
  }
  std::vector<ComplexMatrix> g;
  g.reserve(outcomes);
  ComplexMatrix total(dim, dim);
  for (std::size_t j = 0; j < outcomes; ++j) {
    Rng rng(mix_seed(seed, j));
    ComplexMatrix x(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) x(r, c) = rng.complex_normal();
    g.push_back(x * x.adjoint());
    total += g.back();
  }
  const ComplexMatrix inv_sqrt =
      hermitian_spectrum(total).apply([](double l) { return 1.0 / std::sqrt(l); });
  std::vector<ComplexMatrix> elements;
  elements.reserve(outcomes);
  for (const auto& gj : g) {
    ComplexMatrix e = inv_sqrt * gj * inv_sqrt;
    elements.push_back((e + e.adjoint()) * Complex(0.5));
  }
  return Povm(std::move(elements));
}

Povm eigenbasis_povm(const DensityMatrix& rho) {
  const auto& v = rho.spectrum().eigenvectors;
  std::vector<ComplexMatrix> elements;
  for (std::size_t k = 0; k < rho.dim(); ++k) {
    std::vector<Complex> ket(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) ket[i] = v(i, k);
    elements.push_back(ComplexMatrix::projector(ket));
  }
  return Povm(std::move(elements));
}

}  // namespace entrolab
