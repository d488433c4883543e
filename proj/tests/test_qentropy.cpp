#include <doctest.h>

#include <cmath>
#include <span>

#include "entrolab/propcheck.hpp"
#include "entrolab/qentropy.hpp"

using namespace entrolab;

namespace {

DensityMatrix bell() {
  ComplexMatrix m(4, 4);
  for (std::size_t i : {0u, 3u})
    for (std::size_t j : {0u, 3u}) m(i, j) = 0.5;
  return DensityMatrix(m);
}

DensityMatrix plus() { return DensityMatrix::pure(std::vector<Complex>{1.0, 1.0}); }
DensityMatrix ket(std::size_t i, std::size_t d) {
  std::vector<Complex> v(d);
  v[i] = 1.0;
  return DensityMatrix::pure(v);
}

// The defining sum in long double, valid for well-separated spectra.
double subentropy_direct(std::span<const double> l) {
  long double q = 0;
  const std::size_t n = l.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (l[j] == 0) continue;
    long double denom = 1;
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) denom *= static_cast<long double>(l[j]) - l[k];
    q -= std::pow(static_cast<long double>(l[j]), n) * std::log(static_cast<long double>(l[j])) /
         denom;
  }
  return static_cast<double>(q);
}

}  // namespace

TEST_CASE("von neumann entropy pinned values") {
  for (std::size_t d = 2; d <= 16; ++d) {
    CHECK(std::abs(von_neumann(DensityMatrix::maximally_mixed(d)) - std::log(double(d))) < 1e-10);
  }
  CHECK(von_neumann(DensityMatrix::diagonal(std::vector<double>{0.7, 0.3})) ==
        doctest::Approx(0.610864).epsilon(1e-6));
  CHECK(von_neumann(DensityMatrix::maximally_mixed(4), LogBase::bits) == doctest::Approx(2.0));
  CHECK(von_neumann(plus()) < 1e-12);
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(von_neumann(random_density(4, 1, s)) < 1e-9);
}

TEST_CASE("bipartite entropies of a bell state") {
  const auto m = quantum_joint_marginals(bell(), {2, 2});
  CHECK(m.s_ab < 1e-12);
  CHECK(m.s_a == doctest::Approx(kLn2).epsilon(1e-12));
  CHECK(std::abs(s_conditional(bell(), {2, 2}) + kLn2) < 1e-8);
  CHECK(s_mutual(bell(), {2, 2}) == doctest::Approx(2 * kLn2));
  CHECK_THROWS_AS(s_conditional(bell(), {3, 2}), DimensionError);
}

TEST_CASE("subentropy against closed forms") {
  // Q(I/d) = ln d - (1/2 + ... + 1/d)
  for (std::size_t d = 2; d <= 4; ++d) {
    double harmonic = 0;
    for (std::size_t k = 2; k <= d; ++k) harmonic += 1.0 / double(k);
    CHECK(std::abs(subentropy(DensityMatrix::maximally_mixed(d)) -
                   (std::log(double(d)) - harmonic)) < 1e-5);
  }
  CHECK(subentropy(DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.193147).epsilon(1e-6));
  CHECK(subentropy(DensityMatrix::diagonal(std::vector<double>{0.7, 0.3})) ==
        doctest::Approx(0.166033).epsilon(1e-6));
  CHECK(subentropy(plus()) == doctest::Approx(0.0).epsilon(1e-12));

  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = random_density(3, 3, 40 + s);
    CHECK(subentropy(rho) == doctest::Approx(subentropy_direct(rho.eigenvalues())).epsilon(1e-9));
  }
}

TEST_CASE("subentropy with repeated and zero eigenvalues") {
  // Perturbed spectra approach the degenerate limit.
  const std::vector<double> base{0.4, 0.3, 0.3, 0.0};
  const double q = subentropy_of_spectrum(base);
  CHECK(q >= 0.0);
  CHECK(q <= -(0.4 * std::log(0.4) + 0.6 * std::log(0.3)));
  double prev = 1.0;
  for (double eps : {1e-3, 1e-4, 1e-5}) {
    const double approx = subentropy_direct(std::vector<double>{0.4 + eps, 0.3, 0.3 - eps / 2, eps / 2});
    const double err = std::abs(approx - q);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("quantum relative entropy") {
  const auto half = DensityMatrix::maximally_mixed(2);
  CHECK(quantum_relative_entropy(ket(0, 2), half).value() == doctest::Approx(kLn2));
  CHECK(quantum_relative_entropy(half, half).value() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(quantum_relative_entropy(ket(0, 2), ket(1, 2)).is_infinite());
  CHECK(quantum_relative_entropy(half, ket(0, 2)).is_infinite());
  CHECK(quantum_relative_entropy(ket(0, 2), ket(0, 2)).value() ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(quantum_relative_entropy(half, DensityMatrix::maximally_mixed(3)),
                  DimensionError);

  // Commuting pairs reduce to the classical divergence of the spectra.
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Distribution p = random_distribution(4, 2 * s);
    const Distribution q = random_distribution(4, 2 * s + 1);
    const ComplexMatrix u = random_unitary(4, 500 + s);
    const auto rho = conjugate_by_unitary(DensityMatrix::diagonal(p.probs()), u);
    const auto sigma = conjugate_by_unitary(DensityMatrix::diagonal(q.probs()), u);
    CHECK(std::abs(quantum_relative_entropy(rho, sigma).value() -
                   relative_entropy(p, q, LogBase::nats).value()) < 1e-9);
  }
}

TEST_CASE("holevo quantity and measurements") {
  const Ensemble orthogonal(Distribution({0.5, 0.5}), {ket(0, 2), ket(1, 2)});
  CHECK(holevo_chi(orthogonal) == doctest::Approx(kLn2));
  const Povm computational = eigenbasis_povm(DensityMatrix::diagonal(std::vector<double>{0.6, 0.4}));
  CHECK(measured_mutual_info(orthogonal, computational) == doctest::Approx(kLn2));

  const Ensemble zero_plus(Distribution({0.5, 0.5}), {ket(0, 2), plus()});
  // Average state has eigenvalues (1 +- 1/sqrt 2) / 2.
  const double l = (1 + 1 / std::sqrt(2.0)) / 2;
  const double chi = -l * std::log(l) - (1 - l) * std::log(1 - l);
  CHECK(holevo_chi(zero_plus) == doctest::Approx(chi).epsilon(1e-12));
  CHECK(holevo_chi(zero_plus) == doctest::Approx(0.416496).epsilon(1e-6));
  CHECK(measured_mutual_info(zero_plus, computational, LogBase::bits) ==
        doctest::Approx(0.311278).epsilon(1e-6));

  const auto t = mixing_bound_terms(zero_plus);
  CHECK(t.s_avg == doctest::Approx(chi));
  CHECK(t.h_p == doctest::Approx(kLn2));
  CHECK(t.avg_s == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(Ensemble(Distribution({0.5, 0.5}), {ket(0, 2)}), DimensionError);
  CHECK_THROWS_AS(Ensemble(Distribution({0.5, 0.5}), {ket(0, 2), ket(0, 3)}), DimensionError);
  CHECK_THROWS_AS(measured_mutual_info(zero_plus, eigenbasis_povm(DensityMatrix::maximally_mixed(3))),
                  DimensionError);
}

TEST_CASE("povm validation") {
  const ComplexMatrix p0 = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0});
  const ComplexMatrix p1 = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
  CHECK_NOTHROW(Povm({p0, p1}));
  CHECK_THROWS_AS(Povm({p0}), InvariantError);
  CHECK_THROWS_AS(Povm({p0 * Complex(2.0), p1 * Complex(-1.0)}), InvariantError);
  CHECK_THROWS_AS(Povm({ComplexMatrix(2, 2, {0.5, 0.5, 0.0, 0.5}), p1}), InvariantError);
  for (std::size_t k = 1; k <= 6; ++k) {
    const Povm m = random_povm(3, k, k);
    ComplexMatrix sum(3, 3);
    for (const auto& e : m.elements()) sum += e;
    CHECK(max_abs_diff(sum, ComplexMatrix::identity(3)) < 1e-9);
  }
}

TEST_CASE("orthogonal embedding attains the mixing bound") {
  const Ensemble e = random_ensemble(3, 2, 2, 17);
  const DensityMatrix emb = orthogonal_embedding(e);
  CHECK(emb.dim() == 6);
  const auto t = mixing_bound_terms(e);
  CHECK(von_neumann(emb) == doctest::Approx(t.h_p + t.avg_s).epsilon(1e-10));
  // Block (i, i) holds p_i rho_i.
  CHECK(std::abs(emb.matrix()(2, 3) - e.probs()[1] * e.states()[1].matrix()(0, 1)) < 1e-15);
}

TEST_CASE("sanov estimate") {
  const auto half = DensityMatrix::maximally_mixed(2);
  CHECK(sanov_confusion_probability(half, half, 100) == doctest::Approx(1.0));
  CHECK(sanov_confusion_probability(ket(0, 2), half, 20) ==
        doctest::Approx(9.5367431640625e-07).epsilon(1e-12));
  CHECK(sanov_confusion_probability(ket(0, 2), ket(1, 2), 5) == 0.0);
  CHECK_THROWS_AS(sanov_confusion_probability(half, half, 0), InvariantError);
}
