#include <doctest.h>

#include <cmath>

#include "entrolab/probdist.hpp"

using namespace entrolab;

namespace {

// Direct sums over cells, written independently of the library.
double h2(double p) { return p <= 0 || p >= 1 ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

}  // namespace

TEST_CASE("distribution validation") {
  CHECK_NOTHROW(Distribution({0.25, 0.75}));
  CHECK_THROWS_AS(Distribution({}), InvariantError);
  CHECK_THROWS_AS(Distribution({0.5, -0.1, 0.6}), InvariantError);
  CHECK_THROWS_AS(Distribution({0.5, 0.6}), InvariantError);
  CHECK_THROWS_AS(Distribution({0.5, NAN}), InvariantError);

  try {
    Distribution({0.7, 0.4});
    FAIL("expected InvariantError");
  } catch (const InvariantError& e) {
    CHECK(e.invariant() == "unit_mass");
    CHECK(e.magnitude() == doctest::Approx(0.1));
  }

  // Within tolerance: accepted and renormalized.
  const Distribution p({0.5, 0.5 + 5e-13});
  CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("shannon entropy values") {
  CHECK(shannon_entropy(Distribution({1.0})) == 0.0);
  CHECK(shannon_entropy(Distribution({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(shannon_entropy(Distribution({0.9, 0.1})) == doctest::Approx(0.468996).epsilon(1e-6));
  CHECK(shannon_entropy(Distribution({1.0, 0.0})) == 0.0);
  CHECK(shannon_entropy(Distribution({0.5, 0.5}), LogBase::nats) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  for (int n = 1; n <= 16; ++n) {
    CHECK(shannon_entropy(Distribution::uniform(n)) ==
          doctest::Approx(std::log2(n)).epsilon(1e-13));
  }
}

TEST_CASE("joint quantities on a fixed table") {
  const Joint2 j = Joint2::from_rows({{0.4, 0.1}, {0.2, 0.3}});
  CHECK(joint_entropy(j) == doctest::Approx(1.846439).epsilon(1e-6));
  CHECK(conditional_entropy(j, Axis::B) == doctest::Approx(0.875489).epsilon(1e-6));
  CHECK(mutual_information(j) == doctest::Approx(0.124511).epsilon(1e-5));

  const Distribution pa = marginal(j, Axis::A);
  CHECK(pa[0] == doctest::Approx(0.5));
  CHECK(pa[1] == doctest::Approx(0.5));
  const Distribution pb = marginal(j, Axis::B);
  CHECK(pb[0] == doctest::Approx(0.6));
  CHECK_THROWS_AS(marginal(j, Axis::C), FormatError);

  const Joint2 diag = Joint2::from_rows({{0.5, 0.0}, {0.0, 0.5}});
  CHECK(mutual_information(diag) == doctest::Approx(1.0));
  CHECK(conditional_entropy(diag, Axis::A) == doctest::Approx(0.0));

  const Joint2 product = Joint2::product(Distribution({0.3, 0.7}), Distribution({0.2, 0.5, 0.3}));
  CHECK(std::abs(mutual_information(product)) < 1e-14);

  CHECK_THROWS_AS(Joint2::from_rows({{0.5}, {0.25, 0.25}}), FormatError);
}

TEST_CASE("relative entropy") {
  const Distribution p({0.5, 0.5});
  const Distribution q({0.25, 0.75});
  const ExtendedReal d = relative_entropy(p, q);
  REQUIRE(d.is_finite());
  // 0.5 log2(2) + 0.5 log2(2/3)
  CHECK(d.value() == doctest::Approx(0.5 + 0.5 * std::log2(2.0 / 3.0)).epsilon(1e-14));
  CHECK(d.value() == doctest::Approx(0.207519).epsilon(1e-6));
  CHECK(relative_entropy(p, p).value() == 0.0);
  CHECK(relative_entropy(Distribution({1.0, 0.0}), Distribution({0.0, 1.0})).is_infinite());
  CHECK(relative_entropy(Distribution({0.0, 1.0}), Distribution({0.5, 0.5})).value() ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(relative_entropy(p, Distribution({1.0})), DimensionError);
}

TEST_CASE("tripartite marginals and axis merging") {
  // cells indexed (i, j, k) with k fastest
  std::vector<double> cells(12);
  for (std::size_t i = 0; i < 12; ++i) cells[i] = static_cast<double>(i + 1) / 78.0;
  const Joint3 j({2, 3, 2}, cells);
  const Distribution pb = marginal(j, Axis::B);
  CHECK(pb.size() == 3);
  CHECK(pb[0] == doctest::Approx((1 + 2 + 7 + 8) / 78.0));

  const Joint2 ab = marginal_pair(j, Axis::C);
  CHECK(ab.rows() == 2);
  CHECK(ab.cols() == 3);
  CHECK(ab(1, 2) == doctest::Approx((11 + 12) / 78.0));

  const Joint2 a_bc = merge_axes(j, {Axis::B, Axis::C});
  CHECK(a_bc.rows() == 2);
  CHECK(a_bc.cols() == 6);
  CHECK(a_bc(1, 3) == doctest::Approx(10 / 78.0));  // b = 1, c = 1
  CHECK(joint_entropy(a_bc) == doctest::Approx(joint_entropy(j)));

  const Joint2 ac_b = merge_axes(j, {Axis::A, Axis::C});
  CHECK(ac_b.rows() == 4);
  CHECK(ac_b.cols() == 3);
  CHECK(ac_b(3, 0) == doctest::Approx(8 / 78.0));  // a = 1, c = 1, b = 0
  CHECK_THROWS_AS(merge_axes(j, {Axis::B, Axis::B}), FormatError);
}

TEST_CASE("markov chain joint") {
  const StochasticMatrix bsc({Distribution({0.9, 0.1}), Distribution({0.1, 0.9})});
  const MarkovChain3 chain(Distribution({0.5, 0.5}), bsc, bsc);
  const Joint3 j = markov_joint(chain);
  const double i_ab = mutual_information(marginal_pair(j, Axis::C));
  const double i_ac = mutual_information(marginal_pair(j, Axis::B));
  CHECK(i_ab == doctest::Approx(1.0 - h2(0.1)).epsilon(1e-12));
  CHECK(i_ab == doctest::Approx(0.531004).epsilon(1e-6));
  // Two flips compose to a single flip with probability 2(0.1)(0.9).
  CHECK(i_ac == doctest::Approx(1.0 - h2(0.18)).epsilon(1e-12));
  CHECK(i_ac == doctest::Approx(0.319923).epsilon(1e-6));

  const MarkovChain3 trivial(Distribution({1.0}), StochasticMatrix::identity(1),
                             StochasticMatrix::identity(1));
  CHECK(markov_joint(trivial).cells().size() == 1);

  CHECK_THROWS_AS(MarkovChain3(Distribution({0.5, 0.5}), StochasticMatrix::identity(3), bsc),
                  DimensionError);
}
