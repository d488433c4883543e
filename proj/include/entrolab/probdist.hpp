#pragma once

// Classical distributions over one, two and three discrete variables and the
// Shannon entropy calculus built on them. All values are immutable after
// construction; every function here is pure.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entrolab/core.hpp"

namespace entrolab {

/// Tolerance on the total mass of a distribution or joint.
inline constexpr double kMassTolerance = 1e-12;

/// Names a variable of a joint distribution: A is axis 0, B axis 1, C axis 2.
enum class Axis { A = 0, B = 1, C = 2 };

class Distribution {
 public:
  /// Validates and, if the mass is off by at most kMassTolerance, rescales
  /// once. Throws InvariantError on a negative entry or a larger mass error.
  explicit Distribution(std::vector<double> probs, std::vector<std::string> labels = {});

  static Distribution uniform(std::size_t n);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Input mass minus one, as seen before renormalization.
  double normalization_adjustment() const noexcept { return adjustment_; }

 private:
  std::vector<double> probs_;
  std::vector<std::string> labels_;
  double adjustment_ = 0.0;
};

/// Joint distribution p(i, j), row-major with i indexing A.
class Joint2 {
 public:
  Joint2(std::size_t rows, std::size_t cols, std::vector<double> probs);
  /// Nested rows; throws FormatError when ragged.
  static Joint2 from_rows(const std::vector<std::vector<double>>& rows);
  /// p(i, j) = u_i v_j.
  static Joint2 product(const Distribution& u, const Distribution& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return probs_[i * cols_ + j]; }
  std::span<const double> cells() const noexcept { return probs_; }

  Joint2 transposed() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> probs_;
};

/// Joint distribution p(i, j, k) stored with k fastest.
class Joint3 {
 public:
  Joint3(std::array<std::size_t, 3> shape, std::vector<double> probs);

  const std::array<std::size_t, 3>& shape() const noexcept { return shape_; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return probs_[(i * shape_[1] + j) * shape_[2] + k];
  }
  std::span<const double> cells() const noexcept { return probs_; }

 private:
  std::array<std::size_t, 3> shape_;
  std::vector<double> probs_;
};

/// Row-stochastic matrix; row i is the conditional distribution given input i.
class StochasticMatrix {
 public:
  explicit StochasticMatrix(std::vector<Distribution> rows);
  /// Every row equal to `row`.
  static StochasticMatrix constant(std::size_t inputs, const Distribution& row);
  static StochasticMatrix identity(std::size_t n);

  std::size_t inputs() const noexcept { return rows_.size(); }
  std::size_t outputs() const noexcept { return rows_.front().size(); }
  const Distribution& row(std::size_t i) const { return rows_[i]; }
  double operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }

 private:
  std::vector<Distribution> rows_;
};

/// A -> B -> C.
class MarkovChain3 {
 public:
  MarkovChain3(Distribution source, StochasticMatrix trans_ab, StochasticMatrix trans_bc);

  const Distribution& source() const noexcept { return source_; }
  const StochasticMatrix& trans_ab() const noexcept { return trans_ab_; }
  const StochasticMatrix& trans_bc() const noexcept { return trans_bc_; }

 private:
  Distribution source_;
  StochasticMatrix trans_ab_;
  StochasticMatrix trans_bc_;
};

double shannon_entropy(const Distribution& p, LogBase base = LogBase::bits);

Distribution marginal(const Joint2& j, Axis keep);
Distribution marginal(const Joint3& j, Axis keep);
/// Sums out `drop`; the two remaining axes keep their relative order.
Joint2 marginal_pair(const Joint3& j, Axis drop);

double joint_entropy(const Joint2& j, LogBase base = LogBase::bits);
double joint_entropy(const Joint3& j, LogBase base = LogBase::bits);

/// H(other | given) = H(A,B) - H(given).
double conditional_entropy(const Joint2& j, Axis given, LogBase base = LogBase::bits);

/// H(A) + H(B) - H(A,B).
double mutual_information(const Joint2& j, LogBase base = LogBase::bits);

/// Kullback-Leibler divergence; +infinity when p has mass outside supp q.
/// Throws DimensionError on a length mismatch.
ExtendedReal relative_entropy(const Distribution& p, const Distribution& q,
                              LogBase base = LogBase::bits);

/// Fuses two axes of a tripartite joint into one. The fused axis takes the
/// position of the lower-numbered axis and is indexed x * dim(y) + y for
/// x < y. Throws FormatError when both selectors name the same axis.
Joint2 merge_axes(const Joint3& j, std::pair<Axis, Axis> axes);

/// p(a, b, c) = p(a) p(b|a) p(c|b).
Joint3 markov_joint(const MarkovChain3& chain);

}  // namespace entrolab
