#include "entrolab/probdist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace entrolab {

namespace {

// Validates non-negativity and total mass, rescaling a near-unit total.
// Returns the observed mass minus one.
double normalize_mass(std::vector<double>& probs, const char* what) {
  if (probs.empty()) {
    throw InvariantError("non_empty", 0.0, std::string(what) + ": no entries");
  }
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!std::isfinite(p)) {
      throw InvariantError("finite", 0.0, std::string(what) + ": non-finite entry");
    }
    if (p < 0.0) {
      std::ostringstream msg;
      msg << what << ": negative probability " << p << " at index " << i;
      throw InvariantError("non_negative", -p, msg.str());
    }
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  const double excess = total - 1.0;
  if (std::abs(excess) > kMassTolerance) {
    std::ostringstream msg;
    msg << what << ": probabilities sum to " << total << " (off by " << excess << ")";
    throw InvariantError("unit_mass", std::abs(excess), msg.str());
  }
  // Below summation round-off a rescale cannot improve the total.
  const double roundoff = static_cast<double>(probs.size()) * std::numeric_limits<double>::epsilon();
  if (std::abs(excess) > roundoff) {
    for (double& p : probs) p /= total;
  }
  return excess;
}

double entropy_of_cells(std::span<const double> cells, LogBase base) {
  double h = 0.0;
  for (double p : cells) h += neg_x_log_x(p);
  return from_nats(h, base);
}

std::size_t axis_index(Axis a) { return static_cast<std::size_t>(a); }

}  // namespace

Distribution::Distribution(std::vector<double> probs, std::vector<std::string> labels)
    : probs_(std::move(probs)), labels_(std::move(labels)) {
  adjustment_ = normalize_mass(probs_, "distribution");
  if (!labels_.empty() && labels_.size() != probs_.size()) {
    throw FormatError("distribution: label count does not match outcome count");
  }
}

Distribution Distribution::uniform(std::size_t n) {
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Joint2::Joint2(std::size_t rows, std::size_t cols, std::vector<double> probs)
    : rows_(rows), cols_(cols), probs_(std::move(probs)) {
  if (rows_ == 0 || cols_ == 0 || probs_.size() != rows_ * cols_) {
    throw FormatError("joint: cell count does not match shape");
  }
  normalize_mass(probs_, "joint");
}

Joint2 Joint2::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw FormatError("joint: empty table");
  const std::size_t cols = rows.front().size();
  std::vector<double> cells;
  cells.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw FormatError("joint: ragged rows");
    cells.insert(cells.end(), r.begin(), r.end());
  }
  return Joint2(rows.size(), cols, std::move(cells));
}

Joint2 Joint2::product(const Distribution& u, const Distribution& v) {
  std::vector<double> cells;
  cells.reserve(u.size() * v.size());
  for (double a : u.probs())
    for (double b : v.probs()) cells.push_back(a * b);
  return Joint2(u.size(), v.size(), std::move(cells));
}

Joint2 Joint2::transposed() const {
  std::vector<double> cells(probs_.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) cells[j * rows_ + i] = (*this)(i, j);
  return Joint2(cols_, rows_, std::move(cells));
}

Joint3::Joint3(std::array<std::size_t, 3> shape, std::vector<double> probs)
    : shape_(shape), probs_(std::move(probs)) {
  if (shape_[0] == 0 || shape_[1] == 0 || shape_[2] == 0 ||
      probs_.size() != shape_[0] * shape_[1] * shape_[2]) {
    throw FormatError("joint3: cell count does not match shape");
  }
  normalize_mass(probs_, "joint3");
}

StochasticMatrix::StochasticMatrix(std::vector<Distribution> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw FormatError("stochastic matrix: no rows");
  for (const auto& r : rows_) {
    if (r.size() != rows_.front().size()) {
      throw DimensionError("stochastic matrix: rows of unequal length");
    }
  }
}

StochasticMatrix StochasticMatrix::constant(std::size_t inputs, const Distribution& row) {
  return StochasticMatrix(std::vector<Distribution>(inputs, row));
}

StochasticMatrix StochasticMatrix::identity(std::size_t n) {
  std::vector<Distribution> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> r(n, 0.0);
    r[i] = 1.0;
    rows.emplace_back(std::move(r));
  }
  return StochasticMatrix(std::move(rows));
}

MarkovChain3::MarkovChain3(Distribution source, StochasticMatrix trans_ab,
                           StochasticMatrix trans_bc)
    : source_(std::move(source)), trans_ab_(std::move(trans_ab)), trans_bc_(std::move(trans_bc)) {
  if (trans_ab_.inputs() != source_.size()) {
    throw DimensionError("markov chain: A->B transition rows must match the source size");
  }
  if (trans_bc_.inputs() != trans_ab_.outputs()) {
    throw DimensionError("markov chain: B->C transition rows must match the size of B");
  }
}

double shannon_entropy(const Distribution& p, LogBase base) {
  return entropy_of_cells(p.probs(), base);
}

Distribution marginal(const Joint2& j, Axis keep) {
  if (keep == Axis::C) throw FormatError("marginal: a two-variable joint has no axis C");
  const bool keep_a = keep == Axis::A;
  std::vector<double> out(keep_a ? j.rows() : j.cols(), 0.0);
  for (std::size_t a = 0; a < j.rows(); ++a)
    for (std::size_t b = 0; b < j.cols(); ++b) out[keep_a ? a : b] += j(a, b);
  return Distribution(std::move(out));
}

Distribution marginal(const Joint3& j, Axis keep) {
  const auto& s = j.shape();
  const std::size_t k = axis_index(keep);
  std::vector<double> out(s[k], 0.0);
  for (std::size_t a = 0; a < s[0]; ++a)
    for (std::size_t b = 0; b < s[1]; ++b)
      for (std::size_t c = 0; c < s[2]; ++c) {
        const std::array<std::size_t, 3> idx{a, b, c};
        out[idx[k]] += j(a, b, c);
      }
  return Distribution(std::move(out));
}

Joint2 marginal_pair(const Joint3& j, Axis drop) {
  const auto& s = j.shape();
  const std::size_t d = axis_index(drop);
  std::array<std::size_t, 2> kept{};
  for (std::size_t ax = 0, n = 0; ax < 3; ++ax)
    if (ax != d) kept[n++] = ax;
  std::vector<double> out(s[kept[0]] * s[kept[1]], 0.0);
  for (std::size_t a = 0; a < s[0]; ++a)
    for (std::size_t b = 0; b < s[1]; ++b)
      for (std::size_t c = 0; c < s[2]; ++c) {
        const std::array<std::size_t, 3> idx{a, b, c};
        out[idx[kept[0]] * s[kept[1]] + idx[kept[1]]] += j(a, b, c);
      }
  return Joint2(s[kept[0]], s[kept[1]], std::move(out));
}

double joint_entropy(const Joint2& j, LogBase base) { return entropy_of_cells(j.cells(), base); }

double joint_entropy(const Joint3& j, LogBase base) { return entropy_of_cells(j.cells(), base); }

double conditional_entropy(const Joint2& j, Axis given, LogBase base) {
  return joint_entropy(j, base) - shannon_entropy(marginal(j, given), base);
}

double mutual_information(const Joint2& j, LogBase base) {
  return shannon_entropy(marginal(j, Axis::A), base) + shannon_entropy(marginal(j, Axis::B), base) -
         joint_entropy(j, base);
}

ExtendedReal relative_entropy(const Distribution& p, const Distribution& q, LogBase base) {
  if (p.size() != q.size()) {
    throw DimensionError("relative entropy: distributions have different lengths");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return ExtendedReal::infinity();
    d += p[i] * std::log(p[i] / q[i]);
  }
  return ExtendedReal::finite(from_nats(d, base));
}

Joint2 merge_axes(const Joint3& j, std::pair<Axis, Axis> axes) {
  std::size_t x = axis_index(axes.first);
  std::size_t y = axis_index(axes.second);
  if (x == y) throw FormatError("merge_axes: the two axes must differ");
  if (x > y) std::swap(x, y);
  const std::size_t rest = 3 - x - y;
  const auto& s = j.shape();
  const std::size_t fused = s[x] * s[y];
  const bool fused_first = x < rest;
  const std::size_t rows = fused_first ? fused : s[rest];
  const std::size_t cols = fused_first ? s[rest] : fused;
  std::vector<double> out(rows * cols, 0.0);
  for (std::size_t a = 0; a < s[0]; ++a)
    for (std::size_t b = 0; b < s[1]; ++b)
      for (std::size_t c = 0; c < s[2]; ++c) {
        const std::array<std::size_t, 3> idx{a, b, c};
        const std::size_t f = idx[x] * s[y] + idx[y];
        const std::size_t r = idx[rest];
        out[fused_first ? f * cols + r : r * cols + f] = j(a, b, c);
      }
  return Joint2(rows, cols, std::move(out));
}

Joint3 markov_joint(const MarkovChain3& chain) {
  const auto& src = chain.source();
  const auto& ab = chain.trans_ab();
  const auto& bc = chain.trans_bc();
  const std::array<std::size_t, 3> shape{src.size(), ab.outputs(), bc.outputs()};
  std::vector<double> cells;
  cells.reserve(shape[0] * shape[1] * shape[2]);
  for (std::size_t a = 0; a < shape[0]; ++a)
    for (std::size_t b = 0; b < shape[1]; ++b)
      for (std::size_t c = 0; c < shape[2]; ++c) cells.push_back(src[a] * ab(a, b) * bc(b, c));
  return Joint3(shape, std::move(cells));
}

}  // namespace entrolab
