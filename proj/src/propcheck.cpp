#include "entrolab/propcheck.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

namespace entrolab {

namespace {

constexpr std::size_t kClassicalTrials = 1000;
constexpr std::size_t kQuantumTrials = 300;
constexpr double kClassicalTol = 1e-12;

std::vector<double> exponential_cells(std::size_t n, Rng& rng) {
  std::vector<double> cells(n);
  double total = 0.0;
  for (auto& c : cells) {
    c = rng.exponential();
    total += c;
  }
  for (auto& c : cells) c /= total;
  return cells;
}

// Like exponential_cells, but a quarter of the time zeroes a random subset so
// the 0 log 0 convention is exercised. At least one cell stays positive.
std::vector<double> sparse_cells(std::size_t n, Rng& rng) {
  std::vector<double> cells(n);
  const bool sparse = n > 1 && rng.uniform() < 0.25;
  const std::size_t keep = rng.integer(0, n - 1);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double draw = rng.exponential();
    const bool zero = sparse && i != keep && rng.uniform() < 0.5;
    cells[i] = zero ? 0.0 : draw;
    total += cells[i];
  }
  for (auto& c : cells) c /= total;
  return cells;
}

std::size_t dim_between(Rng& rng, std::size_t lo, std::size_t hi) {
  return rng.integer(lo, std::max(lo, hi));
}

// A random mixed state whose rank is itself random.
DensityMatrix any_state(Rng& rng, std::size_t dim) {
  const std::size_t rank = rng.integer(1, dim);
  return random_density(dim, rank, rng.integer(0, ~std::size_t{0} - 1));
}

DensityMatrix full_rank_state(Rng& rng, std::size_t dim) {
  return random_density(dim, dim, rng.integer(0, ~std::size_t{0} - 1));
}

std::uint64_t draw_seed(Rng& rng) { return rng.integer(0, ~std::size_t{0} - 1); }

Json dims_json(BipartiteDims d) { return Json::array({d.dim_a, d.dim_b}); }

BipartiteDims dims_from(const Json& j) {
  return {j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>()};
}

double h_bits(const Distribution& p) { return shannon_entropy(p, LogBase::bits); }

// Joint of (A, f(A)) for a random f: A -> B.
Joint2 functional_joint(Rng& rng, std::size_t na, std::size_t nb) {
  const auto pa = sparse_cells(na, rng);
  std::vector<double> cells(na * nb, 0.0);
  for (std::size_t a = 0; a < na; ++a) cells[a * nb + rng.integer(0, nb - 1)] = pa[a];
  return Joint2(na, nb, std::move(cells));
}

Joint2 random_classical_joint(Rng& rng, const DimensionCaps& caps, std::size_t min_dim = 1) {
  const std::size_t r = dim_between(rng, min_dim, caps.classical_max);
  const std::size_t c = dim_between(rng, min_dim, caps.classical_max);
  return Joint2(r, c, sparse_cells(r * c, rng));
}

Joint3 random_classical_joint3(Rng& rng, const DimensionCaps& caps) {
  const std::array<std::size_t, 3> s{dim_between(rng, 1, caps.classical3_max),
                                     dim_between(rng, 1, caps.classical3_max),
                                     dim_between(rng, 1, caps.classical3_max)};
  return Joint3(s, sparse_cells(s[0] * s[1] * s[2], rng));
}

MarkovChain3 random_chain(Rng& rng, const DimensionCaps& caps) {
  const std::array<std::size_t, 3> sizes{dim_between(rng, 1, caps.classical_max),
                                         dim_between(rng, 1, caps.classical_max),
                                         dim_between(rng, 1, caps.classical_max)};
  return random_markov_chain(sizes, draw_seed(rng));
}

// Entropies of a Joint3 assembled from marginals and merged axes.
struct TripartiteEntropies {
  double abc, ab, bc, b;
};

TripartiteEntropies tripartite_entropies(const Joint3& j) {
  return {joint_entropy(j, LogBase::bits), joint_entropy(marginal_pair(j, Axis::C), LogBase::bits),
          joint_entropy(marginal_pair(j, Axis::A), LogBase::bits), h_bits(marginal(j, Axis::B))};
}

double relative_nats(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return quantum_relative_entropy(rho, sigma).as_double();
}

std::vector<Check> build_registry() {
  std::vector<Check> checks;
  const auto classical = [&](std::string name, std::string eq, double tol, auto generate,
                             auto evaluate) {
    checks.push_back({std::move(name), std::move(eq), Domain::classical, tol, kClassicalTrials,
                      std::move(generate), std::move(evaluate)});
  };
  const auto quantum = [&](std::string name, std::string eq, double tol, auto generate,
                           auto evaluate) {
    checks.push_back({std::move(name), std::move(eq), Domain::quantum, tol, kQuantumTrials,
                      std::move(generate), std::move(evaluate)});
  };

  // ---- classical -----------------------------------------------------------

  classical(
      "eq2_grouping", "eq2", kClassicalTol,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const std::size_t n = dim_between(rng, 3, std::max<std::size_t>(3, 2 * caps.classical_max));
        return Json{{"p", to_json(Distribution(sparse_cells(n, rng)))}};
      },
      [](const Json& in, double tol) {
        const Distribution p = distribution_from_json(in.at("p"));
        const double s = p[0] + p[1];
        std::vector<double> grouped{s};
        grouped.insert(grouped.end(), p.probs().begin() + 2, p.probs().end());
        double rhs = h_bits(Distribution(grouped));
        if (s > 0.0) rhs += s * h_bits(Distribution({p[0] / s, p[1] / s}));
        return std::vector{Condition::eq("H(p) = H(p1+p2, ...) + (p1+p2) H(split)", h_bits(p), rhs,
                                         tol)};
      });

  classical(
      "item1_symmetry", "item1", kClassicalTol,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        return Json{{"joint", to_json(random_classical_joint(rng, caps))}};
      },
      [](const Json& in, double tol) {
        const Joint2 j = joint2_from_json(in.at("joint"));
        const Joint2 t = j.transposed();
        return std::vector{
            Condition::eq("H(A,B) = H(B,A)", joint_entropy(j), joint_entropy(t), tol),
            Condition::eq("H(A:B) = H(B:A)", mutual_information(j), mutual_information(t), tol)};
      });

  classical(
      "item2_nonnegativity", "item2", kClassicalTol,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const Joint2 j = random_classical_joint(rng, caps);
        const Joint2 f = functional_joint(rng, dim_between(rng, 1, caps.classical_max),
                                          dim_between(rng, 1, caps.classical_max));
        return Json{{"joint", to_json(j)}, {"functional", to_json(f)}};
      },
      [](const Json& in, double tol) {
        const Joint2 j = joint2_from_json(in.at("joint"));
        const Joint2 f = joint2_from_json(in.at("functional"));
        return std::vector{
            Condition::le("H(B|A) >= 0", -conditional_entropy(j, Axis::A), 0.0, tol),
            Condition::le("H(A:B) <= H(B)", mutual_information(j), h_bits(marginal(j, Axis::B)),
                          tol),
            Condition::eq("B = f(A) => H(A:B) = H(B)", mutual_information(f),
                          h_bits(marginal(f, Axis::B)), tol)};
      });

  classical(
      "item3_monotonicity", "item3", kClassicalTol,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const Joint2 j = random_classical_joint(rng, caps);
        const Joint2 f = functional_joint(rng, dim_between(rng, 1, caps.classical_max),
                                          dim_between(rng, 1, caps.classical_max));
        return Json{{"joint", to_json(j)}, {"functional", to_json(f)}};
      },
      [](const Json& in, double tol) {
        const Joint2 j = joint2_from_json(in.at("joint"));
        const Joint2 f = joint2_from_json(in.at("functional"));
        return std::vector{
            Condition::le("H(A) <= H(A,B)", h_bits(marginal(j, Axis::A)), joint_entropy(j), tol),
            Condition::eq("B = f(A) => H(A) = H(A,B)", h_bits(marginal(f, Axis::A)),
                          joint_entropy(f), tol)};
      });

  classical(
      "item4_subadditivity", "item4", kClassicalTol,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const Joint2 j = random_classical_joint(rng, caps);
        const Distribution u(sparse_cells(dim_between(rng, 1, caps.classical_max), rng));
        const Distribution v(sparse_cells(dim_between(rng, 1, caps.classical_max), rng));
        return Json{{"joint", to_json(j)}, {"product", to_json(Joint2::product(u, v))}};
      },
      [](const Json& in, double tol) {
        const Joint2 j = joint2_from_json(in.at("joint"));
        const Joint2 p = joint2_from_json(in.at("product"));
        return std::vector{
            Condition::le("H(A,B) <= H(A) + H(B)", joint_entropy(j),
                          h_bits(marginal(j, Axis::A)) + h_bits(marginal(j, Axis::B)), tol),
            Condition::eq("independent => H(A,B) = H(A) + H(B)", joint_entropy(p),
                          h_bits(marginal(p, Axis::A)) + h_bits(marginal(p, Axis::B)), tol)};
      });

  classical(
      "item5_conditioning", "item5", kClassicalTol,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        return Json{{"joint", to_json(random_classical_joint(rng, caps))}};
      },
      [](const Json& in, double tol) {
        const Joint2 j = joint2_from_json(in.at("joint"));
        return std::vector{Condition::le("H(B|A) <= H(B)", conditional_entropy(j, Axis::A),
                                         h_bits(marginal(j, Axis::B)), tol),
                           Condition::le("H(A:B) >= 0", -mutual_information(j), 0.0, tol)};
      });

  classical(
      "item6_strong_subadditivity", "item6", kClassicalTol,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        return Json{{"joint3", to_json(random_classical_joint3(rng, caps))}};
      },
      [](const Json& in, double tol) {
        const auto h = tripartite_entropies(joint3_from_json(in.at("joint3")));
        return std::vector{
            Condition::le("H(A,B,C) + H(B) <= H(A,B) + H(B,C)", h.abc + h.b, h.ab + h.bc, tol)};
      });

  classical(
      "eq11_conditioning_reduces_entropy", "eq11", kClassicalTol,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        return Json{{"joint3", to_json(random_classical_joint3(rng, caps))}};
      },
      [](const Json& in, double tol) {
        const Joint3 j = joint3_from_json(in.at("joint3"));
        // (A, BC): condition on the fused axis.
        const double h_a_bc = conditional_entropy(merge_axes(j, {Axis::B, Axis::C}), Axis::B);
        const double h_a_b = conditional_entropy(marginal_pair(j, Axis::C), Axis::B);
        return std::vector{Condition::le("H(A|B,C) <= H(A|B)", h_a_bc, h_a_b, tol)};
      });

  classical(
      "eq12_chain_rule", "eq12", kClassicalTol,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        return Json{{"joint3", to_json(random_classical_joint3(rng, caps))}};
      },
      [](const Json& in, double tol) {
        // A1 = A, A2 = C, conditioning variable B.
        const Joint3 j = joint3_from_json(in.at("joint3"));
        const Joint2 ac_b = merge_axes(j, {Axis::A, Axis::C});  // axes (AC, B)
        const Joint2 ab_c = merge_axes(j, {Axis::A, Axis::B});  // axes (AB, C)
        const double lhs = conditional_entropy(ac_b, Axis::B);
        const double first = conditional_entropy(marginal_pair(j, Axis::C), Axis::B);
        const double second = conditional_entropy(ab_c, Axis::A);
        return std::vector{Condition::eq("H(A,C|B) = H(A|B) + H(C|B,A)", lhs, first + second, tol)};
      });

  classical(
      "eq13_data_processing", "eq13", kClassicalTol,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        return Json{{"chain", to_json(random_chain(rng, caps))}};
      },
      [](const Json& in, double tol) {
        const Joint3 j = markov_joint(markov_chain_from_json(in.at("chain")));
        const double i_ab = mutual_information(marginal_pair(j, Axis::C));
        const double i_ac = mutual_information(marginal_pair(j, Axis::B));
        return std::vector{Condition::le("H(A:B) <= H(A)", i_ab, h_bits(marginal(j, Axis::A)), tol),
                           Condition::le("H(A:C) <= H(A:B)", i_ac, i_ab, tol)};
      });

  classical(
      "eq14_data_pipelining", "eq14", kClassicalTol,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        return Json{{"chain", to_json(random_chain(rng, caps))}};
      },
      [](const Json& in, double tol) {
        const Joint3 j = markov_joint(markov_chain_from_json(in.at("chain")));
        const double i_cb = mutual_information(marginal_pair(j, Axis::A));
        const double i_ca = mutual_information(marginal_pair(j, Axis::B));
        return std::vector{Condition::le("H(C:A) <= H(C:B)", i_ca, i_cb, tol)};
      });

  classical(
      "eq6_eq7_summand_forms", "eq6-7", 1e-10,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const std::size_t r = dim_between(rng, 1, caps.classical_max);
        const std::size_t c = dim_between(rng, 1, caps.classical_max);
        return Json{{"joint", to_json(Joint2(r, c, exponential_cells(r * c, rng)))}};
      },
      [](const Json& in, double tol) {
        const Joint2 j = joint2_from_json(in.at("joint"));
        const Distribution pa = marginal(j, Axis::A);
        const Distribution pb = marginal(j, Axis::B);
        double cond = 0.0;
        double mutual = 0.0;
        for (std::size_t a = 0; a < j.rows(); ++a)
          for (std::size_t b = 0; b < j.cols(); ++b) {
            const double p = j(a, b);
            cond -= p * std::log2(p / pb[b]);
            mutual -= p * std::log2(pa[a] * pb[b] / p);
          }
        return std::vector{
            Condition::eq("H(A,B) - H(B) = -sum p log p(a|b)", conditional_entropy(j, Axis::B),
                          cond, tol),
            Condition::eq("H(A)+H(B)-H(A,B) = -sum p log p(a:b)", mutual_information(j), mutual,
                          tol)};
      });

  classical(
      "eq8_eq9_mutual_forms", "eq8-9", kClassicalTol,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        return Json{{"joint", to_json(random_classical_joint(rng, caps))}};
      },
      [](const Json& in, double tol) {
        const Joint2 j = joint2_from_json(in.at("joint"));
        const double i = mutual_information(j);
        return std::vector{
            Condition::eq("H(A:B) = H(A) - H(A|B)", i,
                          h_bits(marginal(j, Axis::A)) - conditional_entropy(j, Axis::B), tol),
            Condition::eq("H(A:B) = H(B) - H(B|A)", i,
                          h_bits(marginal(j, Axis::B)) - conditional_entropy(j, Axis::A), tol)};
      });

  // ---- quantum -------------------------------------------------------------

  quantum(
      "eq17_unitary_invariance", "eq17", 1e-8,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const std::size_t d = dim_between(rng, caps.quantum_min, caps.quantum_max);
        return Json{{"rho", to_json(any_state(rng, d))},
                    {"u", to_json(random_unitary(d, draw_seed(rng)))}};
      },
      [](const Json& in, double tol) {
        const DensityMatrix rho = density_from_json(in.at("rho"));
        const DensityMatrix rotated = conjugate_by_unitary(rho, matrix_from_json(in.at("u")));
        return std::vector{
            Condition::eq("S(rho) = S(U rho U^dagger)", von_neumann(rho), von_neumann(rotated), tol)};
      });

  quantum(
      "pure_bipartite_symmetry", "pure_symmetry", 1e-8,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const BipartiteDims d{dim_between(rng, caps.quantum_min, caps.quantum_max),
                              dim_between(rng, caps.quantum_min, caps.quantum_max)};
        return Json{{"rho_ab", to_json(random_density(d.total(), 1, draw_seed(rng)))},
                    {"dims", dims_json(d)}};
      },
      [](const Json& in, double tol) {
        const auto m = quantum_joint_marginals(density_from_json(in.at("rho_ab")),
                                               dims_from(in.at("dims")));
        return std::vector{Condition::eq("pure AB => S(A) = S(B)", m.s_a, m.s_b, tol)};
      });

  const auto ensemble_generator = [](std::uint64_t seed, const DimensionCaps& caps) {
    Rng rng(seed);
    const std::size_t d = dim_between(rng, caps.quantum_min, caps.quantum_max);
    const std::size_t n = dim_between(rng, 1, 4);
    return Json{{"ensemble", to_json(random_ensemble(n, d, d, draw_seed(rng)))}};
  };

  quantum("eq18_mixing_bound", "eq18", 1e-9, ensemble_generator, [](const Json& in, double tol) {
    const auto t = mixing_bound_terms(ensemble_from_json(in.at("ensemble")));
    return std::vector{
        Condition::le("S(sum p rho) <= H(p) + sum p S(rho)", t.s_avg, t.h_p + t.avg_s, tol)};
  });

  quantum("eq19_orthogonal_embedding", "eq19", 1e-8, ensemble_generator,
          [](const Json& in, double tol) {
            const Ensemble e = ensemble_from_json(in.at("ensemble"));
            const auto t = mixing_bound_terms(e);
            return std::vector{Condition::eq("S(sum p |i><i| (x) rho) = H(p) + sum p S(rho)",
                                             von_neumann(orthogonal_embedding(e)), t.h_p + t.avg_s,
                                             tol)};
          });

  quantum("eq20_concavity", "eq20", 1e-9, ensemble_generator, [](const Json& in, double tol) {
    const auto t = mixing_bound_terms(ensemble_from_json(in.at("ensemble")));
    return std::vector{Condition::le("sum p S(rho) <= S(sum p rho)", t.avg_s, t.s_avg, tol)};
  });

  const auto measured_generator = [](std::uint64_t seed, const DimensionCaps& caps) {
    Rng rng(seed);
    const std::size_t d = dim_between(rng, caps.quantum_min, caps.quantum_max);
    const std::size_t n = dim_between(rng, 1, 4);
    const std::size_t outcomes = dim_between(rng, 1, 2 * d);
    return Json{{"ensemble", to_json(random_ensemble(n, d, d, draw_seed(rng)))},
                {"povm", to_json(random_povm(d, outcomes, draw_seed(rng)))}};
  };

  quantum("eq22_holevo_bound", "eq22", 1e-9, measured_generator, [](const Json& in, double tol) {
    const Ensemble e = ensemble_from_json(in.at("ensemble"));
    const Povm m = povm_from_json(in.at("povm"));
    const double measured = measured_mutual_info(e, m);
    const double chi = holevo_chi(e);
    return std::vector{
        Condition::le("H(A:B) <= chi", measured, chi, tol),
        Condition::le("chi <= H(p)", chi, shannon_entropy(e.probs(), LogBase::nats), tol),
        Condition::le("chi >= 0", -chi, 0.0, tol)};
  });

  quantum("eq23_entropy_ceiling", "eq23", 1e-9, measured_generator, [](const Json& in, double tol) {
    const Ensemble e = ensemble_from_json(in.at("ensemble"));
    const Povm m = povm_from_json(in.at("povm"));
    const double s = von_neumann(e.average());
    return std::vector{
        Condition::le("H(A:B) <= S(rho)", measured_mutual_info(e, m), s, tol),
        Condition::le("S(rho) <= ln n", s, std::log(static_cast<double>(e.dim())), tol)};
  });

  const auto bipartite_generator = [](std::uint64_t seed, const DimensionCaps& caps) {
    Rng rng(seed);
    const BipartiteDims d{dim_between(rng, caps.quantum_min, caps.quantum_max),
                          dim_between(rng, caps.quantum_min, caps.quantum_max)};
    return Json{{"rho_ab", to_json(any_state(rng, d.total()))}, {"dims", dims_json(d)}};
  };

  quantum("eq25_27_mutual_forms", "eq25-27", 1e-10, bipartite_generator,
          [](const Json& in, double tol) {
            const auto m = quantum_joint_marginals(density_from_json(in.at("rho_ab")),
                                                   dims_from(in.at("dims")));
            const double mutual = m.s_a + m.s_b - m.s_ab;
            const double a_given_b = m.s_ab - m.s_b;
            const double b_given_a = m.s_ab - m.s_a;
            return std::vector{Condition::eq("S(A:B) = S(A) - S(A|B)", mutual, m.s_a - a_given_b, tol),
                               Condition::eq("S(A:B) = S(B) - S(B|A)", mutual, m.s_b - b_given_a, tol)};
          });

  quantum(
      "eq28_additivity", "eq28", 1e-8,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const std::size_t da = dim_between(rng, caps.quantum_min, caps.quantum_max);
        const std::size_t db = dim_between(rng, caps.quantum_min, caps.quantum_max);
        return Json{{"rho_a", to_json(any_state(rng, da))}, {"rho_b", to_json(any_state(rng, db))}};
      },
      [](const Json& in, double tol) {
        const DensityMatrix a = density_from_json(in.at("rho_a"));
        const DensityMatrix b = density_from_json(in.at("rho_b"));
        const DensityMatrix ab = tensor(a, b);
        const BipartiteDims d{a.dim(), b.dim()};
        return std::vector{
            Condition::eq("S(A (x) B) = S(A) + S(B)", von_neumann(ab), von_neumann(a) + von_neumann(b),
                          tol),
            Condition::le("product saturates S(A,B) <= S(A) + S(B)", -s_mutual(ab, d), 0.0, tol),
            Condition::le("product saturates S(A,B) >= S(A) + S(B)", s_mutual(ab, d), 0.0, tol)};
      });

  quantum(
      "eq29_strong_subadditivity", "eq29", 1e-8,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const TripartiteDims d{caps.tripartite, caps.tripartite, caps.tripartite};
        return Json{{"rho_abc", to_json(any_state(rng, d.total()))},
                    {"dims", Json::array({d.dim_a, d.dim_b, d.dim_c})}};
      },
      [](const Json& in, double tol) {
        const DensityMatrix rho = density_from_json(in.at("rho_abc"));
        const Json& dj = in.at("dims");
        const TripartiteDims d{dj.at(0).get<std::size_t>(), dj.at(1).get<std::size_t>(),
                               dj.at(2).get<std::size_t>()};
        const DensityMatrix ab = partial_trace(rho, d.ab_c(), Subsystem::A);
        const DensityMatrix bc = partial_trace(rho, d.a_bc(), Subsystem::B);
        const DensityMatrix b = partial_trace(ab, {d.dim_a, d.dim_b}, Subsystem::B);
        return std::vector{Condition::le("S(A,B,C) + S(B) <= S(A,B) + S(B,C)",
                                         von_neumann(rho) + von_neumann(b),
                                         von_neumann(ab) + von_neumann(bc), tol)};
      });

  quantum("eq30_subadditivity", "eq30", 1e-9, bipartite_generator, [](const Json& in, double tol) {
    const auto m =
        quantum_joint_marginals(density_from_json(in.at("rho_ab")), dims_from(in.at("dims")));
    return std::vector{Condition::le("S(A,B) <= S(A) + S(B)", m.s_ab, m.s_a + m.s_b, tol)};
  });

  quantum("eq31_triangle_inequality", "eq31", 1e-9, bipartite_generator,
          [](const Json& in, double tol) {
            const auto m = quantum_joint_marginals(density_from_json(in.at("rho_ab")),
                                                   dims_from(in.at("dims")));
            return std::vector{
                Condition::le("|S(A) - S(B)| <= S(A,B)", std::abs(m.s_a - m.s_b), m.s_ab, tol)};
          });

  quantum(
      "eq33_joint_convexity", "eq33", 1e-8,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const std::size_t d = dim_between(rng, caps.quantum_min, caps.quantum_max);
        return Json{{"p", to_json(random_distribution(2, draw_seed(rng)))},
                    {"rho1", to_json(any_state(rng, d))},
                    {"rho2", to_json(any_state(rng, d))},
                    {"sigma1", to_json(full_rank_state(rng, d))},
                    {"sigma2", to_json(full_rank_state(rng, d))}};
      },
      [](const Json& in, double tol) {
        const Distribution p = distribution_from_json(in.at("p"));
        const DensityMatrix r1 = density_from_json(in.at("rho1"));
        const DensityMatrix r2 = density_from_json(in.at("rho2"));
        const DensityMatrix s1 = density_from_json(in.at("sigma1"));
        const DensityMatrix s2 = density_from_json(in.at("sigma2"));
        const DensityMatrix rho(r1.matrix() * Complex(p[0]) + r2.matrix() * Complex(p[1]));
        const DensityMatrix sigma(s1.matrix() * Complex(p[0]) + s2.matrix() * Complex(p[1]));
        return std::vector{Condition::le("S(rho||sigma) <= p1 S(rho1||sigma1) + p2 S(rho2||sigma2)",
                                         relative_nats(rho, sigma),
                                         p[0] * relative_nats(r1, s1) + p[1] * relative_nats(r2, s2),
                                         tol)};
      });

  quantum(
      "eq34_argument_convexity", "eq34", 1e-8,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const std::size_t d = dim_between(rng, caps.quantum_min, caps.quantum_max);
        return Json{{"p", to_json(random_distribution(2, draw_seed(rng)))},
                    {"rho1", to_json(any_state(rng, d))},
                    {"rho2", to_json(any_state(rng, d))},
                    {"sigma", to_json(full_rank_state(rng, d))}};
      },
      [](const Json& in, double tol) {
        const Distribution p = distribution_from_json(in.at("p"));
        const DensityMatrix r1 = density_from_json(in.at("rho1"));
        const DensityMatrix r2 = density_from_json(in.at("rho2"));
        const DensityMatrix sigma = density_from_json(in.at("sigma"));
        const DensityMatrix rho(r1.matrix() * Complex(p[0]) + r2.matrix() * Complex(p[1]));
        return std::vector{Condition::le("S(rho||sigma) <= p1 S(rho1||sigma) + p2 S(rho2||sigma)",
                                         relative_nats(rho, sigma),
                                         p[0] * relative_nats(r1, sigma) +
                                             p[1] * relative_nats(r2, sigma),
                                         tol)};
      });

  quantum(
      "klein_inequality", "klein", 1e-9,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const std::size_t d = dim_between(rng, caps.quantum_min, caps.quantum_max);
        return Json{{"rho", to_json(any_state(rng, d))}, {"sigma", to_json(any_state(rng, d))}};
      },
      [](const Json& in, double tol) {
        const DensityMatrix rho = density_from_json(in.at("rho"));
        const DensityMatrix sigma = density_from_json(in.at("sigma"));
        return std::vector{Condition::le("S(rho||sigma) >= 0", -relative_nats(rho, sigma), 0.0, tol),
                           Condition::le("S(rho||rho) = 0", std::abs(relative_nats(rho, rho)), 0.0,
                                         tol)};
      });

  quantum(
      "eq21_subentropy_bound", "eq21", 1e-9,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const std::size_t d = dim_between(rng, caps.quantum_min, caps.quantum_max);
        if (rng.uniform() < 0.25) {
          // Degenerate spectrum: a few distinct levels, each repeated.
          std::vector<double> levels(d);
          const std::size_t distinct = rng.integer(1, d);
          std::vector<double> values = exponential_cells(distinct, rng);
          for (std::size_t i = 0; i < d; ++i) levels[i] = values[i % distinct];
          double total = 0.0;
          for (double l : levels) total += l;
          for (double& l : levels) l /= total;
          const DensityMatrix diag = DensityMatrix::diagonal(levels);
          return Json{
              {"rho", to_json(conjugate_by_unitary(diag, random_unitary(d, draw_seed(rng))))}};
        }
        return Json{{"rho", to_json(any_state(rng, d))}};
      },
      [](const Json& in, double tol) {
        const DensityMatrix rho = density_from_json(in.at("rho"));
        const double q = subentropy(rho);
        return std::vector{Condition::le("Q(rho) <= S(rho)", q, von_neumann(rho), tol),
                           Condition::le("Q(rho) >= 0", -q, 0.0, tol)};
      });

  quantum(
      "shannon_reduction", "shannon_reduction", 1e-10,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const std::size_t d = dim_between(rng, 1, 2 * caps.quantum_max);
        return Json{{"rho", to_json(DensityMatrix::diagonal(sparse_cells(d, rng)))}};
      },
      [](const Json& in, double tol) {
        const DensityMatrix rho = density_from_json(in.at("rho"));
        std::vector<double> diag;
        for (std::size_t i = 0; i < rho.dim(); ++i) diag.push_back(rho.matrix()(i, i).real());
        return std::vector{Condition::eq("S(diag p) = H(p)", von_neumann(rho),
                                         shannon_entropy(Distribution(diag), LogBase::nats), tol)};
      });

  quantum(
      "eq24_conditional_entropy_witness", "eq24", 1e-8,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const BipartiteDims d{dim_between(rng, caps.quantum_min, caps.quantum_max),
                              dim_between(rng, caps.quantum_min, caps.quantum_max)};
        return Json{{"pure_ab", to_json(random_density(d.total(), 1, draw_seed(rng)))},
                    {"rho_a", to_json(any_state(rng, d.dim_a))},
                    {"rho_b", to_json(any_state(rng, d.dim_b))},
                    {"dims", dims_json(d)}};
      },
      [](const Json& in, double tol) {
        const BipartiteDims d = dims_from(in.at("dims"));
        const DensityMatrix pure = density_from_json(in.at("pure_ab"));
        const DensityMatrix a = density_from_json(in.at("rho_a"));
        const DensityMatrix product = tensor(a, density_from_json(in.at("rho_b")));
        const auto m = quantum_joint_marginals(pure, d);
        const double cond_pure = s_conditional(pure, d);
        const double cond_product = s_conditional(product, d);
        std::vector<Condition> out{
            Condition::eq("pure: S(A|B) = -S(A)", cond_pure, -m.s_a, tol),
            Condition::eq("product: S(A|B) = S(A)", cond_product, von_neumann(a), tol),
            Condition::le("product: S(A|B) >= 0", -cond_product, 0.0, tol)};
        if (m.s_a > 1e-6) out.push_back(Condition::lt("entangled: S(A|B) < 0", cond_pure, 0.0));
        return out;
      });

  return checks;
}

std::vector<Check> build_mutants() {
  return {Check{
      "mutant_reversed_subadditivity", "mutant", Domain::classical, kClassicalTol, kClassicalTrials,
      [](std::uint64_t seed, const DimensionCaps& caps) {
        Rng rng(seed);
        const std::size_t r = dim_between(rng, 2, caps.classical_max);
        const std::size_t c = dim_between(rng, 2, caps.classical_max);
        return Json{{"joint", to_json(Joint2(r, c, exponential_cells(r * c, rng)))}};
      },
      [](const Json& in, double tol) {
        const Joint2 j = joint2_from_json(in.at("joint"));
        return std::vector{Condition::le("H(A) + H(B) <= H(A,B)",
                                         h_bits(marginal(j, Axis::A)) + h_bits(marginal(j, Axis::B)),
                                         joint_entropy(j), tol)};
      }}};
}

struct TrialResult {
  bool failed = false;
  double violation = 0.0;
  double seconds = 0.0;
  Json inputs;
  std::string error;
};

TrialResult run_trial(const Check& check, std::uint64_t seed, const DimensionCaps& caps,
                      double tol) {
  TrialResult r;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.inputs = check.generate(seed, caps);
    for (const auto& c : check.evaluate(r.inputs, tol)) {
      r.violation = std::max(r.violation, c.violation());
      r.failed = r.failed || c.failed();
    }
  } catch (const std::exception& e) {
    r.failed = true;
    r.violation = std::numeric_limits<double>::infinity();
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!r.failed) r.inputs = Json();  // only counterexamples keep inputs
  return r;
}

}  // namespace

double Condition::violation() const {
  switch (kind) {
    case Kind::less_equal:
      return std::max(0.0, lhs - rhs - tolerance);
    case Kind::equal:
      return std::abs(lhs - rhs);
    case Kind::less:
      return std::max(0.0, lhs - rhs);
  }
  return 0.0;
}

bool Condition::failed() const {
  if (std::isnan(lhs) || std::isnan(rhs)) return true;
  switch (kind) {
    case Kind::less_equal:
      return lhs - rhs > tolerance;
    case Kind::equal:
      return !(std::abs(lhs - rhs) <= tolerance);
    case Kind::less:
      return !(lhs < rhs);
  }
  return true;
}

Distribution random_distribution(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvariantError("positive_count", 0.0, "random_distribution: n must be >= 1");
  Rng rng(seed);
  return Distribution(exponential_cells(n, rng));
}

Joint2 random_joint2(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  return Joint2(rows, cols, exponential_cells(rows * cols, rng));
}

Joint3 random_joint3(std::array<std::size_t, 3> shape, std::uint64_t seed) {
  Rng rng(seed);
  return Joint3(shape, exponential_cells(shape[0] * shape[1] * shape[2], rng));
}

std::variant<Joint2, Joint3> random_joint(std::span<const std::size_t> shape, std::uint64_t seed) {
  if (shape.size() == 2) return random_joint2(shape[0], shape[1], seed);
  if (shape.size() == 3) return random_joint3({shape[0], shape[1], shape[2]}, seed);
  throw FormatError("random_joint: only 2 or 3 axes are supported");
}

MarkovChain3 random_markov_chain(std::array<std::size_t, 3> sizes, std::uint64_t seed) {
  Rng rng(seed);
  Distribution source(exponential_cells(sizes[0], rng));
  std::vector<Distribution> ab;
  for (std::size_t i = 0; i < sizes[0]; ++i) ab.emplace_back(exponential_cells(sizes[1], rng));
  std::vector<Distribution> bc;
  for (std::size_t i = 0; i < sizes[1]; ++i) bc.emplace_back(exponential_cells(sizes[2], rng));
  return MarkovChain3(std::move(source), StochasticMatrix(std::move(ab)),
                      StochasticMatrix(std::move(bc)));
}

Ensemble random_ensemble(std::size_t n_states, std::size_t dim, std::size_t max_rank,
                         std::uint64_t seed) {
  if (n_states == 0 || dim == 0 || max_rank == 0 || max_rank > dim) {
    throw InvariantError("rank_range", 0.0, "random_ensemble: need 1 <= max_rank <= dim");
  }
  Distribution probs = random_distribution(n_states, mix_seed(seed, 0));
  Rng rng(mix_seed(seed, 1));
  std::vector<DensityMatrix> states;
  states.reserve(n_states);
  for (std::size_t i = 0; i < n_states; ++i) {
    const std::size_t rank = rng.integer(1, max_rank);
    states.push_back(random_density(dim, rank, mix_seed(seed, i + 2)));
  }
  return Ensemble(std::move(probs), std::move(states));
}

const std::vector<Check>& registry() {
  static const std::vector<Check> checks = build_registry();
  return checks;
}

const std::vector<Check>& mutant_checks() {
  static const std::vector<Check> checks = build_mutants();
  return checks;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::string_view check_name,
                         std::size_t trial) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : check_name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix_seed(mix_seed(master_seed, h), trial);
}

std::vector<const Check*> select_checks(std::string_view filter, std::span<const Check> checks) {
  std::vector<const Check*> out;
  for (const auto& c : checks) {
    const bool match = filter == "all" || (filter == "classical" && c.domain == Domain::classical) ||
                       (filter == "quantum" && c.domain == Domain::quantum) || filter == c.name ||
                       filter == c.eq;
    if (match) out.push_back(&c);
  }
  if (out.empty()) throw FormatError("unknown suite or check name: " + std::string(filter));
  return out;
}

CheckReport run_suite(const TrialConfig& config, std::string_view filter,
                      std::span<const Check> checks) {
  if (config.trials_per_check && *config.trials_per_check == 0) {
    throw InvariantError("positive_count", 0.0, "run_suite: trials_per_check must be >= 1");
  }
  if (config.threads == 0) throw InvariantError("positive_count", 0.0, "run_suite: threads >= 1");
  const auto selected = select_checks(filter, checks);

  struct Task {
    std::size_t check;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  std::vector<std::vector<TrialResult>> results(selected.size());
  std::vector<double> tolerances(selected.size());
  for (std::size_t c = 0; c < selected.size(); ++c) {
    const Check& check = *selected[c];
    const std::size_t trials = config.trials_per_check.value_or(check.default_trials);
    results[c].resize(trials);
    const auto override_it = config.tolerance_overrides.find(check.name);
    tolerances[c] =
        override_it == config.tolerance_overrides.end() ? check.tolerance : override_it->second;
    for (std::size_t t = 0; t < trials; ++t) tasks.push_back({c, t});
  }

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
      const auto [c, t] = tasks[i];
      const Check& check = *selected[c];
      results[c][t] = run_trial(check, trial_seed(config.master_seed, check.name, t), config.dims,
                                tolerances[c]);
    }
  };
  const std::size_t n_threads = std::min(config.threads, std::max<std::size_t>(1, tasks.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }

  CheckReport report;
  report.seed = config.master_seed;
  for (std::size_t c = 0; c < selected.size(); ++c) {
    CheckRecord rec{selected[c]->name, selected[c]->eq, results[c].size(), 0, 0.0, 0.0};
    for (std::size_t t = 0; t < results[c].size(); ++t) {
      auto& r = results[c][t];
      rec.elapsed_seconds += r.seconds;
      rec.worst_violation = std::max(rec.worst_violation, r.violation);
      if (!r.failed) continue;
      ++rec.failures;
      report.counterexamples.push_back({rec.name, t, std::move(r.inputs), r.violation, r.error});
    }
    report.pass = report.pass && rec.failures == 0;
    report.checks.push_back(std::move(rec));
  }
  return report;
}

double replay(const CounterexampleRecord& record, std::span<const Check> checks, double tolerance) {
  for (const auto& c : checks) {
    if (c.name != record.check) continue;
    double worst = 0.0;
    for (const auto& cond : c.evaluate(record.inputs, tolerance)) {
      worst = std::max(worst, cond.violation());
    }
    return worst;
  }
  throw FormatError("replay: unknown check " + record.check);
}

Json report_to_json(const CheckReport& report, bool include_timing) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j{{"name", c.name},
           {"eq", c.eq},
           {"trials", c.trials},
           {"failures", c.failures},
           {"worst_violation", c.worst_violation}};
    if (include_timing) j["elapsed_seconds"] = c.elapsed_seconds;
    checks.push_back(std::move(j));
  }
  Json counterexamples = Json::array();
  for (const auto& r : report.counterexamples) {
    Json j{{"check", r.check}, {"trial", r.trial}, {"violation", r.violation}, {"inputs", r.inputs}};
    if (!r.error.empty()) j["error"] = r.error;
    counterexamples.push_back(std::move(j));
  }
  return Json{{"seed", report.seed},
              {"checks", std::move(checks)},
              {"pass", report.pass},
              {"counterexamples", std::move(counterexamples)}};
}

}  // namespace entrolab
