// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "cli_golden.hpp"
#include "entrolab/propcheck.hpp"

using namespace entrolab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "\n    failed: " << what;
    }
  }
};

DensityMatrix bell() {
  ComplexMatrix m(4, 4);
  for (std::size_t i : {0u, 3u})
    for (std::size_t j : {0u, 3u}) m(i, j) = 0.5;
  return DensityMatrix(m);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

// Runs the selected checks and requires the listed labels to have run with
// zero failures.
void suite_clean(Outcome& o, std::string_view filter, const std::set<std::string>& labels,
                 std::size_t expected_trials) {
  TrialConfig config;
  config.master_seed = 42;
  config.threads = std::max(1u, std::thread::hardware_concurrency());
  const CheckReport r = run_suite(config, filter);
  std::set<std::string> seen;
  double worst = 0.0;
  for (const auto& c : r.checks) {
    seen.insert(c.eq);
    worst = std::max(worst, c.worst_violation);
    o.require(c.trials == expected_trials, c.name + " ran " + std::to_string(c.trials) + " trials");
    o.require(c.failures == 0, c.name + " had " + std::to_string(c.failures) + " failures");
  }
  for (const auto& l : labels) o.require(seen.count(l) == 1, "no check for " + l);
  o.detail << " (" << r.checks.size() << " checks, worst violation " << fmt(worst) << ")";
}

using Decimal = boost::multiprecision::cpp_dec_float_50;

// The defining subentropy sum at 50 decimal digits for a distinct spectrum.
Decimal subentropy_direct(const std::vector<Decimal>& l) {
  Decimal q = 0;
  for (std::size_t j = 0; j < l.size(); ++j) {
    Decimal denom = 1;
    for (std::size_t k = 0; k < l.size(); ++k)
      if (k != j) denom *= l[j] - l[k];
    q -= pow(l[j], static_cast<int>(l.size())) * log(l[j]) / denom;
  }
  return q;
}

Outcome pinned_values() {
  Outcome o;
  double worst = 0;
  for (std::size_t d = 2; d <= 16; ++d) {
    worst = std::max(worst, std::abs(von_neumann(DensityMatrix::maximally_mixed(d)) -
                                     std::log(static_cast<double>(d))));
  }
  o.require(worst <= 1e-10, "S(I/d) = ln d, worst " + fmt(worst));
  double pure_max = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t d = 2 + s % 15;
    pure_max = std::max(pure_max, von_neumann(DensityMatrix::pure(
                                      std::vector<Complex>(random_ket(d, mix_seed(1, s))))));
  }
  o.require(pure_max <= 1e-9, "S(pure) <= 1e-9, worst " + fmt(pure_max));
  const double q_err =
      std::abs(subentropy(DensityMatrix::maximally_mixed(2)) - (std::numbers::ln2 - 0.5));
  o.require(q_err <= 1e-5, "Q(I/2) = ln 2 - 1/2, error " + fmt(q_err));
  const double bell_err = std::abs(s_conditional(bell(), {2, 2}) + std::numbers::ln2);
  o.require(bell_err <= 1e-8, "Bell S(A|B) = -ln 2, error " + fmt(bell_err));
  return o;
}

Outcome classical_suite() {
  Outcome o;
  suite_clean(o, "classical",
              {"eq2", "item1", "item2", "item3", "item4", "item5", "item6", "eq11", "eq12", "eq13",
               "eq14"},
              1000);
  return o;
}

Outcome quantum_suite() {
  Outcome o;
  suite_clean(o, "quantum",
              {"eq17", "eq18", "eq20", "eq22", "eq23", "eq25-27", "eq28", "eq29", "eq30", "eq31",
               "eq33", "eq34", "klein", "eq21", "shannon_reduction"},
              300);
  return o;
}

Outcome equality_cases() {
  Outcome o;
  double worst19 = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t d = 2 + s % 3;
    const Ensemble e = random_ensemble(1 + s % 4, d, d, mix_seed(19, s));
    const auto t = mixing_bound_terms(e);
    worst19 = std::max(worst19, std::abs(von_neumann(orthogonal_embedding(e)) - (t.h_p + t.avg_s)));
  }
  o.require(worst19 <= 1e-8, "orthogonal embedding attains the mixing bound, worst " +
                                 fmt(worst19));
  double worst_prod = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t da = 2 + s % 3;
    const std::size_t db = 2 + (s / 3) % 3;
    const DensityMatrix a = random_density(da, 1 + s % da, mix_seed(28, 2 * s));
    const DensityMatrix b = random_density(db, 1 + s % db, mix_seed(28, 2 * s + 1));
    const DensityMatrix ab = tensor(a, b);
    const auto m = quantum_joint_marginals(ab, {da, db});
    worst_prod = std::max(worst_prod, std::abs(von_neumann(ab) - von_neumann(a) - von_neumann(b)));
    worst_prod = std::max(worst_prod, std::abs(m.s_ab - m.s_a - m.s_b));
  }
  o.require(worst_prod <= 1e-8, "product states saturate additivity and subadditivity, worst " +
                                    fmt(worst_prod));
  o.detail << " (worst " << fmt(std::max(worst19, worst_prod)) << ")";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  double worst_vn = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Distribution p = random_distribution(1 + s % 16, mix_seed(5, s));
    worst_vn = std::max(worst_vn, std::abs(von_neumann(DensityMatrix::diagonal(p.probs())) -
                                           shannon_entropy(p, LogBase::nats)));
  }
  o.require(worst_vn <= 1e-10, "diagonal von Neumann = Shannon, worst " + fmt(worst_vn));
  double worst_rel = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t d = 2 + s % 3;
    const Distribution p = random_distribution(d, mix_seed(6, 2 * s));
    const Distribution q = random_distribution(d, mix_seed(6, 2 * s + 1));
    const ComplexMatrix u = random_unitary(d, mix_seed(7, s));
    const double quantum =
        quantum_relative_entropy(conjugate_by_unitary(DensityMatrix::diagonal(p.probs()), u),
                                 conjugate_by_unitary(DensityMatrix::diagonal(q.probs()), u))
            .as_double();
    worst_rel = std::max(worst_rel,
                         std::abs(quantum - relative_entropy(p, q, LogBase::nats).as_double()));
  }
  o.require(worst_rel <= 1e-9, "commuting relative entropy = classical, worst " + fmt(worst_rel));
  o.detail << " (worst " << fmt(std::max(worst_vn, worst_rel)) << ")";
  return o;
}

Outcome subentropy_convergence() {
  Outcome o;
  const Decimal target = log(Decimal(2)) - Decimal(1) / 2;
  const double spread_err = std::abs(subentropy_of_spectrum({0.5, 0.5}, 1e-7) -
                                     static_cast<double>(target));
  o.require(spread_err <= 1e-5, "spread evaluation at 1e-7, error " + fmt(spread_err));
  Decimal previous = 1;
  o.detail << " (perturbation errors";
  for (int k = 3; k <= 7; ++k) {
    const Decimal eps = pow(Decimal(10), -k);
    const Decimal err = abs(subentropy_direct({Decimal(1) / 2 + eps / 2, Decimal(1) / 2 - eps / 2}) -
                            target);
    o.detail << " " << fmt(static_cast<double>(err));
    o.require(err < previous, "perturbation sequence not decreasing at eps 1e-" + std::to_string(k));
    previous = err;
  }
  o.detail << "; spread error " << fmt(spread_err) << ")";
  return o;
}

Outcome harness_integrity() {
  Outcome o;
  TrialConfig config;
  config.trials_per_check = 500;
  const CheckReport mutant = run_suite(config, "all", mutant_checks());
  o.require(mutant.checks.at(0).failures == mutant.checks.at(0).trials,
            "mutant failed " + std::to_string(mutant.checks.at(0).failures) + " of " +
                std::to_string(mutant.checks.at(0).trials));
  config.trials_per_check = 50;
  const std::string serial = dump_json(report_to_json(run_suite(config, "all"), false));
  config.threads = 4;
  const std::string parallel = dump_json(report_to_json(run_suite(config, "all"), false));
  o.require(serial == parallel, "reports differ between 1 and 4 threads");
  return o;
}

Outcome cli_golden() {
  Outcome o;
  std::size_t passed = 0;
  const auto cases = golden::cases();
  for (const auto& c : cases) {
    const auto r = golden::invoke(c.args);
    if (golden::matches(c, r)) {
      ++passed;
      continue;
    }
    std::string args;
    for (const auto& a : c.args) args += " " + a;
    o.require(false, "entrolab" + args + " -> exit " + std::to_string(r.exit_code) + ", stdout " +
                         r.out);
  }
  o.detail << " (" << passed << "/" << cases.size() << " invocations)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"pinned values", pinned_values},
      {"classical suite, 1000 trials per check", classical_suite},
      {"quantum suite, 300 trials per check", quantum_suite},
      {"equality-case constructions", equality_cases},
      {"oracle equivalence", oracle_equivalence},
      {"subentropy convergence", subentropy_convergence},
      {"harness integrity", harness_integrity},
      {"CLI golden invocations", cli_golden},
  };
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "\n    threw: " << e.what();
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first
              << o.detail.str() << std::endl;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << " in " << fmt(seconds) << " s" << std::endl;
  return failures == 0 ? 0 : 1;
}
