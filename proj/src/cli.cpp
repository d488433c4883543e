#include "entrolab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "entrolab/formats.hpp"
#include "entrolab/propcheck.hpp"
#include "entrolab/qentropy.hpp"

namespace entrolab::cli {

namespace {

enum Exit { ok = 0, check_failed = 1, format = 2, invariant = 3, dimension = 4 };

struct Options {
  std::string base = "";
  // classical
  std::string joint_file;
  std::string given;
  bool mutual = false;
  std::vector<std::string> relative_pair;
  // quantum
  std::string state_file;
  std::string dims;
  bool subentropy = false;
  std::string sigma_file;
  // holevo
  std::string ensemble_file;
  std::string povm_file;
  // sanov
  std::string rho_file;
  std::string sigma_arg;
  long long copies = 1;
  // check
  std::string suite = "all";
  std::size_t trials = 0;
  std::string seed;
  std::string report_file;
  std::size_t threads = 0;
};

LogBase parse_base(const std::string& text, LogBase fallback) {
  if (text.empty()) return fallback;
  if (text == "bits" || text == "2") return LogBase::bits;
  if (text == "nats" || text == "e") return LogBase::nats;
  throw FormatError("--base must be bits or nats, got '" + text + "'");
}

std::string with_unit(double v, LogBase base) { return fixed6(v) + " " + unit_name(base); }

std::string with_unit(const ExtendedReal& v, LogBase base) {
  return v.is_infinite() ? std::string("inf") : with_unit(v.value(), base);
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    char* end = nullptr;
    const long long v = std::strtoll(part.c_str(), &end, 10);
    if (part.empty() || *end != '\0' || v < 1) {
      throw FormatError("--dims expects positive integers like 2,2 or 2,2,2; got '" + text + "'");
    }
    dims.push_back(static_cast<std::size_t>(v));
  }
  if (dims.size() != 2 && dims.size() != 3) {
    throw FormatError("--dims expects two or three factors; got '" + text + "'");
  }
  return dims;
}

int cmd_classical(const Options& o, std::ostream& out) {
  const LogBase base = parse_base(o.base, LogBase::bits);
  if (!o.relative_pair.empty()) {
    const Distribution p = distribution_from_json(read_json_file(o.relative_pair[0]));
    const Distribution q = distribution_from_json(read_json_file(o.relative_pair[1]));
    out << "H(p||q) = " << with_unit(relative_entropy(p, q, base), base) << '\n';
    if (o.joint_file.empty()) return ok;
  }
  if (o.joint_file.empty()) throw FormatError("classical: a joint file or --relative is required");
  const Joint2 j = joint2_from_json(read_json_file(o.joint_file));
  if (!o.given.empty()) {
    if (o.given == "B") {
      out << "H(A|B) = " << with_unit(conditional_entropy(j, Axis::B, base), base) << '\n';
    } else if (o.given == "A") {
      out << "H(B|A) = " << with_unit(conditional_entropy(j, Axis::A, base), base) << '\n';
    } else {
      throw FormatError("--given must be A or B, got '" + o.given + "'");
    }
  }
  if (o.mutual) out << "H(A:B) = " << with_unit(mutual_information(j, base), base) << '\n';
  if (!o.given.empty() || o.mutual) return ok;

  out << "H(A) = " << with_unit(shannon_entropy(marginal(j, Axis::A), base), base) << '\n'
      << "H(B) = " << with_unit(shannon_entropy(marginal(j, Axis::B), base), base) << '\n'
      << "H(A,B) = " << with_unit(joint_entropy(j, base), base) << '\n'
      << "H(A|B) = " << with_unit(conditional_entropy(j, Axis::B, base), base) << '\n'
      << "H(B|A) = " << with_unit(conditional_entropy(j, Axis::A, base), base) << '\n'
      << "H(A:B) = " << with_unit(mutual_information(j, base), base) << '\n';
  return ok;
}

void print_tripartite(const DensityMatrix& rho, const TripartiteDims& d, LogBase base,
                      std::ostream& out) {
  const DensityMatrix ab = partial_trace(rho, d.ab_c(), Subsystem::A);
  const DensityMatrix bc = partial_trace(rho, d.a_bc(), Subsystem::B);
  const DensityMatrix a = partial_trace(ab, {d.dim_a, d.dim_b}, Subsystem::A);
  const DensityMatrix b = partial_trace(ab, {d.dim_a, d.dim_b}, Subsystem::B);
  const DensityMatrix c = partial_trace(bc, {d.dim_b, d.dim_c}, Subsystem::B);
  const double s_abc = von_neumann(rho, base);
  const double s_ab = von_neumann(ab, base);
  const double s_bc = von_neumann(bc, base);
  const double s_b = von_neumann(b, base);
  out << "S(A) = " << with_unit(von_neumann(a, base), base) << '\n'
      << "S(B) = " << with_unit(s_b, base) << '\n'
      << "S(C) = " << with_unit(von_neumann(c, base), base) << '\n'
      << "S(A,B) = " << with_unit(s_ab, base) << '\n'
      << "S(B,C) = " << with_unit(s_bc, base) << '\n'
      << "S(A,B,C) = " << with_unit(s_abc, base) << '\n';
  const double slack = s_ab + s_bc - s_abc - s_b;
  out << "S(A,B,C) + S(B) <= S(A,B) + S(B,C): " << (slack >= -1e-8 ? "holds" : "VIOLATED")
      << " (slack " << with_unit(slack, base) << ")\n";
}

int cmd_quantum(const Options& o, std::ostream& out) {
  const LogBase base = parse_base(o.base, LogBase::nats);
  const DensityMatrix rho = density_from_json(read_json_file(o.state_file));
  out << "S = " << with_unit(von_neumann(rho, base), base) << '\n';
  if (!o.dims.empty()) {
    const auto dims = parse_dims(o.dims);
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    if (total != rho.dim()) {
      throw DimensionError("--dims " + o.dims + " has product " + std::to_string(total) +
                           " but the state has dimension " + std::to_string(rho.dim()));
    }
    if (dims.size() == 2) {
      const BipartiteDims d{dims[0], dims[1]};
      const auto m = quantum_joint_marginals(rho, d, base);
      out << "S(A) = " << with_unit(m.s_a, base) << '\n'
          << "S(B) = " << with_unit(m.s_b, base) << '\n'
          << "S(A,B) = " << with_unit(m.s_ab, base) << '\n'
          << "S(A|B) = " << with_unit(m.s_ab - m.s_b, base) << '\n'
          << "S(A:B) = " << with_unit(m.s_a + m.s_b - m.s_ab, base) << '\n';
    } else {
      print_tripartite(rho, {dims[0], dims[1], dims[2]}, base, out);
    }
  }
  if (o.subentropy) out << "Q = " << with_unit(from_nats(subentropy(rho), base), base) << '\n';
  if (!o.sigma_file.empty()) {
    const DensityMatrix sigma = density_from_json(read_json_file(o.sigma_file));
    out << "S(rho||sigma) = " << with_unit(quantum_relative_entropy(rho, sigma, base), base)
        << '\n';
  }
  return ok;
}

int cmd_holevo(const Options& o, std::ostream& out) {
  const LogBase base = parse_base(o.base, LogBase::nats);
  const Ensemble e = ensemble_from_json(read_json_file(o.ensemble_file));
  std::optional<Povm> povm;
  if (!o.povm_file.empty()) {
    povm.emplace(povm_from_json(read_json_file(o.povm_file)));
    if (povm->dim() != e.dim()) {
      throw DimensionError("POVM acts on dimension " + std::to_string(povm->dim()) +
                           " but the ensemble states have dimension " + std::to_string(e.dim()));
    }
  }
  const double chi = holevo_chi(e, base);
  const double h_p = shannon_entropy(e.probs(), base);
  const double s_avg = von_neumann(e.average(), base);
  const double log_dim = from_nats(std::log(static_cast<double>(e.dim())), base);
  out << "chi = " << with_unit(chi, base) << '\n'
      << "H(p) = " << with_unit(h_p, base) << '\n'
      << "S(rho) = " << with_unit(s_avg, base) << '\n'
      << "log dim = " << with_unit(log_dim, base) << '\n';
  if (!povm) return ok;

  constexpr double tol = 1e-9;
  const double measured = measured_mutual_info(e, *povm, base);
  out << "measured = " << fixed6(measured) << " ≤ chi = " << fixed6(chi) << " ≤ H(p) = "
      << fixed6(h_p) << ' ' << unit_name(base) << '\n';
  std::vector<std::string> broken;
  if (measured > chi + tol) broken.push_back("measured > chi by " + fixed6(measured - chi));
  if (chi > h_p + tol) broken.push_back("chi > H(p) by " + fixed6(chi - h_p));
  if (chi > s_avg + tol) broken.push_back("chi > S(rho) by " + fixed6(chi - s_avg));
  if (s_avg > log_dim + tol) broken.push_back("S(rho) > log dim by " + fixed6(s_avg - log_dim));
  if (broken.empty()) {
    out << "bound chain: holds\n";
  } else {
    out << "bound chain: VIOLATED";
    for (const auto& b : broken) out << "; " << b;
    out << '\n';
  }
  return ok;
}

int cmd_sanov(const Options& o, std::ostream& out) {
  const DensityMatrix rho = density_from_json(read_json_file(o.rho_file));
  const DensityMatrix sigma = density_from_json(read_json_file(o.sigma_arg));
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("rho has dimension " + std::to_string(rho.dim()) + " but sigma has " +
                         std::to_string(sigma.dim()));
  }
  const ExtendedReal d = quantum_relative_entropy(rho, sigma);
  const double p = sanov_confusion_probability(rho, sigma, o.copies);
  out << "S(rho||sigma) = " << with_unit(d, LogBase::nats) << '\n'
      << "P_N = " << probability_text(p) << '\n';
  return ok;
}

std::uint64_t resolve_seed(const std::string& flag) {
  std::string text = flag;
  if (text.empty()) {
    const char* env = std::getenv("ENTROLAB_SEED");
    text = env ? env : "42";
  }
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0' || errno != 0 || text.front() == '-') {
    throw FormatError("seed must be a non-negative 64-bit integer, got '" + text + "'");
  }
  return v;
}

int cmd_check(const Options& o, std::ostream& out) {
  TrialConfig config;
  config.master_seed = resolve_seed(o.seed);
  if (o.trials > 0) config.trials_per_check = o.trials;
  config.threads = o.threads > 0 ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  const CheckReport report = run_suite(config, o.suite);
  for (const auto& c : report.checks) {
    char worst[32];
    std::snprintf(worst, sizeof worst, "%.3e", c.worst_violation);
    out << (c.failures == 0 ? "PASS " : "FAIL ") << c.name << " [" << c.eq << "] "
        << c.trials - c.failures << "/" << c.trials << " worst violation " << worst << '\n';
  }
  out << (report.pass ? "suite passed" : "suite FAILED") << " (seed " << report.seed << ", "
      << report.counterexamples.size() << " counterexamples)\n";
  if (!o.report_file.empty()) write_json_file(o.report_file, report_to_json(report));
  return report.pass ? ok : check_failed;
}

}  // namespace

std::string fixed6(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string probability_text(double p) {
  if (p == 0.0) return "0";
  if (p >= 1e-4) return fixed6(p);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4e", p);
  std::string s(buf);
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  std::string sign = s.substr(e + 1, 1) == "-" ? "-" : "";
  std::string digits = s.substr(e + 2);
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  return mantissa + "e" + sign + digits;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"entrolab: classical and quantum entropy toolkit", "entrolab"};
  app.require_subcommand(1);

  auto* classical = app.add_subcommand("classical", "entropies of a joint distribution");
  classical->add_option("joint", o.joint_file, "joint distribution JSON");
  classical->add_option("--given", o.given, "print only H(A|B) (B) or H(B|A) (A)");
  classical->add_flag("--mutual", o.mutual, "print only H(A:B)");
  classical->add_option("--relative", o.relative_pair, "relative entropy H(p||q) of two files")
      ->expected(2);
  classical->add_option("--base", o.base, "bits (default) or nats");

  auto* quantum = app.add_subcommand("quantum", "entropies of a density matrix");
  quantum->add_option("state", o.state_file, "density matrix JSON")->required();
  quantum->add_option("--dims", o.dims, "subsystem dimensions, e.g. 2,2 or 2,2,2");
  quantum->add_flag("--subentropy", o.subentropy, "print the subentropy Q");
  quantum->add_option("--relative", o.sigma_file, "print S(rho||sigma) against this state");
  quantum->add_option("--base", o.base, "nats (default) or bits");

  auto* holevo = app.add_subcommand("holevo", "Holevo quantity of an ensemble");
  holevo->add_option("ensemble", o.ensemble_file, "ensemble JSON")->required();
  holevo->add_option("povm", o.povm_file, "optional POVM JSON");
  holevo->add_option("--base", o.base, "nats (default) or bits");

  auto* sanov = app.add_subcommand("sanov", "confusion probability over N copies");
  sanov->add_option("rho", o.rho_file, "true state JSON")->required();
  sanov->add_option("sigma", o.sigma_arg, "hypothesis state JSON")->required();
  sanov->add_option("--n", o.copies, "number of copies")->required();

  auto* check = app.add_subcommand("check", "run the randomized invariant suite");
  check->add_option("--suite", o.suite, "all, classical, quantum, a check name or a label");
  check->add_option("--trials", o.trials, "trials per check (default per check)");
  check->add_option("--seed", o.seed, "master seed (default $ENTROLAB_SEED or 42)");
  check->add_option("--report", o.report_file, "write the JSON report here");
  check->add_option("--threads", o.threads, "worker threads (default: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : format;
  }

  try {
    if (*classical) return cmd_classical(o, out);
    if (*quantum) return cmd_quantum(o, out);
    if (*holevo) return cmd_holevo(o, out);
    if (*sanov) return cmd_sanov(o, out);
    if (*check) {
      if (check->count("--trials") && o.trials == 0) {
        throw InvariantError("positive_count", 0.0, "--trials must be at least 1");
      }
      return cmd_check(o, out);
    }
  } catch (const InvariantError& e) {
    err << "error: " << e.what() << " [invariant " << e.invariant() << ", magnitude "
        << e.magnitude() << "]\n";
    return invariant;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return dimension;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return format;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    return format;
  }
  return format;
}

}  // namespace entrolab::cli
