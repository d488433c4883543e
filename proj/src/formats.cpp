#include "entrolab/formats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace entrolab {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw FormatError(what); }

double number_at(const Json& j, const char* what) {
  if (!j.is_number()) malformed(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) malformed(std::string(what) + ": number is not finite");
  return v;
}

std::size_t count_at(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    malformed(std::string(what) + ": expected a positive integer");
  }
  return static_cast<std::size_t>(j.get<long long>());
}

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    malformed(std::string(what) + ": missing \"" + key + "\"");
  }
  return j.at(key);
}

std::vector<double> number_list(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(number_at(x, what));
  return out;
}

std::vector<std::vector<double>> number_table(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) malformed(std::string(what) + ": expected a nested array");
  std::vector<std::vector<double>> out;
  out.reserve(j.size());
  for (const auto& row : j) out.push_back(number_list(row, what));
  return out;
}

Json table_json(const StochasticMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.inputs(); ++i) {
    rows.push_back(Json(std::vector<double>(m.row(i).probs().begin(), m.row(i).probs().end())));
  }
  return rows;
}

StochasticMatrix stochastic_from_json(const Json& j, const char* what) {
  std::vector<Distribution> rows;
  for (auto& r : number_table(j, what)) rows.emplace_back(std::move(r));
  return StochasticMatrix(std::move(rows));
}

void format_number(std::ostringstream& out, double v) {
  if (std::isnan(v)) {
    out << "\"nan\"";
  } else if (std::isinf(v)) {
    out << (v > 0 ? "\"inf\"" : "\"-inf\"");
  } else {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    // Keep the value typed as floating point on re-read.
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    out << s;
  }
}

void dump_value(std::ostringstream& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        out << Json(key).dump() << (indent < 0 ? ":" : ": ");
        dump_value(out, value, indent, depth + 1);
      }
      newline(depth);
      out << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) {
        return x.is_primitive() || (x.is_array() && x.size() <= 2 &&
                                    std::all_of(x.begin(), x.end(),
                                                [](const Json& y) { return y.is_primitive(); }));
      });
      out << '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out << (flat && indent >= 0 ? ", " : ",");
        first = false;
        if (!flat) newline(depth + 1);
        dump_value(out, value, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out << ']';
      return;
    }
    case Json::value_t::number_float:
      format_number(out, j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (const auto& z : m.entries()) entries.push_back(Json::array({z.real(), z.imag()}));
  return Json{{"dims", {m.rows(), m.cols()}}, {"entries", std::move(entries)}};
}

Json to_json(const DensityMatrix& rho) { return to_json(rho.matrix()); }

Json to_json(const Distribution& p) {
  Json out{{"probs", std::vector<double>(p.probs().begin(), p.probs().end())}};
  if (!p.labels().empty()) out["labels"] = p.labels();
  return out;
}

Json to_json(const Joint2& j) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < j.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < j.cols(); ++k) row.push_back(j(i, k));
    rows.push_back(std::move(row));
  }
  return Json{{"probs", std::move(rows)}};
}

Json to_json(const Joint3& j) {
  return Json{{"shape", j.shape()},
              {"probs", std::vector<double>(j.cells().begin(), j.cells().end())}};
}

Json to_json(const MarkovChain3& c) {
  return Json{{"source", to_json(c.source())},
              {"trans_ab", table_json(c.trans_ab())},
              {"trans_bc", table_json(c.trans_bc())}};
}

Json to_json(const Ensemble& e) {
  Json states = Json::array();
  for (const auto& s : e.states()) states.push_back(to_json(s));
  return Json{{"probs", std::vector<double>(e.probs().probs().begin(), e.probs().probs().end())},
              {"states", std::move(states)}};
}

Json to_json(const Povm& m) {
  Json elements = Json::array();
  for (const auto& e : m.elements()) elements.push_back(to_json(e));
  return Json{{"elements", std::move(elements)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const Json& dims = field(j, "dims", "matrix");
  if (!dims.is_array() || dims.size() != 2) malformed("matrix: \"dims\" must be [rows, cols]");
  const std::size_t rows = count_at(dims[0], "matrix dims");
  const std::size_t cols = count_at(dims[1], "matrix dims");
  const Json& entries = field(j, "entries", "matrix");
  if (!entries.is_array() || entries.size() != rows * cols) {
    std::ostringstream msg;
    msg << "matrix: expected " << rows * cols << " entries";
    malformed(msg.str());
  }
  std::vector<Complex> values;
  values.reserve(entries.size());
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2) malformed("matrix: each entry must be [re, im]");
    values.emplace_back(number_at(e[0], "matrix entry"), number_at(e[1], "matrix entry"));
  }
  return ComplexMatrix(rows, cols, std::move(values));
}

DensityMatrix density_from_json(const Json& j) { return DensityMatrix(matrix_from_json(j)); }

Distribution distribution_from_json(const Json& j) {
  if (j.is_array()) return Distribution(number_list(j, "distribution"));
  std::vector<double> probs = number_list(field(j, "probs", "distribution"), "distribution");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) malformed("distribution: \"labels\" must be an array");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) malformed("distribution: labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return Distribution(std::move(probs), std::move(labels));
}

Joint2 joint2_from_json(const Json& j) {
  const Json& table = j.is_array() ? j : field(j, "probs", "joint");
  return Joint2::from_rows(number_table(table, "joint"));
}

Joint3 joint3_from_json(const Json& j) {
  const Json& shape = field(j, "shape", "joint3");
  if (!shape.is_array() || shape.size() != 3) malformed("joint3: \"shape\" must have 3 entries");
  const std::array<std::size_t, 3> s{count_at(shape[0], "joint3 shape"),
                                     count_at(shape[1], "joint3 shape"),
                                     count_at(shape[2], "joint3 shape")};
  return Joint3(s, number_list(field(j, "probs", "joint3"), "joint3"));
}

MarkovChain3 markov_chain_from_json(const Json& j) {
  return MarkovChain3(distribution_from_json(field(j, "source", "markov chain")),
                      stochastic_from_json(field(j, "trans_ab", "markov chain"), "trans_ab"),
                      stochastic_from_json(field(j, "trans_bc", "markov chain"), "trans_bc"));
}

Ensemble ensemble_from_json(const Json& j) {
  Distribution probs(number_list(field(j, "probs", "ensemble"), "ensemble probs"));
  const Json& states = field(j, "states", "ensemble");
  if (!states.is_array()) malformed("ensemble: \"states\" must be an array");
  std::vector<DensityMatrix> rhos;
  rhos.reserve(states.size());
  for (const auto& s : states) rhos.push_back(density_from_json(s));
  return Ensemble(std::move(probs), std::move(rhos));
}

Povm povm_from_json(const Json& j) {
  const Json& elements = field(j, "elements", "POVM");
  if (!elements.is_array()) malformed("POVM: \"elements\" must be an array");
  std::vector<ComplexMatrix> ms;
  ms.reserve(elements.size());
  for (const auto& e : elements) ms.push_back(matrix_from_json(e));
  return Povm(std::move(ms));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string dump_json(const Json& j, int indent) {
  std::ostringstream out;
  dump_value(out, j, indent, 0);
  return out.str();
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << dump_json(j) << '\n';
}

}  // namespace entrolab
