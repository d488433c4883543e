#pragma once

// JSON file formats.
//
//   matrix:       {"dims": [rows, cols], "entries": [[re, im], ...]}   row-major
//   ensemble:     {"probs": [...], "states": [matrix, ...]}
//   POVM:         {"elements": [matrix, ...]}
//   distribution: {"probs": [...], "labels": [...]?}   or a bare array
//   joint:        {"probs": [[...], ...]}                or a bare nested array
//   joint3:       {"shape": [a, b, c], "probs": [...]}   k fastest
//   markov chain: {"source": distribution, "trans_ab": [[...]], "trans_bc": [[...]]}
//
// Readers throw FormatError on malformed JSON or shape and let the domain
// constructors raise InvariantError / DimensionError.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "entrolab/probdist.hpp"
#include "entrolab/qentropy.hpp"
#include "entrolab/qlinalg.hpp"

namespace entrolab {

using Json = nlohmann::ordered_json;

Json to_json(const ComplexMatrix& m);
Json to_json(const DensityMatrix& rho);
Json to_json(const Distribution& p);
Json to_json(const Joint2& j);
Json to_json(const Joint3& j);
Json to_json(const MarkovChain3& c);
Json to_json(const Ensemble& e);
Json to_json(const Povm& m);

ComplexMatrix matrix_from_json(const Json& j);
DensityMatrix density_from_json(const Json& j);
Distribution distribution_from_json(const Json& j);
Joint2 joint2_from_json(const Json& j);
Joint3 joint3_from_json(const Json& j);
MarkovChain3 markov_chain_from_json(const Json& j);
Ensemble ensemble_from_json(const Json& j);
Povm povm_from_json(const Json& j);

/// Parses a file; FormatError if it is missing or not JSON.
Json read_json_file(const std::string& path);

/// Serializes with stable key order and every floating-point number written
/// with 17 significant digits. Non-finite numbers are written as the strings
/// "inf", "-inf" and "nan".
std::string dump_json(const Json& j, int indent = 2);
void write_json_file(const std::string& path, const Json& j);

}  // namespace entrolab
