#pragma once

// Command-line front end. run() is the whole program minus main(), so tests
// can drive it in-process with string streams.
//
// Exit codes: 0 success, 1 check failure, 2 malformed input or usage,
// 3 invariant violation in input, 4 dimension mismatch.

#include <iosfwd>
#include <string>

namespace entrolab::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Six decimals; never prints a negative zero. Infinity prints as "inf".
std::string fixed6(double v);

/// The human form of a probability: "0", six decimals down to 1e-4, then
/// four-digit scientific with an unpadded exponent ("9.5367e-7").
std::string probability_text(double p);

}  // namespace entrolab::cli
