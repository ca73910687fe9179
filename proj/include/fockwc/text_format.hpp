// text_format.hpp — deterministic number/complex formatting and the complex
// literal parser used by the CLI.
//
// All floating output across the toolkit goes through g17(), which prints
// 17 significant digits so that every double round-trips bit-exactly and
// repeated runs emit identical bytes.

#pragma once

#include <optional>
#include <string>

#include "fockwc/fock_core.hpp"

namespace fockwc {

std::string g17(double x);

// Compact display form for check parameters: "0.3", "0.5i", "-0.6+0.9i"
// (9 significant digits; display only, not for round-trips).
std::string format_complex(Complex z);

// Shell-friendly complex literals, no spaces:
//   "1.5", "-2e-3", "0.5i", "i", "-i", "1+2i", "1.5-0.25i", "0+1i"
// Returns nullopt on malformed input.
std::optional<Complex> parse_complex(const std::string& text);

}  // namespace fockwc
