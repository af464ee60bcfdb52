#pragma once

#include <string>

namespace aii {

// Locale-independent shortest round-trip-safe rendering at 10 significant
// digits, '.' decimal separator.
std::string fmt_num(double v);

// `v` rounded to 10 significant digits, for JSON emission.
double round_sig10(double v);

// SHA-256 hex digest.
std::string sha256_hex(const std::string& bytes);

}  // namespace aii
