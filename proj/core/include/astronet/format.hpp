#pragma once

// Locale-independent shortest round-trip number formatting for CSV/JSON output.

#include <string>

namespace astronet {

std::string format_double(double x);

}  // namespace astronet
