#pragma once

#include <ostream>

namespace astronet::cli {

/// Exit codes: 0 success, 1 config/usage error, 2 runtime error.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace astronet::cli
