#pragma once

#include <ostream>

namespace ergent::cli {

/// Exit codes: 0 success, 1 verification found violations, 2 parse error,
/// 3 validation error. Output is written only once a command has finished.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ergent::cli
