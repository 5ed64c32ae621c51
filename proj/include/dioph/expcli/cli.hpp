#pragma once

#include <iosfwd>

namespace dioph::expcli {

/// Exit codes: 0 success, 1 usage or malformed input, 2 runtime error, 3 audit failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dioph::expcli
