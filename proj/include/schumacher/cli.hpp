#pragma once

#include <iosfwd>

namespace schumacher::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerifyFailed = 2, kInternal = 3 };

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace schumacher::cli
