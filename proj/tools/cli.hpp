#pragma once

#include <iosfwd>

namespace tnormlab::cli {

/// Exit status: 0 success, 1 a check failed or a witness was found,
/// 2 usage or evaluation error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tnormlab::cli
