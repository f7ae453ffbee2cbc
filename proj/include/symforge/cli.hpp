#pragma once

#include <string>
#include <vector>

namespace symforge {

/// Entry point behind the symforge binary. Exit codes: 0 success,
/// 1 any file-level failure, 2 usage or configuration error.
int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args);  // args without argv[0]

}  // namespace symforge
