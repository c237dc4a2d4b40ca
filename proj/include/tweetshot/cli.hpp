#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tweetshot {

/// Entry point shared by the binary and the in-process CLI tests.
/// args excludes the program name. Exit codes: 0 success, 1 hard error,
/// 2 partial extraction.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tweetshot
