#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace starorlicz::cli {

// Exit codes: 0 success, 1 a verification verdict was "violated", 2 invalid
// input, declaration mismatch or numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitError = 2;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace starorlicz::cli
