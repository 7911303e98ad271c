#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace posicert::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kRejected = 2;
inline constexpr int kCapability = 3;
inline constexpr int kInternal = 4;

// Runs one command line (args excludes the program name). Certificates and
// reports go to `out`, diagnostics to `err`; `in` is read when --cert is "-" or
// absent.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace posicert::cli
