#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epigame {

// Runs the command-line interface on `args` (program name excluded), writing
// normal output to `out` and errors to `err`.  Returns the process exit code:
//   0 — success
//   1 — the requested analysis came back negative (a failing `verify
//       theorems` or `ce-check`)
//   2 — any error: bad usage, unreadable files, malformed input, exceeded
//       caps.  The stable error-code name appears on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epigame
