#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace detineq::cli {

// Exit statuses shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kViolated = 1,         // check: violated; fuzz/reproduce: unexpected outcome
  kPrecondition = 2,     // check: precondition_failed
  kUsage = 3,            // bad flags, unreadable or malformed input
};

// args excludes the program name. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace detineq::cli
