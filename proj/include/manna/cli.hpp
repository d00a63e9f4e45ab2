#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace manna::cli {

enum ExitCode : int {
    kOk = 0,             // success, check passed, search found something, reproduction confirmed
    kNegative = 1,       // fairness violation found, search empty, reproduction not confirmed
    kInputError = 2,     // bad flags, unreadable or invalid files, out-of-range parameters
    kInternalError = 3,  // solver invariant violated, or WEF1 post-check could not be repaired
};

/// Dispatches check / solve wef1t / solve market2 / search / repro / gen.
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace manna::cli
