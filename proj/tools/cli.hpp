#pragma once

#include <ostream>

namespace qseg::cli {

// Runs the qseg command line and returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qseg::cli
