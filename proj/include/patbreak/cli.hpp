#pragma once

#include <iostream>

namespace patbreak {

// Command-line front end. Exit codes: 0 success, 1 domain error (budgets,
// order guards, solver failures), 2 usage error.
int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout,
             std::ostream& err = std::cerr);

}  // namespace patbreak
