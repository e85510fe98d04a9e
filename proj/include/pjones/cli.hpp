#pragma once

// Command-line front end.  Exit codes: 0 success, 2 usage error,
// 3 mathematical mismatch (or heads not stabilized), 4 verify hit an
// unstabilized extraction, 5 oracle resource limit.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "pjones/statesum.hpp"

namespace pjones {

struct RunConfig {
    std::string command;
    PretzelSpec spec;
    int color_lo = 0, color_hi = 0;  // 0 = use the command's default policy
    int order = 2;
    std::size_t depth = 8;
    std::string format = "pretty";  // json|csv|pretty
    int jobs = 0;                   // 0 = automatic
    std::size_t budget = 0;         // oracle coefficient-storage cap; 0 = default
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pjones
