#pragma once

#include <string>
#include <vector>

namespace cgp::cli {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Axiom and property suites at level r.  Each suite yields one line.
std::vector<CheckLine> run_checks(int r, unsigned precision, double tol, int jobs);

}  // namespace cgp::cli
