#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cqed::selftest {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Structural property suite: spin-algebra closure, degeneracy sum rule,
// Hepp-Lieb sandwich on freshly computed Dicke points, spin-coupling PSD
// and uniform-mode rank-1 structure, kernel parity and sum rule.
std::vector<Check> run_all();

// Prints one line per check; returns true iff all pass.
bool run_and_report(std::ostream& out);

} // namespace cqed::selftest
