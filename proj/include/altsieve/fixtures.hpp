#pragma once

#include <string>
#include <vector>

namespace altsieve::fixtures {

struct Result {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// The end-to-end checks pinning the shipped computations, one per acceptance
// criterion (A1..A10). Each runs independently and reports pass/fail.
std::vector<Result> run_all();

// Individual criteria, for selective runs.
Result criterion(int number);

}  // namespace altsieve::fixtures
