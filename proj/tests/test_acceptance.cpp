// Acceptance suite: runs every pinned criterion and prints one line per
// criterion. Exits nonzero if any fails.
#include <cstdio>

#include "altsieve/fixtures.hpp"

int main() {
    bool ok = true;
    for (const auto& r : altsieve::fixtures::run_all()) {
        std::printf("%s  %s  (%s)  [%.1fs]\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(),
                    r.seconds);
        std::fflush(stdout);
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}
