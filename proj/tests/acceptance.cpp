// Acceptance suite runner: one line per criterion, nonzero exit on failure.

#include <cstdio>

#include "singweyl/golden.hpp"

int main() {
    auto results = singweyl::run_acceptance();
    int failed = 0;
    for (const auto& r : results) {
        std::printf("criterion %2d %-28s %s  %s\n", r.index, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%zu criteria, %d failed\n", results.size(), failed);
    return failed == 0 ? 0 : 1;
}
