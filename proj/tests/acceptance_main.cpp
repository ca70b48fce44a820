#include <cstdlib>
#include <iostream>
#include <string>

#include "polyapx/acceptance.hpp"

int main(int argc, char** argv) {
    uint64_t seed = polyapx::kAcceptanceSeed;
    if (argc > 1) seed = std::stoull(argv[1]);
    const auto results = polyapx::run_acceptance(std::cout, seed);
    int failed = 0;
    for (const auto& r : results) failed += !r.pass;
    std::cout << (failed ? "ACCEPTANCE: " + std::to_string(failed) + " criteria failed" : "ACCEPTANCE: all criteria passed")
              << "\n";
    return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
