// Standalone acceptance gate: prints one pass/fail line per criterion and
// exits nonzero if any fails.

#include <iostream>

#include "hypsurf/acceptance.hpp"

int main() { return hypsurf::acceptance::run_acceptance(std::cout); }
