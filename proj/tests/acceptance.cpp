// Acceptance gate: runs every criterion and prints one line per result.
#include <cstdio>
#include <iostream>

#include "flexlocus/selftest.hpp"

int main() {
    auto results = flexlocus::selftest::run_all();
    std::cout << flexlocus::selftest::format_results(results);
    return flexlocus::selftest::all_passed(results) ? 0 : 1;
}
