// Full-tier verification suite; one PASS/FAIL line per criterion.
#include "fluxlab/verify.hpp"

#include <iostream>

int main() {
    int failures = fluxlab::run_verification_suite(std::cout, /*fast=*/false);
    return failures == 0 ? 0 : 1;
}
