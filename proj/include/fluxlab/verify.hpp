#pragma once

#include <iosfwd>

namespace fluxlab {

// Runs the full verification suite, printing one PASS/FAIL line per check.
// fast trims Monte-Carlo sample counts (statistically weaker, minutes
// faster); the full tier uses the reference sample counts. Returns the
// number of failed checks.
int run_verification_suite(std::ostream& out, bool fast);

} // namespace fluxlab
