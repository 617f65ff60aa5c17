// Seeded invariant suites behind `affdress selftest`: algebraic identities
// of the loop elements, reality conditions, residue vanishing and
// lambda-linearity of dressed frames.  Every check compares two independent
// evaluation routes or an identity; none uses printed example values.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace affdress::selftest {

struct Check {
  std::string name;
  double value = 0.0;      // worst deviation observed
  double tolerance = 0.0;  // pass iff value < tolerance
  bool pass() const { return value < tolerance; }
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool pass() const;
};

// Known suites, in run order.
const std::vector<std::string>& suite_names();

// Runs one suite ("core", "loopgroup", "surfaces", "dressing", "verify") or
// all of them ("all").  Throws InvalidParameter for an unknown name.
std::vector<SuiteResult> run(const std::string& suite, std::uint64_t seed);

}  // namespace affdress::selftest
