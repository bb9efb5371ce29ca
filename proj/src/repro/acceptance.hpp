#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sextic::repro {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs one acceptance criterion (1..7).  Randomised suites draw from seed.
CriterionResult run_criterion(int id, std::uint64_t seed);

std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

/// "criterion <id> <name>: PASS|FAIL (<detail>)"
std::string format_line(const CriterionResult& r);

}  // namespace sextic::repro
