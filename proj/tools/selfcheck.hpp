#pragma once

#include <string>
#include <vector>

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant checks over the whole pipeline.
std::vector<CheckResult> run_selfcheck(unsigned long seed);
