#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace muhs {

struct SelftestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Deterministic property suite over the whole library (seeded RNG for the
/// randomized checks).  Used by the CLI selftest command.
std::vector<SelftestResult> run_selftest(std::uint64_t seed);

}  // namespace muhs
