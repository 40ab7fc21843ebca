#ifndef COPRIME_SELF_CHECK_HPP
#define COPRIME_SELF_CHECK_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace coprime {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast randomized invariant checks over the whole pipeline, seeded.
std::vector<CheckResult> run_self_checks(std::uint64_t seed);

}  // namespace coprime

#endif  // COPRIME_SELF_CHECK_HPP
