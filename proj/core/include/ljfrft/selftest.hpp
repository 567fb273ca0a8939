#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ljfrft::selftest {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // worst observed error
  double tolerance = 0.0;
  std::string detail;
};

/// Joint-transform algebra on random operators: index additivity,
/// reversibility, identity at (0, 0), F_J at (1, 1), separability,
/// commutativity of the two axes, time-axis unitarity and vec compatibility.
std::vector<CheckResult> transform_suite(std::uint64_t seed, int trials = 20);

/// Closed-form order and filter gradients against central differences.
std::vector<CheckResult> gradient_suite(std::uint64_t seed, int trials = 10);

/// Wiener optimality under random perturbations and the noiseless case.
std::vector<CheckResult> wiener_suite(std::uint64_t seed, int trials = 10);

/// All suites in order.
std::vector<CheckResult> run_all(std::uint64_t seed);

}  // namespace ljfrft::selftest
