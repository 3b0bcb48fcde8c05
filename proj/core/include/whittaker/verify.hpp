#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "whittaker/lusztig.hpp"

namespace whittaker {

struct CheckResult {
  std::string name;
  long long trials = 0;
  long long passed = 0;
  std::optional<std::string> counterexample;  // first failing input
  bool ok() const { return passed == trials; }
};

std::string describe_chart(const LusztigChart& chart);

// Each check draws its own charts from RationalSampler(seed).
CheckResult check_bz_oracle(Family family, int n, int trials, std::uint64_t seed, int tamper = -1);
CheckResult check_involution(Family family, int n, int trials, std::uint64_t seed);
CheckResult check_inverse(Family family, int n, int trials, std::uint64_t seed);
CheckResult check_u_matrix(Family family, int n, int trials, std::uint64_t seed);
// Exact log-coordinate Jacobian of the BZ map, also compared in double precision within tol.
CheckResult check_bz_jacobian(Family family, int n, int trials, std::uint64_t seed, double tol = 1e-10);

CheckResult check_mutation(Rank2 pattern, int trials, std::uint64_t seed);
CheckResult check_mutation_jacobian(Rank2 pattern, int trials, std::uint64_t seed, double tol = 1e-10);
std::string rank2_name(Rank2 pattern);

struct VerifyOptions {
  int trials = 100;
  std::uint64_t seed = 1;
  int tamper = -1;  // perturbs one closed-form coordinate, for negative controls
  int jacobian_trials = 20;
};
// BZ oracle, involution, inverse, U-matrix and Jacobian for one group, then the rank-2 mutation suites.
std::vector<CheckResult> verify_group(Family family, int n, const VerifyOptions& options);
std::vector<CheckResult> verify_mutations(const VerifyOptions& options);

}  // namespace whittaker
