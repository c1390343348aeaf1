#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cutpoint {

struct ClaimResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  std::string detail{};  // first failure, or a one-line summary
};

/// Rabin PFA probability equals bin(reverse w) exactly for every word up to max_length.
ClaimResult check_rabin_identity(std::size_t max_length = 12);
/// Scaled PFA probability equals alpha * bin(reverse w) for alpha in {1/7, 1/3, 2/5, 9/10}.
ClaimResult check_scaling_identity(std::size_t max_length = 10);
/// Cube of B_{x,(3x+1)/2} is column-stochastic for `samples` rationals in (0, 1/10).
ClaimResult check_stochastic_cube(std::size_t samples = 20);
/// theta_x, gamma_x lie in their stated intervals for x up to 1/2 and up to 1/10.
ClaimResult check_interval_claims(std::size_t samples = 20, int max_bits = 4096);
/// Quadrant witnesses for all eight digit patterns match the table.
ClaimResult check_quadrant_table(int max_bits = 4096);

std::vector<ClaimResult> verify_all(int max_bits = 4096);

}  // namespace cutpoint
