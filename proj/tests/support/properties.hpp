#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace properties {

inline constexpr std::uint64_t kSeed = 0x5EEDF00DULL;
inline constexpr int kCases = 200;

struct Outcome {
  std::string name;
  int cases = 0;
  int failures = 0;
  double worst = 0.0;  // largest violation seen (0 when exact)
  std::string first_failure;

  bool passed() const { return cases > 0 && failures == 0; }
};

// S(x, z) <= S(x, y) + S(y, z) on random models and node triples.
Outcome triangle_inequality(std::uint64_t seed, int cases);
// e_bar - E(y, x) <= S(x, y) <= E(x, y) - e_bar.
Outcome potential_bounds(std::uint64_t seed, int cases);
// u <= v implies T[u] <= T[v], bit for bit, for arbitrary models.
Outcome operator_monotone(std::uint64_t seed, int cases);
// T[u + c] = T[u] + c exactly on dyadic data.
Outcome operator_shift(std::uint64_t seed, int cases);
// sup |T[u] - T[v]| <= sup |u - v| exactly on dyadic data.
Outcome operator_nonexpansive(std::uint64_t seed, int cases);
// Backtracked chains move strictly toward their target.
Outcome chain_monotone(std::uint64_t seed, int cases);
// E and S are invariant under return vectors of the substrate.
Outcome pattern_equivariance(std::uint64_t seed, int cases);

std::vector<Outcome> run_all(std::uint64_t seed = kSeed, int cases = kCases);

}  // namespace properties
