#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "binbell/binning.hpp"
#include "binbell/qudit.hpp"

namespace binbell::certify {

/// Every subset gets a uniformly random size in [1, d-1] and random members.
BinningSpec random_nonempty_binning(std::mt19937_64& rng, int d);

/// Each offset uniform in [-d, d).
PhaseSettings random_phases(std::mt19937_64& rng, int d);

struct PropertyOutcome {
  std::string name;
  int trials = 0;
  int failures = 0;
  double worst = 0.0;  ///< largest residual / violation seen
  std::string counterexample;

  bool passed() const noexcept { return failures == 0; }
};

struct CertifyOptions {
  std::uint64_t seed = 42;
  int trials = 100;
  /// Build Bell operators with the (2,2) block sign flipped; the identity and
  /// norm properties are expected to fail.
  bool mutate_e22 = false;
};

/// Normalization, Bell-operator identity, norm bound, M formula and exact
/// rank permutation invariance, each over `trials` random draws.
std::vector<PropertyOutcome> run_property_suites(const CertifyOptions& options);

std::string describe(const BinningSpec& spec);
std::string describe(const PhaseSettings& phases);

}  // namespace binbell::certify
