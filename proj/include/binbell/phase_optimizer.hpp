#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "binbell/binning.hpp"
#include "binbell/qudit.hpp"

namespace binbell {

/// Phase search settings. The Bell value only depends on the sums
/// alpha_a + beta_b, so alpha1 is pinned to 0 and the search runs over
/// (alpha2, beta1, beta2).
struct PhaseOptimizerOptions {
  /// Grid points per axis of the 3-D coarse grid (44^3 ~ 17^4 cells).
  int grid_points = 44;
  /// Search window [0, window) per phase; 0 selects the binning's shift
  /// period (2 for the alternating binning at even d).
  double window = 0.0;
  /// Best grid cells handed to the local refinement.
  int refine_top = 8;
  int random_restarts = 5;
  double tolerance = 1e-10;
  int max_iterations = 5000;
  std::uint64_t seed = 0x5eed;
};

struct TraceRecord {
  int iteration = 0;
  PhaseSettings phases;
  double value = 0.0;
};

using TraceSink = std::function<void(const TraceRecord&)>;

struct PhaseOptimizationResult {
  /// Reduced into [0, d).
  PhaseSettings phases;
  /// bell_expectation at `phases`, recomputed by direct inner products;
  /// a lower bound on the maximum over all phases.
  double value = 0.0;
  double window = 0.0;
  int evaluations = 0;
};

PhaseOptimizationResult optimize_phases(const BinningSpec& spec,
                                        const PhaseOptimizerOptions& options = {},
                                        const TraceSink& trace = {});

PhaseOptimizationResult optimize_phases(int d, Preset preset,
                                        const PhaseOptimizerOptions& options = {},
                                        const TraceSink& trace = {});

}  // namespace binbell
