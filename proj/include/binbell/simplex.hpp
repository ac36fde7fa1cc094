#pragma once

#include <functional>
#include <span>
#include <vector>

namespace binbell {

struct SimplexOptions {
  double initial_step = 0.1;
  /// Converged once the simplex characteristic size drops below this.
  double size_tolerance = 1e-10;
  int max_iterations = 5000;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead minimization (GSL nmsimplex2).
SimplexResult minimize_simplex(const Objective& objective, std::span<const double> start,
                               const SimplexOptions& options = {});

}  // namespace binbell
