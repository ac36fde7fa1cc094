#include "binbell/phase_optimizer.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "binbell/coefficients.hpp"
#include "binbell/simplex.hpp"

namespace binbell {
namespace {

struct Candidate {
  std::array<double, 3> x;  // alpha2, beta1, beta2
  double value;
};

PhaseSettings to_phases(std::span<const double> x) { return {0.0, x[0], x[1], x[2]}; }

bool better(double value, const PhaseSettings& phases, double best_value,
            const PhaseSettings& best_phases) {
  if (value != best_value) return value > best_value;
  return phases.as_array() < best_phases.as_array();
}

}  // namespace

PhaseOptimizationResult optimize_phases(const BinningSpec& spec,
                                        const PhaseOptimizerOptions& options,
                                        const TraceSink& trace) {
  if (options.grid_points < 1) throw std::invalid_argument("grid_points must be positive");
  const int d = spec.dim();
  const CoefficientTensor coeffs = build_coefficients(spec);
  const BellFunctionProfile profile(coeffs);
  const double window = options.window > 0.0 ? options.window : shift_period(spec);
  const int n = options.grid_points;

  int evaluations = 0;
  double best_value = -1e300;
  PhaseSettings best_phases;
  auto evaluate = [&](std::span<const double> x) {
    const PhaseSettings phases = to_phases(x);
    const double v = profile(phases);
    ++evaluations;
    if (better(v, phases, best_value, best_phases)) {
      best_value = v;
      best_phases = phases;
      if (trace) trace({evaluations, phases, v});
    }
    return v;
  };

  // Grid cells are visited in lexicographic order; ties keep the earlier cell.
  std::vector<Candidate> top;
  const auto keep = static_cast<std::size_t>(std::max(options.refine_top, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const std::array<double, 3> x{window * i / n, window * j / n, window * k / n};
        const double v = evaluate(x);
        if (keep == 0) continue;
        if (top.size() < keep || v > top.back().value) {
          auto pos = std::upper_bound(top.begin(), top.end(), v,
                                      [](double val, const Candidate& c) { return val > c.value; });
          top.insert(pos, {x, v});
          if (top.size() > keep) top.pop_back();
        }
      }
    }
  }

  std::vector<std::array<double, 3>> starts;
  for (const auto& c : top) starts.push_back(c.x);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(0.0, window);
  for (int r = 0; r < options.random_restarts; ++r) {
    starts.push_back({uniform(rng), uniform(rng), uniform(rng)});
  }

  SimplexOptions simplex;
  simplex.initial_step = window / n;
  simplex.size_tolerance = options.tolerance;
  simplex.max_iterations = options.max_iterations;
  for (const auto& start : starts) {
    minimize_simplex([&](std::span<const double> x) { return -evaluate(x); }, start, simplex);
  }

  const PhaseSettings chosen = best_phases.reduced(d);

  PhaseOptimizationResult result;
  result.phases = chosen;
  result.value = bell_expectation(coeffs, chosen);
  result.window = window;
  result.evaluations = evaluations;
  return result;
}

PhaseOptimizationResult optimize_phases(int d, Preset preset, const PhaseOptimizerOptions& options,
                                        const TraceSink& trace) {
  return optimize_phases(preset_binning(preset, d), options, trace);
}

}  // namespace binbell
