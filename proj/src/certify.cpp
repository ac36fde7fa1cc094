#include "binbell/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "binbell/bell_operator.hpp"
#include "binbell/coefficients.hpp"
#include "binbell/lr_polytope.hpp"

namespace binbell::certify {
namespace {

constexpr double kTwoSqrt2 = 2.0 * std::numbers::sqrt2;

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

void record(PropertyOutcome& out, double measure, bool ok, const std::string& input) {
  ++out.trials;
  out.worst = std::max(out.worst, measure);
  if (!ok) {
    if (out.failures == 0) out.counterexample = input;
    ++out.failures;
  }
}

PropertyOutcome normalization(std::mt19937_64& rng, int trials) {
  PropertyOutcome out;
  out.name = "normalization";
  for (int t = 0; t < trials; ++t) {
    const int d = uniform_int(rng, 2, 16);
    const PhaseSettings phases = random_phases(rng, d);
    double worst = 0.0;
    for (int a = 1; a <= 2; ++a) {
      for (int b = 1; b <= 2; ++b) {
        double sum = 0.0;
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) sum += joint_probability(d, phases, a, b, k, l);
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    }
    record(out, worst, worst <= 1e-10, "d=" + std::to_string(d) + " " + describe(phases));
  }
  return out;
}

PropertyOutcome operator_identity(std::mt19937_64& rng, int trials, bool mutate,
                                  PropertyOutcome& norm_out) {
  PropertyOutcome out;
  out.name = "operator-identity";
  norm_out.name = "norm-bound";
  for (int t = 0; t < trials; ++t) {
    const int d = uniform_int(rng, 2, 10);
    const BinningSpec spec = random_nonempty_binning(rng, d);
    const PhaseSettings phases = random_phases(rng, d);
    CoefficientTensor coeffs = build_coefficients(spec);
    if (mutate) coeffs = coeffs.with_negated_block(2, 2);
    const std::string input = describe(spec) + " " + describe(phases);

    const double residual = operator_identity_residual(spec, coeffs, phases);
    record(out, residual, residual <= 1e-9, input);

    const double norm = build_bell_operator(coeffs, phases).spectral_norm();
    record(norm_out, norm, norm <= kTwoSqrt2 + 1e-9, input);
  }
  return out;
}

PropertyOutcome m_formula_property(std::mt19937_64& rng, int trials) {
  PropertyOutcome out;
  out.name = "m-formula";
  for (int t = 0; t < trials; ++t) {
    const int d = uniform_int(rng, 2, 8);
    const BinningSpec spec = random_nonempty_binning(rng, d);
    const auto counted = count_max_configs(build_coefficients(spec));
    const auto formula = m_formula(spec);
    const bool ok = counted == formula && formula >= facet_threshold(d);
    record(out, static_cast<double>(std::llabs(counted - formula)), ok,
           describe(spec) + " counted=" + std::to_string(counted) +
               " formula=" + std::to_string(formula));
  }
  return out;
}

PropertyOutcome rank_invariance(std::mt19937_64& rng, int trials) {
  PropertyOutcome out;
  out.name = "rank-permutation-invariance";
  for (int t = 0; t < trials; ++t) {
    const int d = uniform_int(rng, 2, 4);
    const BinningSpec spec = random_nonempty_binning(rng, d);
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto base = tightness_certificate(spec);
    const auto moved = tightness_certificate(spec.relabeled(perm));
    const bool ok = base.linear_rank == moved.linear_rank &&
                    base.affine_rank == moved.affine_rank && base.m_counted == moved.m_counted;
    record(out, static_cast<double>(std::llabs(base.linear_rank - moved.linear_rank)), ok,
           describe(spec));
  }
  return out;
}

}  // namespace

BinningSpec random_nonempty_binning(std::mt19937_64& rng, int d) {
  std::array<std::vector<int>, 4> subsets;
  std::vector<int> outcomes(d);
  std::iota(outcomes.begin(), outcomes.end(), 0);
  for (auto& subset : subsets) {
    std::shuffle(outcomes.begin(), outcomes.end(), rng);
    const int size = uniform_int(rng, 1, d - 1);
    subset.assign(outcomes.begin(), outcomes.begin() + size);
  }
  return BinningSpec(d, subsets[0], subsets[1], subsets[2], subsets[3]);
}

PhaseSettings random_phases(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> u(-static_cast<double>(d), static_cast<double>(d));
  PhaseSettings p;
  p.alpha1 = u(rng);
  p.alpha2 = u(rng);
  p.beta1 = u(rng);
  p.beta2 = u(rng);
  return p;
}

std::vector<PropertyOutcome> run_property_suites(const CertifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<PropertyOutcome> outcomes;
  outcomes.push_back(normalization(rng, options.trials));
  PropertyOutcome norm;
  outcomes.push_back(operator_identity(rng, options.trials, options.mutate_e22, norm));
  outcomes.push_back(norm);
  outcomes.push_back(m_formula_property(rng, options.trials));
  outcomes.push_back(rank_invariance(rng, options.trials));
  return outcomes;
}

std::string describe(const BinningSpec& spec) {
  std::ostringstream os;
  os << "d=" << spec.dim();
  for (int i = 0; i < 4; ++i) {
    const auto which = static_cast<BinningSpec::Subset>(i);
    os << ' ' << subset_name(which) << '=';
    const auto& subset = spec.subset(which);
    for (std::size_t j = 0; j < subset.size(); ++j) os << (j ? "," : "") << subset[j];
    if (subset.empty()) os << "{}";
  }
  return os.str();
}

std::string describe(const PhaseSettings& p) {
  std::ostringstream os;
  os.precision(17);
  os << "phases=(" << p.alpha1 << "," << p.alpha2 << "," << p.beta1 << "," << p.beta2 << ")";
  return os.str();
}

}  // namespace binbell::certify
