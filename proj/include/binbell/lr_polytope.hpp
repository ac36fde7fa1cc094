#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "binbell/binning.hpp"
#include "binbell/coefficients.hpp"

namespace binbell {

/// A deterministic local strategy: outcome k_a for Alice's setting a and
/// l_b for Bob's setting b.
struct DeterministicConfig {
  int k1 = 0;
  int k2 = 0;
  int l1 = 0;
  int l2 = 0;

  friend bool operator==(const DeterministicConfig&, const DeterministicConfig&) = default;
};

struct EnumerationLimits {
  int max_d = 32;
};

class EnumerationLimitError : public std::runtime_error {
 public:
  EnumerationLimitError(int d, int limit);
  int dim() const noexcept { return d_; }
  int limit() const noexcept { return limit_; }

 private:
  int d_;
  int limit_;
};

/// 0/1 vector of length 4d^2 made of the blocks
/// (e_k1 x e_l1) + (e_k1 x e_l2) + (e_k2 x e_l1) + (e_k2 x e_l2).
/// Only the four nonzero positions are stored.
class ExtremalVector {
 public:
  ExtremalVector(int d, const DeterministicConfig& config);

  int dim() const noexcept { return 4 * d_ * d_; }
  /// Position of the single 1 in each block, as indices into the full vector.
  const std::array<int, 4>& support() const noexcept { return support_; }
  std::vector<std::int64_t> dense() const;

 private:
  int d_;
  std::array<int, 4> support_;
};

/// eps_11(k1,l1) + eps_12(k1,l2) + eps_21(k2,l1) + eps_22(k2,l2).
double deterministic_value(const CoefficientTensor& coeffs, const DeterministicConfig& config);

/// Maximum of the deterministic value over all d^4 configurations.
double lr_max(const CoefficientTensor& coeffs, const EnumerationLimits& limits = {});

/// Number of configurations attaining lr_max exactly.
std::int64_t count_max_configs(const CoefficientTensor& coeffs,
                               const EnumerationLimits& limits = {});

/// d^2 (d^2 - d(n1 + m1) + n1(m1 + m2) + n2(m1 - m2)).
std::int64_t m_formula(const BinningSpec& spec);

/// 4d(d-1): the number of independent extremal points a facet requires.
std::int64_t facet_threshold(int d);

struct TightnessReport {
  double lr_max = 0.0;
  std::int64_t m_counted = 0;
  std::int64_t m_formula = 0;
  std::int64_t threshold = 0;
  std::int64_t linear_rank = 0;
  std::int64_t affine_rank = 0;
  bool is_tight_by_count = false;
};

/// Enumerates every configuration, counts the maximizers and streams their
/// extremal vectors through exact integer elimination. The affine rank is
/// the rank of differences from the first maximizer, plus one.
TightnessReport tightness_certificate(const BinningSpec& spec,
                                      const EnumerationLimits& limits = {});

}  // namespace binbell
