#pragma once

#include <span>
#include <vector>

#include "binbell/binning.hpp"

namespace binbell {

/// Weighting coefficients eps_ab(k, l) of a two-setting Bell function,
/// a, b in {1, 2} and k, l in {0, ..., d-1}.
///
/// Entries are real so that arbitrary Bell functions are representable; the
/// binned construction only ever produces +1 and -1.
class CoefficientTensor {
 public:
  /// `values` is laid out as four d*d blocks in (1,1), (1,2), (2,1), (2,2)
  /// order, each block row-major in (k, l).
  CoefficientTensor(int d, std::vector<double> values);

  int dim() const noexcept { return d_; }

  double operator()(int a, int b, int k, int l) const {
    return values_[index(a, b, k, l)];
  }

  std::span<const double> values() const noexcept { return values_; }
  /// The d*d block for settings (a, b), row-major in (k, l).
  std::span<const double> block(int a, int b) const;

  /// Copy with block (a, b) negated. Used to build non-binned variants such
  /// as the eps_22 sign-flip mutant.
  CoefficientTensor with_negated_block(int a, int b) const;

  bool is_sign_valued() const noexcept;

 private:
  std::size_t index(int a, int b, int k, int l) const {
    return ((static_cast<std::size_t>((a - 1) * 2 + (b - 1)) * d_) + k) * d_ + l;
  }

  int d_;
  std::vector<double> values_;
};

/// eps_ab(k, l) = zeta_{R_a}(k) zeta_{S_b}(l), with the (2,2) block negated.
CoefficientTensor build_coefficients(const BinningSpec& spec);

}  // namespace binbell
