#pragma once

#include <Eigen/Dense>
#include <array>

#include "binbell/coefficients.hpp"

namespace binbell {

/// Measurement phase offsets. A party measuring with offset x uses the basis
/// |k> = d^{-1/2} sum_j w^{(k+x) j} |j>, w = exp(2 pi i / d); offsets are in
/// units where a full period is d.
struct PhaseSettings {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;

  double alice(int setting) const;
  double bob(int setting) const;

  /// Each offset reduced into [0, d); the Bell value is unchanged.
  PhaseSettings reduced(int d) const;

  std::array<double, 4> as_array() const { return {alpha1, alpha2, beta1, beta2}; }
  friend bool operator==(const PhaseSettings&, const PhaseSettings&) = default;
};

/// The phase settings at which the alternating binning reaches 2*sqrt(2):
/// alpha = (0, 1/2), beta = (-1/4, 1/4).
PhaseSettings optimal_t1_phases();

/// Columns are the d basis vectors |k> for one phase offset.
class MeasurementBasis {
 public:
  MeasurementBasis(int d, double offset);

  int dim() const noexcept { return d_; }
  double offset() const noexcept { return offset_; }
  const Eigen::MatrixXcd& vectors() const noexcept { return vectors_; }
  /// sum_k zeta(k) |k><k| for a +-1 binning given as per-outcome signs.
  Eigen::MatrixXcd binned_observable(const std::vector<int>& signs) const;

 private:
  int d_;
  double offset_;
  Eigen::MatrixXcd vectors_;
};

/// |(<a,k| x <b,l|) psi_max|^2 for psi_max = sum_j |jj> / sqrt(d), evaluated
/// from the explicit inner product. Settings a, b are 1 or 2.
double joint_probability(int d, const PhaseSettings& phases, int a, int b, int k, int l);

/// sin^2(pi x) / (d^3 sin^2(pi x / d)), the closed form of the joint
/// probability with x = k + l + alpha_a + beta_b; returns the limit 1/d when
/// x is a multiple of d.
double fourier_kernel(int d, double x);

/// Term-by-term value of the printed single-sine expression
/// eps / (2 d^3 sin(pi x / d)). Not a probability and singular at x = 0 mod
/// d; kept only to compare against the derived kernel.
double printed_single_sine_term(int d, double x);

/// sum_{a,b,k,l} eps_ab(k,l) P_ab(k,l), using direct inner products.
double bell_expectation(const CoefficientTensor& coeffs, const PhaseSettings& phases);

/// cos pi(a1+b1) + cos pi(a1+b2) + cos pi(a2+b1) - cos pi(a2+b2).
double t1_cosine_form(const PhaseSettings& phases);

/// Fast evaluator for a fixed coefficient tensor: eps is folded by
/// (k + l) mod d so each call costs 4d kernel evaluations.
class BellFunctionProfile {
 public:
  explicit BellFunctionProfile(const CoefficientTensor& coeffs);

  int dim() const noexcept { return d_; }
  double operator()(const PhaseSettings& phases) const;

 private:
  int d_;
  // folded_[block][s] = sum_{k+l = s mod d} eps_ab(k, l)
  std::array<std::vector<double>, 4> folded_;
};

struct CorrelationFunctions {
  double e11 = 0.0;
  double e12 = 0.0;
  double e21 = 0.0;
  double e22 = 0.0;

  double chsh_combination() const { return e11 + e12 + e21 - e22; }
};

/// E_ab = sum_{k,l} (-1)^{k+l} P_ab(k,l). For even d the combination
/// E11 + E12 + E21 - E22 is the alternating-binning Bell value.
CorrelationFunctions correlation_functions(int d, const PhaseSettings& phases);

}  // namespace binbell
