#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "binbell/binning.hpp"
#include "binbell/coefficients.hpp"
#include "binbell/qudit.hpp"

namespace binbell {

struct OperatorLimits {
  int max_d = 64;
};

class DimensionGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sum_{a,b,k,l} eps_ab(k,l) |a,k><a,k| x |b,l><b,l| as a dense d^2 x d^2
/// matrix in the product computational basis (index j_A * d + j_B).
class BellOperatorMatrix {
 public:
  BellOperatorMatrix(int d, Eigen::MatrixXcd matrix);

  int dim() const noexcept { return d_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

  /// max |B - B^dagger| entrywise.
  double hermiticity_defect() const;
  /// Largest eigenvalue magnitude from a dense Hermitian eigensolve.
  double spectral_norm() const;
  double largest_eigenvalue() const;
  /// <psi_max| B |psi_max> with psi_max = sum_j |jj> / sqrt(d).
  double max_entangled_expectation() const;

 private:
  int d_;
  Eigen::MatrixXcd matrix_;
};

BellOperatorMatrix build_bell_operator(const CoefficientTensor& coeffs, const PhaseSettings& phases,
                                       const OperatorLimits& limits = {});

/// max |B^2 - 4 I - [P1, P2] x [Q2, Q1]| entrywise, where P_a and Q_b are the
/// binned observables of `spec` and B is built from `coeffs`.
double operator_identity_residual(const BinningSpec& spec, const CoefficientTensor& coeffs,
                                  const PhaseSettings& phases, const OperatorLimits& limits = {});

/// Same, with B built from `spec` itself.
double verify_operator_identity(const BinningSpec& spec, const PhaseSettings& phases,
                                const OperatorLimits& limits = {});

Eigen::MatrixXcd kronecker(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace binbell
