#include "binbell/bell_operator.hpp"

#include <Eigen/Eigenvalues>
#include <string>

namespace binbell {
namespace {

void check_guard(int d, const OperatorLimits& limits) {
  if (d > limits.max_d) {
    throw DimensionGuardError("d=" + std::to_string(d) + " exceeds the dense operator guard " +
                              std::to_string(limits.max_d));
  }
}

std::vector<int> signs_of(const BinningSpec& spec, bool alice, int setting) {
  std::vector<int> signs(spec.dim());
  for (int k = 0; k < spec.dim(); ++k) {
    signs[k] = alice ? spec.zeta_alice(setting, k) : spec.zeta_bob(setting, k);
  }
  return signs;
}

}  // namespace

Eigen::MatrixXcd kronecker(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

BellOperatorMatrix::BellOperatorMatrix(int d, Eigen::MatrixXcd matrix)
    : d_(d), matrix_(std::move(matrix)) {
  if (matrix_.rows() != d * d || matrix_.cols() != d * d) {
    throw std::invalid_argument("Bell operator must be d^2 x d^2");
  }
}

double BellOperatorMatrix::hermiticity_defect() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double BellOperatorMatrix::spectral_norm() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double BellOperatorMatrix::largest_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double BellOperatorMatrix::max_entangled_expectation() const {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d_ * d_);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d_));
  for (int j = 0; j < d_; ++j) psi(j * d_ + j) = amp;
  return psi.dot(matrix_ * psi).real();
}

BellOperatorMatrix build_bell_operator(const CoefficientTensor& coeffs, const PhaseSettings& phases,
                                       const OperatorLimits& limits) {
  const int d = coeffs.dim();
  check_guard(d, limits);
  const int n = d * d;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 1; a <= 2; ++a) {
    const MeasurementBasis alice(d, phases.alice(a));
    for (int b = 1; b <= 2; ++b) {
      const MeasurementBasis bob(d, phases.bob(b));
      const auto block = coeffs.block(a, b);
      // sum_{k,l} eps(k,l) |u_k u_l'><u_k u_l'| = W diag(eps) W^dagger with
      // W the product basis (column k*d + l).
      const Eigen::MatrixXcd product = kronecker(alice.vectors(), bob.vectors());
      Eigen::VectorXcd weights(n);
      for (int i = 0; i < n; ++i) weights(i) = block[i];
      total += product * weights.asDiagonal() * product.adjoint();
    }
  }
  return BellOperatorMatrix(d, std::move(total));
}

double operator_identity_residual(const BinningSpec& spec, const CoefficientTensor& coeffs,
                                  const PhaseSettings& phases, const OperatorLimits& limits) {
  const int d = spec.dim();
  if (coeffs.dim() != d) throw std::invalid_argument("tensor and binning dimensions differ");
  check_guard(d, limits);
  const auto bell = build_bell_operator(coeffs, phases, limits);
  const Eigen::MatrixXcd p1 =
      MeasurementBasis(d, phases.alpha1).binned_observable(signs_of(spec, true, 1));
  const Eigen::MatrixXcd p2 =
      MeasurementBasis(d, phases.alpha2).binned_observable(signs_of(spec, true, 2));
  const Eigen::MatrixXcd q1 =
      MeasurementBasis(d, phases.beta1).binned_observable(signs_of(spec, false, 1));
  const Eigen::MatrixXcd q2 =
      MeasurementBasis(d, phases.beta2).binned_observable(signs_of(spec, false, 2));
  const Eigen::MatrixXcd comm_p = p1 * p2 - p2 * p1;
  const Eigen::MatrixXcd comm_q = q2 * q1 - q1 * q2;
  const Eigen::MatrixXcd& b = bell.matrix();
  const Eigen::MatrixXcd residual =
      b * b - 4.0 * Eigen::MatrixXcd::Identity(d * d, d * d) - kronecker(comm_p, comm_q);
  return residual.cwiseAbs().maxCoeff();
}

double verify_operator_identity(const BinningSpec& spec, const PhaseSettings& phases,
                                const OperatorLimits& limits) {
  return operator_identity_residual(spec, build_coefficients(spec), phases, limits);
}

}  // namespace binbell
