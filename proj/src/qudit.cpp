#include "binbell/qudit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace binbell {
namespace {

using std::numbers::pi;

void check_setting(int s) {
  if (s != 1 && s != 2) throw std::out_of_range("setting must be 1 or 2");
}

double reduce_mod(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

// amplitudes(k, l) = (<k| x <l|) psi_max for the two bases.
Eigen::MatrixXcd amplitude_matrix(const MeasurementBasis& alice, const MeasurementBasis& bob) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(alice.dim()));
  return scale * (alice.vectors().adjoint() * bob.vectors().conjugate());
}

Eigen::MatrixXd probability_matrix(int d, double alpha, double beta) {
  return amplitude_matrix(MeasurementBasis(d, alpha), MeasurementBasis(d, beta))
      .cwiseAbs2();
}

}  // namespace

double PhaseSettings::alice(int setting) const {
  check_setting(setting);
  return setting == 1 ? alpha1 : alpha2;
}

double PhaseSettings::bob(int setting) const {
  check_setting(setting);
  return setting == 1 ? beta1 : beta2;
}

PhaseSettings PhaseSettings::reduced(int d) const {
  const double p = d;
  return {reduce_mod(alpha1, p), reduce_mod(alpha2, p), reduce_mod(beta1, p),
          reduce_mod(beta2, p)};
}

PhaseSettings optimal_t1_phases() { return {0.0, 0.5, -0.25, 0.25}; }

MeasurementBasis::MeasurementBasis(int d, double offset)
    : d_(d), offset_(offset), vectors_(d, d) {
  if (d < 2) throw std::invalid_argument("measurement basis needs d >= 2");
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      // Reduce the exponent's integer part mod d before scaling by 2 pi / d.
      const double turns = std::fmod((k + offset) * j, static_cast<double>(d)) / d;
      vectors_(j, k) = std::polar(norm, 2.0 * pi * turns);
    }
  }
}

Eigen::MatrixXcd MeasurementBasis::binned_observable(const std::vector<int>& signs) const {
  if (static_cast<int>(signs.size()) != d_) {
    throw std::invalid_argument("binning sign vector must have d entries");
  }
  Eigen::VectorXcd diag(d_);
  for (int k = 0; k < d_; ++k) diag(k) = static_cast<double>(signs[k]);
  return vectors_ * diag.asDiagonal() * vectors_.adjoint();
}

double joint_probability(int d, const PhaseSettings& phases, int a, int b, int k, int l) {
  if (d < 2) throw std::invalid_argument("joint probability needs d >= 2");
  if (k < 0 || k >= d || l < 0 || l >= d) throw std::out_of_range("outcome out of range");
  const MeasurementBasis alice(d, phases.alice(a));
  const MeasurementBasis bob(d, phases.bob(b));
  std::complex<double> amp = 0.0;
  for (int j = 0; j < d; ++j) {
    amp += std::conj(alice.vectors()(j, k) * bob.vectors()(j, l));
  }
  amp /= std::sqrt(static_cast<double>(d));
  return std::norm(amp);
}

double fourier_kernel(int d, double x) {
  const double dd = d;
  const double y = std::remainder(x, dd);
  if (std::abs(y) < 1e-7) {
    // sin(pi y) / (d sin(pi y / d)) = 1 - (pi y)^2 (1 - 1/d^2) / 6 + O(y^4)
    const double ratio = 1.0 - (pi * y) * (pi * y) * (1.0 - 1.0 / (dd * dd)) / 6.0;
    return ratio * ratio / dd;
  }
  const double num = std::sin(pi * y);
  const double den = std::sin(pi * y / dd);
  return num * num / (dd * dd * dd * den * den);
}

double printed_single_sine_term(int d, double x) {
  const double dd = d;
  return 1.0 / (2.0 * dd * dd * dd * std::sin(pi * x / dd));
}

double bell_expectation(const CoefficientTensor& coeffs, const PhaseSettings& phases) {
  const int d = coeffs.dim();
  double total = 0.0;
  for (int a = 1; a <= 2; ++a) {
    for (int b = 1; b <= 2; ++b) {
      const Eigen::MatrixXd prob = probability_matrix(d, phases.alice(a), phases.bob(b));
      const auto block = coeffs.block(a, b);
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) total += block[k * d + l] * prob(k, l);
      }
    }
  }
  return total;
}

double t1_cosine_form(const PhaseSettings& p) {
  return std::cos(pi * (p.alpha1 + p.beta1)) + std::cos(pi * (p.alpha1 + p.beta2)) +
         std::cos(pi * (p.alpha2 + p.beta1)) - std::cos(pi * (p.alpha2 + p.beta2));
}

BellFunctionProfile::BellFunctionProfile(const CoefficientTensor& coeffs) : d_(coeffs.dim()) {
  int index = 0;
  for (int a = 1; a <= 2; ++a) {
    for (int b = 1; b <= 2; ++b, ++index) {
      auto& folded = folded_[index];
      folded.assign(d_, 0.0);
      const auto block = coeffs.block(a, b);
      for (int k = 0; k < d_; ++k) {
        for (int l = 0; l < d_; ++l) folded[(k + l) % d_] += block[k * d_ + l];
      }
    }
  }
}

double BellFunctionProfile::operator()(const PhaseSettings& phases) const {
  double total = 0.0;
  int index = 0;
  for (int a = 1; a <= 2; ++a) {
    for (int b = 1; b <= 2; ++b, ++index) {
      const double shift = phases.alice(a) + phases.bob(b);
      const auto& folded = folded_[index];
      for (int s = 0; s < d_; ++s) {
        if (folded[s] != 0.0) total += folded[s] * fourier_kernel(d_, s + shift);
      }
    }
  }
  return total;
}

CorrelationFunctions correlation_functions(int d, const PhaseSettings& phases) {
  auto parity_sum = [d](const Eigen::MatrixXd& prob) {
    double e = 0.0;
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l) e += ((k + l) % 2 == 0 ? 1.0 : -1.0) * prob(k, l);
    }
    return e;
  };
  return {parity_sum(probability_matrix(d, phases.alpha1, phases.beta1)),
          parity_sum(probability_matrix(d, phases.alpha1, phases.beta2)),
          parity_sum(probability_matrix(d, phases.alpha2, phases.beta1)),
          parity_sum(probability_matrix(d, phases.alpha2, phases.beta2))};
}

}  // namespace binbell
