#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace binbell::cv {

/// Truncated two-mode squeezed state with Pegg-Barnett phase-parity
/// measurement angles theta, theta' (Alice) and phi, phi' (Bob).
struct CvScenario {
  int s = 1;       ///< cutoff, odd
  double r = 1.0;  ///< squeezing, > 0
  double theta = 0.0;
  double theta_p = 0.0;
  double phi = 0.0;
  double phi_p = 0.0;

  /// theta = 0, theta' = pi/(s+1), phi = -pi/(2s+2), phi' = pi/(2s+2).
  static CvScenario with_reference_angles(int s, double r);

  /// Throws std::invalid_argument for even or negative s, or r not finite
  /// and positive.
  void validate() const;
};

/// sech r / sqrt(1 - tanh^{2s+2} r) tanh^n r, n = 0..s.
class TruncatedTmss {
 public:
  TruncatedTmss(int s, double r);

  int cutoff() const noexcept { return s_; }
  double squeezing() const noexcept { return r_; }
  const std::vector<double>& amplitudes() const noexcept { return amplitudes_; }

 private:
  int s_;
  double r_;
  std::vector<double> amplitudes_;
};

/// log(tanh r) without cancellation for large r.
double log_tanh(double r);

/// (s+1)^{-1/2} sum_n exp(i n theta_k) |n>, theta_k = theta + 2 pi k/(s+1).
Eigen::VectorXcd phase_state(int s, double theta, int k);

/// sum_k (-1)^k |theta,k><theta,k| in the (s+1)-dimensional number basis.
Eigen::MatrixXcd phase_parity_operator(int s, double theta);

/// <psi| A x B |psi> for psi = sum_n c_n |n,n>, contracted through the
/// Schmidt form: sum_{m,n} c_m c_n A_mn B_mn.
double schmidt_correlation(const std::vector<double>& amplitudes, const Eigen::MatrixXcd& a,
                           const Eigen::MatrixXcd& b);

/// E(theta,phi) + E(theta,phi') + E(theta',phi) - E(theta',phi') with
/// E = Pi(.) x Pi(.) on the truncated state.
double cv_bell_expectation(const CvScenario& scenario);

/// 4 sqrt(2) tanh^{(s+1)/2} r / (1 + tanh^{s+1} r).
double closed_form_bell_value(int s, double r);

struct ViolationThreshold {
  int s = 1;
  double delta = 0.0;
  double f_value = 0.0;
  double r_min = 0.0;
};

/// Upper end of the admissible deficit range: 2 sqrt(2) - 2.
double max_violation_deficit();

/// Squeezing above which the value reaches 2 sqrt(2) - delta:
/// r_min = atanh f with
/// f = [(2 sqrt 2 - sqrt(4 sqrt 2 delta - delta^2)) / (2 sqrt 2 - delta)]^{2/(s+1)}.
/// Requires 0 < delta < 2 sqrt(2) - 2.
ViolationThreshold squeezing_threshold(int s, double delta);

/// Squeezing at which the value equals the local-realistic bound 2.
double violation_onset(int s);

/// Non-empty when the two phase settings of a party are closer than
/// `min_separation` radians (pi/(s+1) shrinks with the cutoff).
std::optional<std::string> angle_resolution_warning(int s, double min_separation = 0.05);

}  // namespace binbell::cv
