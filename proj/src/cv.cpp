#include "binbell/cv.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace binbell::cv {
namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

void check_cutoff(int s) {
  if (s < 1 || s % 2 == 0) {
    throw std::invalid_argument("cutoff s must be a positive odd integer, got " +
                                std::to_string(s));
  }
}

void check_squeezing(double r) {
  if (!std::isfinite(r) || r <= 0.0) {
    throw std::invalid_argument("squeezing r must be finite and positive");
  }
}

ViolationThreshold threshold_for_deficit(int s, double delta) {
  const double target = 2.0 * sqrt2 - delta;
  const double base = (2.0 * sqrt2 - std::sqrt(4.0 * sqrt2 * delta - delta * delta)) / target;
  ViolationThreshold out;
  out.s = s;
  out.delta = delta;
  out.f_value = std::pow(base, 2.0 / (s + 1));
  out.r_min = 0.5 * std::log((1.0 + out.f_value) / (1.0 - out.f_value));
  return out;
}

}  // namespace

CvScenario CvScenario::with_reference_angles(int s, double r) {
  const double n = s + 1;
  return {s, r, 0.0, pi / n, -pi / (2.0 * n), pi / (2.0 * n)};
}

void CvScenario::validate() const {
  check_cutoff(s);
  check_squeezing(r);
}

double log_tanh(double r) {
  if (r < 0.5) return std::log(std::tanh(r));
  const double e = std::exp(-2.0 * r);
  return std::log1p(-e) - std::log1p(e);
}

TruncatedTmss::TruncatedTmss(int s, double r) : s_(s), r_(r) {
  check_cutoff(s);
  check_squeezing(r);
  const double lt = log_tanh(r);
  const double tail = -std::expm1(2.0 * (s + 1) * lt);  // 1 - tanh^{2s+2} r
  const double norm = 1.0 / (std::cosh(r) * std::sqrt(tail));
  amplitudes_.resize(s + 1);
  for (int n = 0; n <= s; ++n) amplitudes_[n] = norm * std::exp(n * lt);
}

Eigen::VectorXcd phase_state(int s, double theta, int k) {
  if (s < 1) throw std::invalid_argument("cutoff s must be positive");
  if (k < 0 || k > s) throw std::out_of_range("phase index k must lie in {0..s}");
  const int n_states = s + 1;
  const double theta_k = theta + 2.0 * pi * k / n_states;
  const double amp = 1.0 / std::sqrt(static_cast<double>(n_states));
  Eigen::VectorXcd out(n_states);
  for (int n = 0; n < n_states; ++n) out(n) = std::polar(amp, n * theta_k);
  return out;
}

Eigen::MatrixXcd phase_parity_operator(int s, double theta) {
  const int n_states = s + 1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_states, n_states);
  for (int k = 0; k <= s; ++k) {
    const Eigen::VectorXcd v = phase_state(s, theta, k);
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    out.noalias() += sign * v * v.adjoint();
  }
  return out;
}

double schmidt_correlation(const std::vector<double>& c, const Eigen::MatrixXcd& a,
                           const Eigen::MatrixXcd& b) {
  const auto n = static_cast<Eigen::Index>(c.size());
  if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n) {
    throw std::invalid_argument("operators must match the Schmidt rank");
  }
  std::complex<double> total = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) total += c[m] * c[k] * a(m, k) * b(m, k);
  }
  return total.real();
}

double cv_bell_expectation(const CvScenario& scn) {
  scn.validate();
  const TruncatedTmss state(scn.s, scn.r);
  const auto a1 = phase_parity_operator(scn.s, scn.theta);
  const auto a2 = phase_parity_operator(scn.s, scn.theta_p);
  const auto b1 = phase_parity_operator(scn.s, scn.phi);
  const auto b2 = phase_parity_operator(scn.s, scn.phi_p);
  const auto& c = state.amplitudes();
  return schmidt_correlation(c, a1, b1) + schmidt_correlation(c, a1, b2) +
         schmidt_correlation(c, a2, b1) - schmidt_correlation(c, a2, b2);
}

double closed_form_bell_value(int s, double r) {
  check_cutoff(s);
  check_squeezing(r);
  const double u = std::exp(0.5 * (s + 1) * log_tanh(r));  // tanh^{(s+1)/2} r
  return 4.0 * sqrt2 * u / (1.0 + u * u);
}

double max_violation_deficit() { return 2.0 * sqrt2 - 2.0; }

ViolationThreshold squeezing_threshold(int s, double delta) {
  check_cutoff(s);
  if (!(delta > 0.0 && delta < max_violation_deficit())) {
    std::ostringstream msg;
    msg << "delta must lie in (0, 2*sqrt(2)-2) = (0, " << max_violation_deficit()
        << ") so the target exceeds the local-realistic bound; got " << delta;
    throw std::invalid_argument(msg.str());
  }
  return threshold_for_deficit(s, delta);
}

double violation_onset(int s) {
  check_cutoff(s);
  return threshold_for_deficit(s, max_violation_deficit()).r_min;
}

std::optional<std::string> angle_resolution_warning(int s, double min_separation) {
  const double separation = pi / (s + 1);
  if (separation >= min_separation) return std::nullopt;
  std::ostringstream msg;
  msg << "cutoff s=" << s << ": the two phase settings of each party differ by pi/(s+1) = "
      << separation << " rad; they become hard to distinguish experimentally";
  return msg.str();
}

}  // namespace binbell::cv
