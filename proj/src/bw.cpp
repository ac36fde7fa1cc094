#include "binbell/bw.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "binbell/cv.hpp"
#include "binbell/simplex.hpp"

namespace binbell::bw {
namespace {

constexpr double kTailMass = 1e-10;

DisplacementSettings unpack(std::span<const double> x, bool complex) {
  if (complex) {
    return {{x[0], x[1]}, {x[2], x[3]}, {x[4], x[5]}, {x[6], x[7]}};
  }
  return {{x[0], 0.0}, {x[1], 0.0}, {x[2], 0.0}, {x[3], 0.0}};
}

double tail_mass(double r, int dim) {
  if (r == 0.0) return 0.0;
  return std::exp(2.0 * dim * cv::log_tanh(r));
}

}  // namespace

CutoffError::CutoffError(int cutoff, int required, double r)
    : std::runtime_error("Fock cutoff " + std::to_string(cutoff) + " leaves tail mass >= 1e-10 at r=" +
                         std::to_string(r) + "; need at least " + std::to_string(required)),
      cutoff_(cutoff),
      required_(required) {}

int required_fock_cutoff(double r, double tail) {
  if (!std::isfinite(r) || r < 0.0) throw std::invalid_argument("squeezing must be >= 0");
  if (r == 0.0) return 1;
  const double lt = cv::log_tanh(r);
  return static_cast<int>(std::floor(std::log(tail) / (2.0 * lt))) + 1;
}

Eigen::MatrixXcd displacement_matrix(Complex beta, int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  const double x = std::norm(beta);
  if (x == 0.0) return Eigen::MatrixXcd::Identity(dim, dim);
  const Complex phase = beta / std::sqrt(x);
  const Complex upper_phase = -std::conj(phase);
  std::vector<double> root(2 * dim + 2);
  for (std::size_t i = 0; i < root.size(); ++i) root[i] = std::sqrt(static_cast<double>(i));

  Eigen::MatrixXcd out(dim, dim);
  Complex lower_k = 1.0;
  Complex upper_k = 1.0;
  for (int k = 0; k < dim; ++k) {
    // f_n = sqrt(n!/(n+k)!) x^{k/2} e^{-x/2} L_n^{(k)}(x)
    double prev = 0.0;
    double cur = std::exp(0.5 * k * std::log(x) - 0.5 * std::lgamma(k + 1.0) - 0.5 * x);
    for (int n = 0; n + k < dim; ++n) {
      out(n + k, n) = lower_k * cur;
      if (k > 0) out(n, n + k) = upper_k * cur;
      const double next =
          ((2.0 * n + k + 1.0 - x) * cur - root[n] * root[n + k] * prev) /
          (root[n + 1] * root[n + k + 1]);
      prev = cur;
      cur = next;
    }
    lower_k *= phase;
    upper_k *= upper_phase;
  }
  return out;
}

Eigen::MatrixXcd displaced_parity(Complex alpha, int dim) {
  Eigen::MatrixXcd out = displacement_matrix(2.0 * alpha, dim);
  for (int n = 1; n < dim; n += 2) out.col(n) *= -1.0;
  return out;
}

std::vector<double> tmss_amplitudes(double r, int dim) {
  if (!std::isfinite(r) || r < 0.0) throw std::invalid_argument("squeezing must be >= 0");
  std::vector<double> c(dim, 0.0);
  if (r == 0.0) {
    c[0] = 1.0;
    return c;
  }
  const double lt = cv::log_tanh(r);
  const double sech = 1.0 / std::cosh(r);
  for (int n = 0; n < dim; ++n) c[n] = sech * std::exp(n * lt);
  return c;
}

DisplacedParityTest::DisplacedParityTest(double r, int fock_cutoff) : r_(r), cutoff_(fock_cutoff) {
  if (fock_cutoff < 1) throw std::invalid_argument("Fock cutoff must be positive");
  if (tail_mass(r, fock_cutoff) >= kTailMass) {
    throw CutoffError(fock_cutoff, required_fock_cutoff(r, kTailMass), r);
  }
  amplitudes_ = tmss_amplitudes(r, fock_cutoff);
}

double DisplacedParityTest::correlation(Complex alpha, Complex beta) const {
  // (-1)^n factors of the two parities cancel in the Schmidt contraction.
  const Eigen::MatrixXcd da = displacement_matrix(2.0 * alpha, cutoff_);
  const Eigen::MatrixXcd db = displacement_matrix(2.0 * beta, cutoff_);
  Complex total = 0.0;
  for (int n = 0; n < cutoff_; ++n) {
    for (int m = 0; m < cutoff_; ++m) {
      total += amplitudes_[m] * amplitudes_[n] * da(m, n) * db(m, n);
    }
  }
  return total.real();
}

double DisplacedParityTest::bell_value(const DisplacementSettings& s) const {
  const Eigen::MatrixXcd a1 = displacement_matrix(2.0 * s.alpha1, cutoff_);
  const Eigen::MatrixXcd a2 = displacement_matrix(2.0 * s.alpha2, cutoff_);
  const Eigen::MatrixXcd b1 = displacement_matrix(2.0 * s.beta1, cutoff_);
  const Eigen::MatrixXcd b2 = displacement_matrix(2.0 * s.beta2, cutoff_);
  Complex total = 0.0;
  for (int n = 0; n < cutoff_; ++n) {
    for (int m = 0; m < cutoff_; ++m) {
      const double w = amplitudes_[m] * amplitudes_[n];
      total += w * (a1(m, n) * (b1(m, n) + b2(m, n)) + a2(m, n) * (b1(m, n) - b2(m, n)));
    }
  }
  return total.real();
}

double wigner_correlation(double r, Complex alpha, Complex beta) {
  return std::exp(-2.0 * std::cosh(2.0 * r) * (std::norm(alpha) + std::norm(beta)) +
                  4.0 * std::sinh(2.0 * r) * (alpha * beta).real());
}

BwResult bw_displaced_parity_max(int fock_cutoff, double r, const BwSearchOptions& options) {
  const DisplacedParityTest test(r, fock_cutoff);
  const bool complex = options.complex_displacements;
  const int n_params = complex ? 8 : 4;
  // Optimal displacements shrink like e^{-r}.
  const double half_width = std::exp(-r);

  BwResult result;
  result.r = r;
  result.value = -1e300;
  result.max_sampled = -1e300;
  std::vector<double> best_x;
  auto evaluate = [&](std::span<const double> x) {
    const double v = test.bell_value(unpack(x, complex));
    ++result.evaluations;
    result.max_sampled = std::max(result.max_sampled, v);
    if (v > result.value) {
      result.value = v;
      best_x.assign(x.begin(), x.end());
    }
    return v;
  };

  // Grid over the real parts; imaginary parts start at zero.
  struct Cell {
    std::vector<double> x;
    double value;
  };
  std::vector<Cell> top;
  const int g = options.grid_points;
  const auto keep = static_cast<std::size_t>(std::max(options.refine_top, 0));
  std::vector<int> idx(4, 0);
  std::vector<double> x(n_params, 0.0);
  auto coord = [&](int i) { return g == 1 ? 0.0 : -half_width + 2.0 * half_width * i / (g - 1); };
  const int total_cells = static_cast<int>(std::pow(g, 4));
  for (int cell = 0; cell < total_cells; ++cell) {
    int rem = cell;
    for (int p = 3; p >= 0; --p) {
      idx[p] = rem % g;
      rem /= g;
    }
    for (int p = 0; p < 4; ++p) x[complex ? 2 * p : p] = coord(idx[p]);
    const double v = evaluate(x);
    if (keep == 0) continue;
    if (top.size() < keep || v > top.back().value) {
      auto pos = std::upper_bound(top.begin(), top.end(), v,
                                  [](double val, const Cell& c) { return val > c.value; });
      top.insert(pos, {x, v});
      if (top.size() > keep) top.pop_back();
    }
  }

  std::vector<std::vector<double>> starts;
  for (const auto& c : top) starts.push_back(c.x);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-half_width, half_width);
  for (int i = 0; i < options.random_restarts; ++i) {
    std::vector<double> s(n_params);
    for (auto& v : s) v = uniform(rng);
    starts.push_back(std::move(s));
  }

  SimplexOptions simplex;
  simplex.initial_step = g > 1 ? 2.0 * half_width / (g - 1) : half_width;
  simplex.size_tolerance = options.tolerance;
  simplex.max_iterations = options.max_iterations;
  for (const auto& start : starts) {
    minimize_simplex([&](std::span<const double> p) { return -evaluate(p); }, start, simplex);
  }
  result.settings = unpack(best_x, complex);
  return result;
}

BwScan bw_scan(const std::vector<double>& r_values, const BwSearchOptions& options) {
  if (r_values.empty()) throw std::invalid_argument("need at least one squeezing value");
  BwScan scan;
  scan.best.value = -1e300;
  scan.best.max_sampled = -1e300;
  for (double r : r_values) {
    auto res = bw_displaced_parity_max(required_fock_cutoff(r, kTailMass), r, options);
    const double sampled = std::max(scan.best.max_sampled, res.max_sampled);
    if (res.value > scan.best.value) scan.best = res;
    scan.best.max_sampled = sampled;
    scan.per_r.push_back(std::move(res));
  }
  return scan;
}

}  // namespace binbell::bw
