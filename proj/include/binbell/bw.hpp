#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace binbell::bw {

using Complex = std::complex<double>;

/// Displacements of the two parity settings of each party, combined as
/// E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2).
struct DisplacementSettings {
  Complex alpha1;
  Complex alpha2;
  Complex beta1;
  Complex beta2;
};

class CutoffError : public std::runtime_error {
 public:
  CutoffError(int cutoff, int required, double r);
  int cutoff() const noexcept { return cutoff_; }
  int required() const noexcept { return required_; }

 private:
  int cutoff_;
  int required_;
};

/// Smallest Fock dimension N with tanh^{2N} r < tail (the untruncated
/// squeezed state's norm outside {|0>, ..., |N-1>}).
int required_fock_cutoff(double r, double tail = 1e-10);

/// <m| D(beta) |n> for m, n < dim, from a normalized Laguerre recurrence.
Eigen::MatrixXcd displacement_matrix(Complex beta, int dim);

/// D(alpha) (-1)^n D(alpha)^dagger = D(2 alpha) (-1)^n, truncated to dim.
Eigen::MatrixXcd displaced_parity(Complex alpha, int dim);

/// Untruncated squeezed-vacuum amplitudes sech r tanh^n r, n < dim.
std::vector<double> tmss_amplitudes(double r, int dim);

/// Evaluates displaced-parity Bell values for one squeezing.
class DisplacedParityTest {
 public:
  /// Throws CutoffError when the tail mass beyond `fock_cutoff` is >= 1e-10.
  DisplacedParityTest(double r, int fock_cutoff);

  double squeezing() const noexcept { return r_; }
  int fock_cutoff() const noexcept { return cutoff_; }

  double correlation(Complex alpha, Complex beta) const;
  double bell_value(const DisplacementSettings& settings) const;

 private:
  double r_;
  int cutoff_;
  std::vector<double> amplitudes_;
};

/// Correlation exp(-2 cosh(2r)(|a|^2 + |b|^2) + 4 sinh(2r) Re(ab)), the
/// phase-space closed form for the squeezed vacuum.
double wigner_correlation(double r, Complex alpha, Complex beta);

struct BwSearchOptions {
  bool complex_displacements = false;
  int grid_points = 7;  ///< per displacement component
  int refine_top = 4;
  int random_restarts = 4;
  double tolerance = 1e-9;
  int max_iterations = 4000;
  std::uint64_t seed = 0x5eed;
};

struct BwResult {
  double r = 0.0;
  double value = 0.0;
  DisplacementSettings settings;
  /// Largest value seen at any evaluated point (grid and refinement).
  double max_sampled = 0.0;
  int evaluations = 0;
};

/// Best-found Bell value over displacements at fixed squeezing.
BwResult bw_displaced_parity_max(int fock_cutoff, double r, const BwSearchOptions& options = {});

/// bw_displaced_parity_max at each r (with an adaptive cutoff); the
/// returned entry holds the best point and max_sampled over all r.
struct BwScan {
  std::vector<BwResult> per_r;
  BwResult best;
};
BwScan bw_scan(const std::vector<double>& r_values, const BwSearchOptions& options = {});

}  // namespace binbell::bw
