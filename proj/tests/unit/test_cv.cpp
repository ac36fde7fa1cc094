#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "binbell/bell_operator.hpp"
#include "binbell/cv.hpp"

using namespace binbell;
using namespace binbell::cv;

namespace {

constexpr double kTwoSqrt2 = 2.0 * std::numbers::sqrt2;

// <psi| A (x) B |psi> with the full (s+1)^2 state vector.
double dense_correlation(int s, double r, const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const int n = s + 1;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n * n);
  const double t = std::tanh(r);
  double norm = 0.0;
  for (int k = 0; k < n; ++k) norm += std::pow(t, 2 * k);
  for (int k = 0; k < n; ++k) psi(k * n + k) = std::pow(t, k) / std::sqrt(norm);
  return (psi.adjoint() * kronecker(a, b) * psi)(0, 0).real();
}

}  // namespace

TEST_CASE("phase states") {
  const auto v0 = phase_state(1, 0.0, 0);
  const auto v1 = phase_state(1, 0.0, 1);
  const double h = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(v0(0) - h) < 1e-15);
  CHECK(std::abs(v0(1) - h) < 1e-15);
  CHECK(std::abs(v1(1) + h) < 1e-15);
  CHECK(std::abs(v0.dot(v1)) < 1e-15);
  for (double theta : {0.0, 0.37, 2.1}) {
    Eigen::MatrixXcd basis(4, 4);
    for (int k = 0; k < 4; ++k) basis.col(k) = phase_state(3, theta, k);
    CHECK((basis.adjoint() * basis - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-12);
  }
  CHECK_THROWS_AS(phase_state(3, 0.0, 4), std::out_of_range);
}

TEST_CASE("phase parity squares to identity") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  for (int s : {1, 7, 33, 99}) {
    const auto p = phase_parity_operator(s, angle(rng));
    const auto id = Eigen::MatrixXcd::Identity(s + 1, s + 1);
    CHECK((p * p - id).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("truncated TMSS normalization") {
  for (int s = 1; s <= 99; s += 14) {
    for (double r : {0.01, 0.5, 2.0, 10.0}) {
      const TruncatedTmss state(s, r);
      double sum = 0.0;
      for (double c : state.amplitudes()) sum += c * c;
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
  }
  CHECK_THROWS_AS(TruncatedTmss(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedTmss(3, 0.0), std::invalid_argument);
}

TEST_CASE("Schmidt contraction equals the dense product-space expectation") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int s : {1, 3, 9}) {
    for (double r : {0.3, 1.2}) {
      const auto a = phase_parity_operator(s, angle(rng));
      const auto b = phase_parity_operator(s, angle(rng));
      const double fast = schmidt_correlation(TruncatedTmss(s, r).amplitudes(), a, b);
      CHECK(std::abs(fast - dense_correlation(s, r, a, b)) < 1e-12);
    }
  }
}

TEST_CASE("closed form agrees with the contraction") {
  for (int s : {1, 9, 99}) {
    for (int i = 1; i <= 50; ++i) {
      const double r = 0.1 * i;
      const double contracted = cv_bell_expectation(CvScenario::with_reference_angles(s, r));
      CHECK(std::abs(contracted - closed_form_bell_value(s, r)) < 1e-10);
    }
  }
  const double t = std::tanh(2.0);
  CHECK(closed_form_bell_value(9, 2.0) ==
        doctest::Approx(4.0 * std::numbers::sqrt2 * std::pow(t, 5) / (1.0 + std::pow(t, 10)))
            .epsilon(1e-13));
  CHECK(closed_form_bell_value(1, std::atanh(1.0 / std::numbers::sqrt2)) ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-13));
  CHECK(closed_form_bell_value(99, 0.1) ==
        doctest::Approx(4.0 * std::numbers::sqrt2 * std::pow(std::tanh(0.1), 50)).epsilon(1e-10));
  CHECK(std::abs(closed_form_bell_value(5, 40.0) - kTwoSqrt2) < 1e-12);
}

TEST_CASE("closed form increases with squeezing") {
  for (int s : {1, 9, 99}) {
    double prev = closed_form_bell_value(s, 0.01);
    for (int i = 2; i <= 800; ++i) {
      const double v = closed_form_bell_value(s, 0.01 * i);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("large squeezing approaches the even-dimension qudit value") {
  for (int s : {1, 3, 7}) {
    CHECK(std::abs(cv_bell_expectation(CvScenario::with_reference_angles(s, 10.0)) - kTwoSqrt2) <
          1e-6);
  }
}

TEST_CASE("squeezing thresholds") {
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    double prev = 0.0;
    for (int s = 1; s <= 99; s += 2) {
      const auto th = squeezing_threshold(s, delta);
      CHECK(std::abs(closed_form_bell_value(s, th.r_min) - (kTwoSqrt2 - delta)) < 1e-9);
      CHECK(th.r_min > prev);
      prev = th.r_min;
    }
  }
  CHECK(std::abs(closed_form_bell_value(9, violation_onset(9)) - 2.0) < 1e-12);
  CHECK_THROWS_AS(squeezing_threshold(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(squeezing_threshold(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(squeezing_threshold(4, 0.01), std::invalid_argument);
}

TEST_CASE("angle warning only for large cutoffs") {
  CHECK_FALSE(angle_resolution_warning(9).has_value());
  CHECK(angle_resolution_warning(99).has_value());
}
