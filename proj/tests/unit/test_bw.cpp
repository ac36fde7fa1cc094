#include <doctest.h>

#include <cmath>
#include <random>

#include "binbell/bw.hpp"

using namespace binbell::bw;

TEST_CASE("displacement matrices are unitary on the low-photon block") {
  const int dim = 120;
  for (Complex beta : {Complex{0.3, 0.0}, Complex{-1.1, 0.7}, Complex{0.0, 2.5}}) {
    const auto d = displacement_matrix(beta, dim);
    const Eigen::MatrixXcd gram = d.adjoint() * d;
    // Truncation only spoils columns near the cutoff.
    const int block = 40;
    CHECK((gram.topLeftCorner(block, block) - Eigen::MatrixXcd::Identity(block, block))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    CHECK(std::abs(d(0, 0) - std::exp(-0.5 * std::norm(beta))) < 1e-14);
    CHECK(std::abs(d(1, 0) - beta * std::exp(-0.5 * std::norm(beta))) < 1e-14);
  }
}

TEST_CASE("displaced parity correlation matches the Wigner closed form") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (double r : {0.0, 0.4, 1.0}) {
    // Tighter tail than the default so only the matrix elements are under test.
    const DisplacedParityTest test(r, required_fock_cutoff(r, 1e-24));
    for (int t = 0; t < 6; ++t) {
      const Complex a{u(rng), u(rng)};
      const Complex b{u(rng), u(rng)};
      CHECK(std::abs(test.correlation(a, b) - wigner_correlation(r, a, b)) < 1e-9);
    }
  }
}

TEST_CASE("default cutoff keeps the truncation error small") {
  const double r = 1.0;
  const DisplacedParityTest test(r, required_fock_cutoff(r));
  // The state error is of order sqrt(tail mass) = 1e-5 at worst.
  CHECK(std::abs(test.correlation({0.2, 0.1}, {0.3, -0.1}) -
                 wigner_correlation(r, {0.2, 0.1}, {0.3, -0.1})) < 1e-5);
}

TEST_CASE("vacuum gives the product value 2") {
  const DisplacedParityTest test(0.0, 1);
  CHECK(test.bell_value({}) == doctest::Approx(2.0));
  const auto res = bw_displaced_parity_max(required_fock_cutoff(0.0), 0.0);
  CHECK(res.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("correlations are bounded") {
  const DisplacedParityTest test(0.8, required_fock_cutoff(0.8));
  for (double x : {-1.0, -0.2, 0.0, 0.5}) {
    CHECK(std::abs(test.correlation({x, 0.1}, {0.3, -x})) <= 1.0 + 1e-12);
  }
}

TEST_CASE("cutoff too small is rejected") {
  CHECK(required_fock_cutoff(2.0) > 300);
  CHECK_THROWS_AS(DisplacedParityTest(2.0, 50), CutoffError);
  try {
    DisplacedParityTest(1.0, 10);
  } catch (const CutoffError& e) {
    CHECK(e.required() == required_fock_cutoff(1.0));
  }
}

TEST_CASE("moderate squeezing violates the local bound") {
  const auto res = bw_displaced_parity_max(required_fock_cutoff(1.0), 1.0);
  CHECK(res.value > 2.2);
  CHECK(res.value < 2.33);
  const DisplacedParityTest test(1.0, required_fock_cutoff(1.0));
  CHECK(test.bell_value(res.settings) == doctest::Approx(res.value).epsilon(1e-12));
}
