#include <doctest.h>

#include <stdexcept>

#include "binbell/binning.hpp"
#include "binbell/coefficients.hpp"
#include "oracles.hpp"

using namespace binbell;

TEST_CASE("binning validation") {
  CHECK_THROWS_AS(BinningSpec(1, {0}, {0}, {0}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(BinningSpec(3, {3}, {0}, {0}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(BinningSpec(3, {1, 1}, {0}, {0}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(BinningSpec(2, {0, 1}, {0}, {0}, {0}), std::invalid_argument);
  const BinningSpec spec(4, {2, 0}, {}, {1}, {3});
  CHECK(spec.subset(BinningSpec::kR1) == std::vector<int>{0, 2});
  CHECK(spec.has_empty_subset());
  CHECK(spec.zeta_alice(1, 2) == 1);
  CHECK(spec.zeta_alice(2, 2) == -1);
  CHECK(spec.zeta_bob(2, 3) == 1);
}

TEST_CASE("preset parsing and validity") {
  CHECK(parse_preset("t2") == Preset::kT2);
  CHECK(parse_preset("T3") == Preset::kT3);
  CHECK_THROWS_AS(parse_preset("t4"), std::invalid_argument);
  CHECK_THROWS_AS(preset_binning(Preset::kT2, 2), std::invalid_argument);
  const auto t1 = preset_binning(Preset::kT1, 8);
  CHECK(t1.subset(BinningSpec::kS2) == std::vector<int>{0, 2, 4, 6});
  const auto t2 = preset_binning(Preset::kT2, 8);
  CHECK(t2.subset(BinningSpec::kR1) == std::vector<int>{0, 1, 4, 5});
}

TEST_CASE("coefficients at d=2 with subsets {0}") {
  const auto c = build_coefficients(BinningSpec(2, {0}, {0}, {0}, {0}));
  CHECK(c(1, 1, 0, 0) == 1.0);
  CHECK(c(1, 1, 0, 1) == -1.0);
  CHECK(c(2, 2, 0, 0) == -1.0);
  CHECK(c.is_sign_valued());
}

TEST_CASE("T1 checkerboard and T2 two-by-two blocks at d=8") {
  const auto t1 = build_coefficients(preset_binning(Preset::kT1, 8));
  const auto t2 = build_coefficients(preset_binning(Preset::kT2, 8));
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int k = 0; k < 8; ++k)
        for (int l = 0; l < 7; ++l) {
          CHECK(t1(a, b, k, l + 1) == -t1(a, b, k, l));
          CHECK(t1(a, b, l + 1, k) == -t1(a, b, l, k));
          const bool flip = (l % 2) == 1;
          CHECK((t2(a, b, k, l + 1) == -t2(a, b, k, l)) == flip);
        }
}

TEST_CASE("coefficients match the subset oracle") {
  const BinningSpec spec(5, {0, 3}, {1}, {2, 3, 4}, {4});
  const oracle::Tensor ref{5, {0, 3}, {1}, {2, 3, 4}, {4}};
  const auto c = build_coefficients(spec);
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int k = 0; k < 5; ++k)
        for (int l = 0; l < 5; ++l) CHECK(c(a, b, k, l) == ref.eps(a, b, k, l));
  const auto flipped = c.with_negated_block(2, 2);
  CHECK(flipped(2, 2, 1, 4) == -c(2, 2, 1, 4));
  CHECK(flipped(1, 2, 1, 4) == c(1, 2, 1, 4));
}

TEST_CASE("relabeling permutes members") {
  const BinningSpec spec(3, {0}, {1}, {2}, {0, 1});
  const auto moved = spec.relabeled({2, 0, 1});
  CHECK(moved.subset(BinningSpec::kR1) == std::vector<int>{2});
  CHECK(moved.subset(BinningSpec::kS2) == std::vector<int>{0, 2});
}
