#include <doctest.h>

#include <random>
#include <set>

#include "binbell/certify.hpp"
#include "binbell/coefficients.hpp"
#include "binbell/exact_rank.hpp"
#include "binbell/lr_polytope.hpp"
#include "oracles.hpp"

using namespace binbell;

namespace {

oracle::Tensor as_oracle(const BinningSpec& spec) {
  return {spec.dim(), spec.subset(BinningSpec::kR1), spec.subset(BinningSpec::kR2),
          spec.subset(BinningSpec::kS1), spec.subset(BinningSpec::kS2)};
}

}  // namespace

TEST_CASE("deterministic values at d=2 T1") {
  const auto c = build_coefficients(preset_binning(Preset::kT1, 2));
  CHECK(deterministic_value(c, {0, 0, 0, 0}) == 2.0);
  // 1 - 1 - 1 + (-1)(-1)(-1): the flipped (2,2) term is negative here too.
  CHECK(deterministic_value(c, {0, 1, 0, 1}) == -2.0);
  CHECK(deterministic_value(c, {0, 1, 0, 1}) ==
        oracle::Tensor{2, {0}, {0}, {0}, {0}}.value(0, 1, 0, 1));
  CHECK_THROWS_AS(deterministic_value(c, {0, 2, 0, 0}), std::out_of_range);
}

TEST_CASE("CHSH local bound and maximizer count") {
  const auto c = build_coefficients(preset_binning(Preset::kT1, 2));
  CHECK(lr_max(c) == 2.0);
  CHECK(count_max_configs(c) == 8);
  std::vector<double> ones(16, 1.0);
  CHECK(lr_max(CoefficientTensor(2, ones)) == 4.0);
}

TEST_CASE("counted maximizers follow the closed form") {
  CHECK(m_formula(BinningSpec(3, {0}, {0}, {0}, {0})) == 45);
  CHECK(count_max_configs(build_coefficients(BinningSpec(3, {0}, {0}, {0}, {0}))) == 45);
  CHECK(m_formula(preset_binning(Preset::kT1, 4)) == 128);
  CHECK(m_formula(preset_binning(Preset::kT1, 8)) == 2048);
  CHECK(m_formula(BinningSpec(3, {}, {}, {}, {})) == 81);
  CHECK(facet_threshold(8) == 224);
}

TEST_CASE("enumeration agrees with a brute-force oracle, empty subsets included") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + trial % 4;
    std::vector<std::vector<int>> subsets(4);
    for (auto& s : subsets)
      for (int k = 0; k < d; ++k)
        if (rng() % 2 && static_cast<int>(s.size()) < d - 1) s.push_back(k);
    const BinningSpec spec(d, subsets[0], subsets[1], subsets[2], subsets[3]);
    const auto ref = oracle::brute_force(as_oracle(spec));
    const auto c = build_coefficients(spec);
    CHECK(lr_max(c) == ref.max);
    CHECK(count_max_configs(c) == ref.count);
    CHECK(m_formula(spec) == ref.count);
    CHECK(ref.max == 2);
  }
}

TEST_CASE("an empty subset can drop the count below the threshold") {
  const BinningSpec spec(2, {0}, {}, {0}, {});
  CHECK(count_max_configs(build_coefficients(spec)) == m_formula(spec));
  CHECK(m_formula(spec) == 4);
  CHECK(m_formula(spec) < facet_threshold(2));
}

TEST_CASE("deterministic values take values in {-2, 2}") {
  const auto c = build_coefficients(BinningSpec(4, {0, 3}, {1}, {1, 2}, {2}));
  for (int k1 = 0; k1 < 4; ++k1)
    for (int k2 = 0; k2 < 4; ++k2)
      for (int l1 = 0; l1 < 4; ++l1)
        for (int l2 = 0; l2 < 4; ++l2) {
          const double v = deterministic_value(c, {k1, k2, l1, l2});
          CHECK((v == 2.0 || v == -2.0));
        }
}

TEST_CASE("extremal vectors are injective with one entry per block") {
  for (int d = 2; d <= 4; ++d) {
    std::set<std::vector<std::int64_t>> seen;
    for (int k1 = 0; k1 < d; ++k1)
      for (int k2 = 0; k2 < d; ++k2)
        for (int l1 = 0; l1 < d; ++l1)
          for (int l2 = 0; l2 < d; ++l2) {
            const auto v = ExtremalVector(d, {k1, k2, l1, l2}).dense();
            for (int block = 0; block < 4; ++block) {
              int ones = 0;
              for (int i = 0; i < d * d; ++i) ones += static_cast<int>(v[block * d * d + i]);
              CHECK(ones == 1);
            }
            seen.insert(v);
          }
    CHECK(seen.size() == static_cast<std::size_t>(d * d * d * d));
  }
}

TEST_CASE("tightness reports") {
  const auto r2 = tightness_certificate(preset_binning(Preset::kT1, 2));
  CHECK(r2.m_counted == 8);
  CHECK(r2.threshold == 8);
  CHECK(r2.linear_rank == 8);
  CHECK(r2.affine_rank == 8);
  CHECK(r2.is_tight_by_count);

  const auto r4 = tightness_certificate(preset_binning(Preset::kT1, 4));
  CHECK(r4.m_counted == 128);
  CHECK(r4.threshold == 48);
  CHECK(r4.linear_rank >= 48);

  const auto mixed = tightness_certificate(BinningSpec(2, {0}, {0}, {0}, {1}));
  CHECK(mixed.m_counted == mixed.m_formula);

  CHECK_THROWS_AS(tightness_certificate(preset_binning(Preset::kT1, 34)), EnumerationLimitError);
}

TEST_CASE("rank is invariant under outcome relabeling") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = certify::random_nonempty_binning(rng, 3);
    const auto a = tightness_certificate(spec);
    const auto b = tightness_certificate(spec.relabeled({1, 2, 0}));
    CHECK(a.linear_rank == b.linear_rank);
    CHECK(a.affine_rank == b.affine_rank);
  }
}

TEST_CASE("exact rank on small integer matrices") {
  CHECK(exact_rank({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}) == 2);
  CHECK(exact_rank({{0, 0}, {0, 0}}) == 0);
  CHECK(exact_rank({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}) == 3);
}

TEST_CASE("exact rank survives int64 overflow") {
  // Entries near 2^62 force the big-integer path during elimination.
  const std::int64_t big = std::int64_t{1} << 62;
  ExactRankAccumulator acc(3);
  const std::vector<std::int64_t> r1{big - 1, big - 3, 1};
  const std::vector<std::int64_t> r2{big - 5, big - 7, 3};
  const std::vector<std::int64_t> r3{2 * (big - 1) - (big - 5) - 1, 2 * (big - 3) - (big - 7), -1};
  CHECK(acc.insert(r1));
  CHECK(acc.insert(r2));
  // r3 = 2 r1 - r2 - (1,0,0) up to rounding: independent, rank 3.
  CHECK(acc.insert(r3));
  CHECK(acc.rank() == 3);
  CHECK(acc.full());
  CHECK(acc.used_big_integers());

  ExactRankAccumulator dep(3);
  dep.insert(r1);
  dep.insert(r2);
  std::vector<std::int64_t> combo{2 * (big - 1) - (big - 5), 2 * (big - 3) - (big - 7), -1};
  CHECK_FALSE(dep.insert(combo));
  CHECK(dep.rank() == 2);
}
