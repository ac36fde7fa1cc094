#pragma once

#include <array>
#include <string_view>
#include <vector>

namespace binbell {

/// Outcome subsets R1, R2 (Alice) and S1, S2 (Bob) over {0, ..., d-1}.
///
/// An outcome k of a setting is binned to +1 when it lies in that setting's
/// subset and to -1 otherwise. Subsets are stored sorted. Construction
/// rejects out-of-range elements, duplicates, and full subsets (size d),
/// since a constant +1 binning degenerates the inequality.
class BinningSpec {
 public:
  enum Subset : int { kR1 = 0, kR2 = 1, kS1 = 2, kS2 = 3 };

  BinningSpec(int d, std::vector<int> r1, std::vector<int> r2, std::vector<int> s1,
              std::vector<int> s2);

  int dim() const noexcept { return d_; }

  const std::vector<int>& subset(Subset which) const { return subsets_[which]; }
  /// R_a for setting a in {1, 2}.
  const std::vector<int>& alice(int setting) const;
  /// S_b for setting b in {1, 2}.
  const std::vector<int>& bob(int setting) const;

  /// zeta_{R_a}(k) in {-1, +1}.
  int zeta_alice(int setting, int k) const;
  /// zeta_{S_b}(l) in {-1, +1}.
  int zeta_bob(int setting, int l) const;

  int n1() const noexcept { return static_cast<int>(subsets_[kR1].size()); }
  int n2() const noexcept { return static_cast<int>(subsets_[kR2].size()); }
  int m1() const noexcept { return static_cast<int>(subsets_[kS1].size()); }
  int m2() const noexcept { return static_cast<int>(subsets_[kS2].size()); }

  bool has_empty_subset() const noexcept;

  /// Applies the outcome relabeling k -> perm[k] to every subset.
  BinningSpec relabeled(const std::vector<int>& perm) const;

  friend bool operator==(const BinningSpec&, const BinningSpec&) = default;

 private:
  int d_;
  std::array<std::vector<int>, 4> subsets_;
  std::array<std::vector<signed char>, 4> signs_;
};

std::string_view subset_name(BinningSpec::Subset which);

/// Binning presets: sharp alternating (T1), period-4 paired (T2) and
/// half-split (T3).
enum class Preset { kT1, kT2, kT3 };

/// Throws std::invalid_argument when the preset subset is full or d < 2
/// (T2 at d = 2 is the full set {0, 1}).
BinningSpec preset_binning(Preset preset, int d);

Preset parse_preset(std::string_view name);
std::string_view preset_name(Preset preset);

/// Smallest p dividing d such that every subset is invariant under
/// k -> (k + p) mod d. Shifting a measurement phase by p relabels outcomes
/// by p, so the Bell value is p-periodic in every phase.
int shift_period(const BinningSpec& spec);

}  // namespace binbell
