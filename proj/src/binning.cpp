#include "binbell/binning.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace binbell {
namespace {

void validate_subset(int d, BinningSpec::Subset which, std::vector<int>& subset) {
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const int k = subset[i];
    if (k < 0 || k >= d) {
      throw std::invalid_argument("subset " + std::string(subset_name(which)) + " element " +
                                  std::to_string(i) + " = " + std::to_string(k) +
                                  " lies outside {0.." + std::to_string(d - 1) + "}");
    }
  }
  std::sort(subset.begin(), subset.end());
  const auto dup = std::adjacent_find(subset.begin(), subset.end());
  if (dup != subset.end()) {
    throw std::invalid_argument("subset " + std::string(subset_name(which)) +
                                " contains duplicate outcome " + std::to_string(*dup));
  }
  if (static_cast<int>(subset.size()) >= d) {
    throw std::invalid_argument("subset " + std::string(subset_name(which)) +
                                " contains every outcome; sizes must be at most d-1 = " +
                                std::to_string(d - 1));
  }
}

}  // namespace

BinningSpec::BinningSpec(int d, std::vector<int> r1, std::vector<int> r2, std::vector<int> s1,
                         std::vector<int> s2)
    : d_(d), subsets_{std::move(r1), std::move(r2), std::move(s1), std::move(s2)} {
  if (d < 2) {
    throw std::invalid_argument("outcome dimension d must be at least 2, got " +
                                std::to_string(d));
  }
  for (int i = 0; i < 4; ++i) {
    validate_subset(d, static_cast<Subset>(i), subsets_[i]);
    signs_[i].assign(d, -1);
    for (int k : subsets_[i]) signs_[i][k] = 1;
  }
}

const std::vector<int>& BinningSpec::alice(int setting) const {
  if (setting != 1 && setting != 2) throw std::out_of_range("setting must be 1 or 2");
  return subsets_[setting == 1 ? kR1 : kR2];
}

const std::vector<int>& BinningSpec::bob(int setting) const {
  if (setting != 1 && setting != 2) throw std::out_of_range("setting must be 1 or 2");
  return subsets_[setting == 1 ? kS1 : kS2];
}

int BinningSpec::zeta_alice(int setting, int k) const {
  if (setting != 1 && setting != 2) throw std::out_of_range("setting must be 1 or 2");
  if (k < 0 || k >= d_) throw std::out_of_range("outcome out of range");
  return signs_[setting == 1 ? kR1 : kR2][k];
}

int BinningSpec::zeta_bob(int setting, int l) const {
  if (setting != 1 && setting != 2) throw std::out_of_range("setting must be 1 or 2");
  if (l < 0 || l >= d_) throw std::out_of_range("outcome out of range");
  return signs_[setting == 1 ? kS1 : kS2][l];
}

bool BinningSpec::has_empty_subset() const noexcept {
  return std::any_of(subsets_.begin(), subsets_.end(), [](const auto& s) { return s.empty(); });
}

BinningSpec BinningSpec::relabeled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != d_) {
    throw std::invalid_argument("relabeling must have d entries");
  }
  std::array<std::vector<int>, 4> mapped;
  for (int i = 0; i < 4; ++i) {
    for (int k : subsets_[i]) mapped[i].push_back(perm.at(k));
  }
  return BinningSpec(d_, mapped[0], mapped[1], mapped[2], mapped[3]);
}

std::string_view subset_name(BinningSpec::Subset which) {
  switch (which) {
    case BinningSpec::kR1: return "r1";
    case BinningSpec::kR2: return "r2";
    case BinningSpec::kS1: return "s1";
    case BinningSpec::kS2: return "s2";
  }
  return "?";
}

BinningSpec preset_binning(Preset preset, int d) {
  if (d < 2) throw std::invalid_argument("outcome dimension d must be at least 2");
  std::vector<int> subset;
  for (int k = 0; k < d; ++k) {
    bool in = false;
    switch (preset) {
      case Preset::kT1: in = k % 2 == 0; break;
      case Preset::kT2: in = k % 4 == 0 || k % 4 == 1; break;
      case Preset::kT3: in = k < d / 2; break;
    }
    if (in) subset.push_back(k);
  }
  return BinningSpec(d, subset, subset, subset, subset);
}

Preset parse_preset(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "t1") return Preset::kT1;
  if (lower == "t2") return Preset::kT2;
  if (lower == "t3") return Preset::kT3;
  throw std::invalid_argument("unknown binning preset '" + std::string(name) +
                              "' (expected t1, t2 or t3)");
}

std::string_view preset_name(Preset preset) {
  switch (preset) {
    case Preset::kT1: return "t1";
    case Preset::kT2: return "t2";
    case Preset::kT3: return "t3";
  }
  return "?";
}

int shift_period(const BinningSpec& spec) {
  const int d = spec.dim();
  for (int p = 1; p < d; ++p) {
    if (d % p != 0) continue;
    bool invariant = true;
    for (int which = 0; which < 4 && invariant; ++which) {
      const auto& subset = spec.subset(static_cast<BinningSpec::Subset>(which));
      std::vector<int> shifted;
      shifted.reserve(subset.size());
      for (int k : subset) shifted.push_back((k + p) % d);
      std::sort(shifted.begin(), shifted.end());
      invariant = shifted == subset;
    }
    if (invariant) return p;
  }
  return d;
}

}  // namespace binbell
