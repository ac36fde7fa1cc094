#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace binbell {

/// Incremental exact rank of integer vectors over the rationals.
///
/// Vectors are reduced against a reduced echelon basis by fraction-free row
/// operations (v <- p*v - v[c]*b) followed by division by the row gcd, so a
/// sparse vector only meets the rows whose pivots it touches.
/// Arithmetic runs in checked int64 and switches permanently to arbitrary
/// precision the first time an intermediate would overflow.
class ExactRankAccumulator {
 public:
  explicit ExactRankAccumulator(std::size_t dim);
  ~ExactRankAccumulator();
  ExactRankAccumulator(ExactRankAccumulator&&) noexcept;
  ExactRankAccumulator& operator=(ExactRankAccumulator&&) noexcept;

  /// Returns true when `v` is independent of the vectors inserted so far.
  bool insert(std::span<const std::int64_t> v);

  std::size_t rank() const noexcept;
  std::size_t dim() const noexcept;
  bool full() const noexcept { return rank() == dim(); }
  bool used_big_integers() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::size_t exact_rank(const std::vector<std::vector<std::int64_t>>& rows);

}  // namespace binbell
