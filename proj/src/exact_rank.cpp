#include "binbell/exact_rank.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <stdexcept>

namespace binbell {
namespace {

using BigInt = boost::multiprecision::cpp_int;

struct Overflow {};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Overflow{};
  return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw Overflow{};
  return out;
}

BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }

std::int64_t abs_gcd(std::int64_t a, std::int64_t b) {
  // INT64_MIN has no positive counterpart.
  if (a == INT64_MIN || b == INT64_MIN) throw Overflow{};
  return std::gcd(a, b);
}
BigInt abs_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

template <typename Int>
struct Row {
  std::vector<Int> values;
  std::size_t pivot;
};

// Divides by the gcd of the entries and makes the leading entry positive.
template <typename Int>
void normalize(std::vector<Int>& v) {
  Int g = 0;
  for (const auto& x : v) {
    if (x != 0) g = abs_gcd(g, x);
  }
  if (g == 0) return;
  const auto lead = std::find_if(v.begin(), v.end(), [](const Int& x) { return x != 0; });
  if (*lead < 0) g = -g;
  if (g != 1) {
    for (auto& x : v) x /= g;
  }
}

// Reduced echelon form: every row is zero in every other row's pivot column.
// A new vector therefore only needs the rows whose pivots it touches, and
// those reductions never create entries in other pivot columns.
template <typename Int>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim), pivot_row_(dim, kNoRow) {}

  bool insert(std::vector<Int> v) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if (v[c] == 0 || pivot_row_[c] == kNoRow) continue;
      eliminate(v, rows_[pivot_row_[c]]);
    }
    const auto lead = std::find_if(v.begin(), v.end(), [](const Int& x) { return x != 0; });
    if (lead == v.end()) return false;
    const auto pivot = static_cast<std::size_t>(lead - v.begin());
    normalize(v);
    // Work on copies so an overflow leaves the basis untouched.
    std::vector<std::vector<Int>> updated(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].values[pivot] == 0) continue;
      updated[i] = rows_[i].values;
      Row<Int> incoming{v, pivot};
      eliminate(updated[i], incoming);
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!updated[i].empty()) rows_[i].values = std::move(updated[i]);
    }
    pivot_row_[pivot] = rows_.size();
    rows_.push_back({std::move(v), pivot});
    return true;
  }

  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<Row<Int>>& rows() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }

 private:
  static constexpr std::size_t kNoRow = static_cast<std::size_t>(-1);

  // v <- p*v - v[c]*row with p = row[c]; clears column c of v.
  void eliminate(std::vector<Int>& v, const Row<Int>& row) const {
    const Int factor = v[row.pivot];
    const Int piv = row.values[row.pivot];
    for (std::size_t j = 0; j < dim_; ++j) {
      if (row.values[j] == 0) {
        if (v[j] != 0 && piv != 1) v[j] = checked_mul(piv, v[j]);
      } else {
        v[j] = checked_sub(checked_mul(piv, v[j]), checked_mul(factor, row.values[j]));
      }
    }
    normalize(v);
  }

  std::size_t dim_;
  std::vector<Row<Int>> rows_;
  std::vector<std::size_t> pivot_row_;
};

}  // namespace

struct ExactRankAccumulator::Impl {
  explicit Impl(std::size_t dim) : small(dim), dim(dim) {}

  void promote() {
    big = std::make_unique<EchelonBasis<BigInt>>(dim);
    for (const auto& row : small.rows()) {
      std::vector<BigInt> values(row.values.begin(), row.values.end());
      big->insert(std::move(values));
    }
  }

  EchelonBasis<std::int64_t> small;
  std::unique_ptr<EchelonBasis<BigInt>> big;
  std::size_t dim;
};

ExactRankAccumulator::ExactRankAccumulator(std::size_t dim) : impl_(std::make_unique<Impl>(dim)) {}
ExactRankAccumulator::~ExactRankAccumulator() = default;
ExactRankAccumulator::ExactRankAccumulator(ExactRankAccumulator&&) noexcept = default;
ExactRankAccumulator& ExactRankAccumulator::operator=(ExactRankAccumulator&&) noexcept = default;

bool ExactRankAccumulator::insert(std::span<const std::int64_t> v) {
  if (v.size() != impl_->dim) {
    throw std::invalid_argument("vector length does not match accumulator dimension");
  }
  if (!impl_->big) {
    try {
      return impl_->small.insert(std::vector<std::int64_t>(v.begin(), v.end()));
    } catch (const Overflow&) {
      impl_->promote();
    }
  }
  return impl_->big->insert(std::vector<BigInt>(v.begin(), v.end()));
}

std::size_t ExactRankAccumulator::rank() const noexcept {
  return impl_->big ? impl_->big->rank() : impl_->small.rank();
}

std::size_t ExactRankAccumulator::dim() const noexcept { return impl_->dim; }

bool ExactRankAccumulator::used_big_integers() const noexcept { return impl_->big != nullptr; }

std::size_t exact_rank(const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) return 0;
  ExactRankAccumulator acc(rows.front().size());
  for (const auto& row : rows) {
    acc.insert(row);
    if (acc.full()) break;
  }
  return acc.rank();
}

}  // namespace binbell
