#include "binbell/coefficients.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace binbell {

CoefficientTensor::CoefficientTensor(int d, std::vector<double> values)
    : d_(d), values_(std::move(values)) {
  if (d < 2) throw std::invalid_argument("coefficient tensor needs d >= 2");
  const auto expected = static_cast<std::size_t>(4) * d * d;
  if (values_.size() != expected) {
    throw std::invalid_argument("coefficient tensor for d=" + std::to_string(d) + " needs " +
                                std::to_string(expected) + " values, got " +
                                std::to_string(values_.size()));
  }
}

std::span<const double> CoefficientTensor::block(int a, int b) const {
  if (a < 1 || a > 2 || b < 1 || b > 2) throw std::out_of_range("settings must be 1 or 2");
  const auto size = static_cast<std::size_t>(d_) * d_;
  return std::span<const double>(values_).subspan(index(a, b, 0, 0), size);
}

CoefficientTensor CoefficientTensor::with_negated_block(int a, int b) const {
  if (a < 1 || a > 2 || b < 1 || b > 2) throw std::out_of_range("settings must be 1 or 2");
  auto values = values_;
  const auto begin = index(a, b, 0, 0);
  const auto size = static_cast<std::size_t>(d_) * d_;
  for (std::size_t i = begin; i < begin + size; ++i) values[i] = -values[i];
  return CoefficientTensor(d_, std::move(values));
}

bool CoefficientTensor::is_sign_valued() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 1.0 || v == -1.0; });
}

CoefficientTensor build_coefficients(const BinningSpec& spec) {
  const int d = spec.dim();
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(4) * d * d);
  for (int a = 1; a <= 2; ++a) {
    for (int b = 1; b <= 2; ++b) {
      const int sign = (a == 2 && b == 2) ? -1 : 1;
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          values.push_back(sign * spec.zeta_alice(a, k) * spec.zeta_bob(b, l));
        }
      }
    }
  }
  return CoefficientTensor(d, std::move(values));
}

}  // namespace binbell
