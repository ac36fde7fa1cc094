#include "binbell/lr_polytope.hpp"

#include <limits>
#include <string>

#include "binbell/exact_rank.hpp"

namespace binbell {
namespace {

void check_limit(int d, const EnumerationLimits& limits) {
  if (d > limits.max_d) throw EnumerationLimitError(d, limits.max_d);
}

void check_config(int d, const DeterministicConfig& c) {
  for (int v : {c.k1, c.k2, c.l1, c.l2}) {
    if (v < 0 || v >= d) {
      throw std::out_of_range("configuration outcome " + std::to_string(v) +
                              " outside {0.." + std::to_string(d - 1) + "}");
    }
  }
}

// Row-major lookup into the four blocks without per-call checks.
struct BlockView {
  explicit BlockView(const CoefficientTensor& t)
      : d(t.dim()),
        b11(t.block(1, 1).data()),
        b12(t.block(1, 2).data()),
        b21(t.block(2, 1).data()),
        b22(t.block(2, 2).data()) {}

  double value(int k1, int k2, int l1, int l2) const {
    return b11[k1 * d + l1] + b12[k1 * d + l2] + b21[k2 * d + l1] + b22[k2 * d + l2];
  }

  int d;
  const double* b11;
  const double* b12;
  const double* b21;
  const double* b22;
};

template <typename Visit>
void for_each_config(int d, Visit&& visit) {
  for (int k1 = 0; k1 < d; ++k1)
    for (int k2 = 0; k2 < d; ++k2)
      for (int l1 = 0; l1 < d; ++l1)
        for (int l2 = 0; l2 < d; ++l2) visit(k1, k2, l1, l2);
}

struct MaxSummary {
  double max = -std::numeric_limits<double>::infinity();
  std::int64_t count = 0;
};

MaxSummary summarize(const CoefficientTensor& coeffs) {
  const BlockView view(coeffs);
  MaxSummary out;
  for_each_config(coeffs.dim(), [&](int k1, int k2, int l1, int l2) {
    const double v = view.value(k1, k2, l1, l2);
    if (v > out.max) {
      out.max = v;
      out.count = 1;
    } else if (v == out.max) {
      ++out.count;
    }
  });
  return out;
}

}  // namespace

EnumerationLimitError::EnumerationLimitError(int d, int limit)
    : std::runtime_error("d=" + std::to_string(d) + " exceeds the enumeration limit " +
                         std::to_string(limit) + " (d^4 configurations); raise the limit explicitly"),
      d_(d),
      limit_(limit) {}

ExtremalVector::ExtremalVector(int d, const DeterministicConfig& c) : d_(d) {
  check_config(d, c);
  const int block = d * d;
  support_ = {0 * block + c.k1 * d + c.l1, 1 * block + c.k1 * d + c.l2,
              2 * block + c.k2 * d + c.l1, 3 * block + c.k2 * d + c.l2};
}

std::vector<std::int64_t> ExtremalVector::dense() const {
  std::vector<std::int64_t> out(static_cast<std::size_t>(dim()), 0);
  for (int i : support_) out[i] = 1;
  return out;
}

double deterministic_value(const CoefficientTensor& coeffs, const DeterministicConfig& c) {
  check_config(coeffs.dim(), c);
  return coeffs(1, 1, c.k1, c.l1) + coeffs(1, 2, c.k1, c.l2) + coeffs(2, 1, c.k2, c.l1) +
         coeffs(2, 2, c.k2, c.l2);
}

double lr_max(const CoefficientTensor& coeffs, const EnumerationLimits& limits) {
  check_limit(coeffs.dim(), limits);
  return summarize(coeffs).max;
}

std::int64_t count_max_configs(const CoefficientTensor& coeffs, const EnumerationLimits& limits) {
  check_limit(coeffs.dim(), limits);
  return summarize(coeffs).count;
}

std::int64_t m_formula(const BinningSpec& spec) {
  const std::int64_t d = spec.dim();
  const std::int64_t n1 = spec.n1(), n2 = spec.n2(), m1 = spec.m1(), m2 = spec.m2();
  return d * d * (d * d - d * (n1 + m1) + n1 * (m1 + m2) + n2 * (m1 - m2));
}

std::int64_t facet_threshold(int d) { return 4 * static_cast<std::int64_t>(d) * (d - 1); }

TightnessReport tightness_certificate(const BinningSpec& spec, const EnumerationLimits& limits) {
  const int d = spec.dim();
  check_limit(d, limits);
  const auto coeffs = build_coefficients(spec);
  const BlockView view(coeffs);
  const MaxSummary summary = summarize(coeffs);

  const auto dim = static_cast<std::size_t>(4 * d * d);
  ExactRankAccumulator linear(dim);
  ExactRankAccumulator affine(dim);
  std::vector<std::int64_t> pivot;
  std::vector<std::int64_t> scratch(dim, 0);

  for_each_config(d, [&](int k1, int k2, int l1, int l2) {
    if (linear.full() || view.value(k1, k2, l1, l2) != summary.max) return;
    const ExtremalVector g(d, {k1, k2, l1, l2});
    const auto dense = g.dense();
    linear.insert(dense);
    if (pivot.empty()) {
      pivot = dense;
      return;
    }
    for (std::size_t i = 0; i < dim; ++i) scratch[i] = dense[i] - pivot[i];
    affine.insert(scratch);
  });

  TightnessReport report;
  report.lr_max = summary.max;
  report.m_counted = summary.count;
  report.m_formula = m_formula(spec);
  report.threshold = facet_threshold(d);
  report.linear_rank = static_cast<std::int64_t>(linear.rank());
  report.affine_rank = pivot.empty() ? 0 : static_cast<std::int64_t>(affine.rank()) + 1;
  report.is_tight_by_count = report.m_counted >= report.threshold;
  return report;
}

}  // namespace binbell
