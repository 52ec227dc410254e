#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "chronosparse/array.hpp"

namespace csp::metrics {

enum class MetricKind { mae, mse, rmse, mape, smape, wape };

const char* kind_name(MetricKind kind) noexcept;
std::optional<MetricKind> parse_kind(std::string_view name) noexcept;

// MAPE/SMAPE exclude positions whose denominator falls below this instead of
// clamping; exclusion counts are reported alongside the finalized value.
inline constexpr double denom_epsilon = 1e-8;

// Mergeable sufficient statistics for one metric. Pure sums only, so merge
// is associative and commutative and a default-constructed state is the
// identity. Each kind reads the subset of fields it needs.
struct MetricState {
  MetricKind kind = MetricKind::mae;
  double sum_abs_err = 0.0;
  double sum_sq_err = 0.0;
  double sum_ratio = 0.0;      // sum of |p-t| / |t|          (mape)
  double sum_sym_ratio = 0.0;  // sum of 2|p-t| / (|p|+|t|)   (smape)
  double sum_abs_true = 0.0;
  std::int64_t count = 0;     // evaluable positions
  std::int64_t excluded = 0;  // dropped by the denominator rule
};

// One-shot dense computation over positions where mask=true. Kept
// independent of the streaming path so the two can cross-check each other.
//
//   MAE  = sum |p-t| / n            MSE   = sum (p-t)^2 / n
//   RMSE = sqrt(MSE)                WAPE  = sum |p-t| / sum |t|
//   MAPE = mean of |p-t|/|t|   over positions with |t| >= denom_epsilon
//   SMAPE = mean of 2|p-t|/(|p|+|t|) over positions with |p|+|t| >= denom_epsilon
//
// SMAPE is the fractional form (bounded by 2), not a percentage.
double masked_metric(MetricKind kind, const Array& pred, const Array& truth, const Mask& mask);

// Adds one batch's contribution; never materializes more than the batch.
void stream_update(MetricState& state, const Array& pred, const Array& truth, const Mask& mask);

MetricState stream_merge(const MetricState& a, const MetricState& b);

double stream_finalize(const MetricState& state);

}  // namespace csp::metrics
