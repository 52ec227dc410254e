#include "chronosparse/metrics.hpp"

#include <cmath>
#include <sstream>

namespace csp::metrics {

const char* kind_name(MetricKind kind) noexcept {
  switch (kind) {
    case MetricKind::mae: return "mae";
    case MetricKind::mse: return "mse";
    case MetricKind::rmse: return "rmse";
    case MetricKind::mape: return "mape";
    case MetricKind::smape: return "smape";
    case MetricKind::wape: return "wape";
  }
  return "?";
}

std::optional<MetricKind> parse_kind(std::string_view name) noexcept {
  if (name == "mae") return MetricKind::mae;
  if (name == "mse") return MetricKind::mse;
  if (name == "rmse") return MetricKind::rmse;
  if (name == "mape") return MetricKind::mape;
  if (name == "smape") return MetricKind::smape;
  if (name == "wape") return MetricKind::wape;
  return std::nullopt;
}

namespace {

void check_shapes(const Array& pred, const Array& truth, const Mask& mask) {
  if (pred.shape() != truth.shape() || pred.shape() != mask.shape()) {
    throw Error(Errc::shape_mismatch, "pred, truth and mask must share one shape");
  }
}

[[noreturn]] void no_points(MetricKind kind) {
  std::ostringstream msg;
  msg << kind_name(kind) << " has no evaluable points";
  throw Error(Errc::no_evaluable_points, msg.str());
}

}  // namespace

double masked_metric(MetricKind kind, const Array& pred, const Array& truth, const Mask& mask) {
  check_shapes(pred, truth, mask);

  switch (kind) {
    case MetricKind::mae: {
      double sum = 0.0;
      std::size_t n = 0;
      for (std::size_t i = 0; i < pred.size(); ++i) {
        if (!mask[i]) continue;
        sum += std::abs(pred[i] - truth[i]);
        ++n;
      }
      if (n == 0) no_points(kind);
      return sum / static_cast<double>(n);
    }
    case MetricKind::mse:
    case MetricKind::rmse: {
      double sum = 0.0;
      std::size_t n = 0;
      for (std::size_t i = 0; i < pred.size(); ++i) {
        if (!mask[i]) continue;
        const double d = pred[i] - truth[i];
        sum += d * d;
        ++n;
      }
      if (n == 0) no_points(kind);
      const double mse = sum / static_cast<double>(n);
      return kind == MetricKind::mse ? mse : std::sqrt(mse);
    }
    case MetricKind::mape: {
      double sum = 0.0;
      std::size_t n = 0;
      for (std::size_t i = 0; i < pred.size(); ++i) {
        if (!mask[i] || std::abs(truth[i]) < denom_epsilon) continue;
        sum += std::abs(pred[i] - truth[i]) / std::abs(truth[i]);
        ++n;
      }
      if (n == 0) no_points(kind);
      return sum / static_cast<double>(n);
    }
    case MetricKind::smape: {
      double sum = 0.0;
      std::size_t n = 0;
      for (std::size_t i = 0; i < pred.size(); ++i) {
        if (!mask[i]) continue;
        const double denom = std::abs(pred[i]) + std::abs(truth[i]);
        if (denom < denom_epsilon) continue;
        sum += 2.0 * std::abs(pred[i] - truth[i]) / denom;
        ++n;
      }
      if (n == 0) no_points(kind);
      return sum / static_cast<double>(n);
    }
    case MetricKind::wape: {
      double err = 0.0, scale = 0.0;
      std::size_t n = 0;
      for (std::size_t i = 0; i < pred.size(); ++i) {
        if (!mask[i]) continue;
        err += std::abs(pred[i] - truth[i]);
        scale += std::abs(truth[i]);
        ++n;
      }
      if (n == 0 || scale < denom_epsilon) no_points(kind);
      return err / scale;
    }
  }
  throw Error(Errc::kind_mismatch, "unknown metric kind");
}

void stream_update(MetricState& state, const Array& pred, const Array& truth, const Mask& mask) {
  check_shapes(pred, truth, mask);

  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!mask[i]) continue;
    const double p = pred[i];
    const double t = truth[i];
    const double abs_err = std::abs(p - t);

    switch (state.kind) {
      case MetricKind::mae:
        state.sum_abs_err += abs_err;
        ++state.count;
        break;
      case MetricKind::mse:
      case MetricKind::rmse:
        state.sum_sq_err += (p - t) * (p - t);
        ++state.count;
        break;
      case MetricKind::mape:
        if (std::abs(t) < denom_epsilon) {
          ++state.excluded;
        } else {
          state.sum_ratio += abs_err / std::abs(t);
          ++state.count;
        }
        break;
      case MetricKind::smape: {
        const double denom = std::abs(p) + std::abs(t);
        if (denom < denom_epsilon) {
          ++state.excluded;
        } else {
          state.sum_sym_ratio += 2.0 * abs_err / denom;
          ++state.count;
        }
        break;
      }
      case MetricKind::wape:
        state.sum_abs_err += abs_err;
        state.sum_abs_true += std::abs(t);
        ++state.count;
        break;
    }
  }
}

MetricState stream_merge(const MetricState& a, const MetricState& b) {
  if (a.kind != b.kind) {
    throw Error(Errc::kind_mismatch, "cannot merge states of different metric kinds");
  }
  MetricState out = a;
  out.sum_abs_err += b.sum_abs_err;
  out.sum_sq_err += b.sum_sq_err;
  out.sum_ratio += b.sum_ratio;
  out.sum_sym_ratio += b.sum_sym_ratio;
  out.sum_abs_true += b.sum_abs_true;
  out.count += b.count;
  out.excluded += b.excluded;
  return out;
}

double stream_finalize(const MetricState& state) {
  if (state.count == 0) no_points(state.kind);
  const double n = static_cast<double>(state.count);
  switch (state.kind) {
    case MetricKind::mae: return state.sum_abs_err / n;
    case MetricKind::mse: return state.sum_sq_err / n;
    case MetricKind::rmse: return std::sqrt(state.sum_sq_err / n);
    case MetricKind::mape: return state.sum_ratio / n;
    case MetricKind::smape: return state.sum_sym_ratio / n;
    case MetricKind::wape:
      if (state.sum_abs_true < denom_epsilon) no_points(state.kind);
      return state.sum_abs_err / state.sum_abs_true;
  }
  throw Error(Errc::kind_mismatch, "unknown metric kind");
}

}  // namespace csp::metrics
